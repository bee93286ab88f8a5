#pragma once

// Brute-force recoverability checks.
//
// verify_scalar works on the [a(r+1), ar] block code with parity-check
// matrix H = [P^T  -I]: for every erasure set E of size a it checks that each
// erased message coordinate i satisfies h_i not in span{h_j : j in E, j > i}.
//
// verify_stream runs the real decoder over every erasure pattern in a
// window [t : t+d] that contains t, at a spread of anchor times and for
// several message seeds, and asserts m(t) is known by t+d.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lrsc/code.hpp"
#include "lrsc/matrix.hpp"

namespace lrsc {

/// Erased positions t + offsets[i] inside the window [t : t+w-1].
struct ErasurePattern {
  long t = 0;
  int w = 0;
  std::vector<int> offsets;  // strictly increasing

  std::vector<long> times() const;
  /// "{12,13}"
  std::string str() const;
  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
  friend auto operator<=>(const ErasurePattern&, const ErasurePattern&) = default;
};

struct VerificationFailure {
  ErasurePattern pattern;
  int symbol = 0;  // unrecoverable message symbol (coordinate for scalar checks); -1 if not attributable
  int deadline = 0;
  std::string detail;
};

struct VerificationReport {
  std::string name;
  std::uint64_t patterns = 0;
  /// One entry per unrecoverable symbol.
  std::vector<VerificationFailure> failures;
  /// Erasure count -> largest delay at which m(t) was recovered.
  std::map<int, int> max_delay;

  bool verified() const { return failures.empty(); }
  /// Associative: patterns add, failures concatenate, delays take the max.
  void merge(const VerificationReport& other);
  /// Sorts failures by pattern, then symbol.
  void normalize();
  /// "patterns=N failures=M max_delay[1]=2 max_delay[2]=5"
  std::string summary() const;
  /// One "FAIL ..." line per failure followed by the summary line.
  std::string serialize() const;
};

/// All E subset of [0 : w-1] with |E| <= h and 0 in E.
std::vector<std::vector<int>> anchored_patterns(int w, int h);
/// sum_{i < h} C(w - 1, i)
std::uint64_t anchored_pattern_count(int w, int h);
std::uint64_t binomial(int n, int k);

/// Span criterion over all C(a(r+1), a) erasure sets.
VerificationReport verify_scalar(const TowerField& f, const linalg::Gamma& g);

struct StreamCheck {
  int budget = 1;    // h: erasures per window, at most
  int deadline = 0;  // d: window is [t : t+d]
  /// 0 selects 3(max(tau, d) + 1).
  long horizon = 0;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  /// 0 selects thread_budget().
  int threads = 0;
};

/// Anchors: t = 0 and every t in the middle third of the horizon.
std::vector<long> stream_anchors(const Code& code, const StreamCheck& check);

VerificationReport verify_stream(const Code& code, const StreamCheck& check);
/// Single-threaded reference with the same output.
VerificationReport verify_stream_serial(const Code& code, const StreamCheck& check);

/// Independent dense check: assuming every packet outside `pattern` is
/// received (and everything before pattern.t is known), which symbols of
/// m(pattern.t) are determined by the parities received in
/// [pattern.t : pattern.t + deadline]?
std::vector<bool> window_recoverable(const Code& code, const ErasurePattern& pattern, int deadline);

}  // namespace lrsc
