#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lrsc {

enum class Regime { exact, long_window, short_window };

std::string to_string(Regime r);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational min(const Rational& x, const Rational& y);

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (a, tau, r) with everything derived from it.
struct CodeParams {
  int a = 0, tau = 0, r = 0;
  Regime regime = Regime::exact;
  int k = 0, n = 0;
  // Short regime only: tau + 1 - a = u r + v, l = a - u.  Zero otherwise.
  int u = 0, v = 0, l = 0;
  std::uint32_t q = 0;
  std::uint64_t Q = 0;  // q^(2^(a-2)); 0 when that exceeds 2^32

  int parities() const { return n - k; }
};

/// Validates 1 < a <= tau and 1 <= r < tau, classifies the regime and picks
/// q = smallest prime power >= r + a - 1 unless overridden.
CodeParams derive_params(int a, int tau, int r, std::optional<std::uint32_t> q = std::nullopt);

/// a = 2 with r = ceil((tau - 1) / 2): the smallest-field LRSC that is also a
/// (2, tau) streaming code.
CodeParams small_field_params(int tau, std::optional<std::uint32_t> q = std::nullopt);

Rational rate(const CodeParams& p);
/// min{(tau + 1 - a) / (tau + 1), r / (r + 1)}
Rational rate_bound(int a, int tau, int r);

}  // namespace lrsc
