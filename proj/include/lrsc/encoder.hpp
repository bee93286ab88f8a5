#pragma once

#include <deque>
#include <span>
#include <vector>

#include "lrsc/code.hpp"

namespace lrsc {

struct CodedPacket {
  long t = 0;
  /// k message symbols followed by the parity symbols.
  std::vector<Elem> symbols;

  std::span<const Elem> message(int k) const { return {symbols.data(), static_cast<std::size_t>(k)}; }
  std::span<const Elem> parity(int k) const {
    return {symbols.data() + k, symbols.size() - static_cast<std::size_t>(k)};
  }
};

/// The most recent `depth + 1` message packets.  m(t) = 0 for t < 0.
class MessageHistory {
 public:
  MessageHistory(int k, int depth) : k_(k), depth_(depth) {}

  int k() const { return k_; }
  /// Time of the next packet to be pushed.
  long next_time() const { return next_; }
  void push(std::span<const Elem> m);

  /// Throws std::out_of_range for symbols not yet pushed or already evicted.
  Elem at(int s, long t) const;

  /// mhat(t) = [m_0(t), m_1(t+1), ..., m_{r-1}(t+r-1)]
  std::vector<Elem> diagonal_vector(int r, long t) const;
  /// mu_j(t)[s] = m_{jr+s}(t+s); for j = u only the first v entries are
  /// real and the rest are zero.
  std::vector<Elem> mu_vector(const CodeParams& p, int j, long t) const;

 private:
  int k_, depth_;
  long next_ = 0;
  std::deque<std::vector<Elem>> packets_;  // packets_.back() is time next_-1
};

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Systematic encoder evaluating the code's taps.
class Encoder {
 public:
  explicit Encoder(const Code& code) : code_(&code), history_(code.k(), code.tau()) {}

  CodedPacket push(std::span<const Elem> m);
  const MessageHistory& history() const { return history_; }

 private:
  const Code* code_;
  MessageHistory history_;
};

// Direct transcriptions of the parity formulas.  Each pushes m into the
// history and evaluates the formula for the new time; tests compare them
// against the tap encoder.

/// p_0(t) = sum_j mhat(t - r - j(r+1)) Gamma_j (exact and long regimes).
CodedPacket encode_exact(const Code& code, MessageHistory& history, std::span<const Elem> m);
/// The u + l parity formulas of the short regime.
CodedPacket encode_short(const Code& code, MessageHistory& history, std::span<const Elem> m);
/// Systematic RS codeword along each diagonal.
CodedPacket encode_mds_de(const Code& code, MessageHistory& history, std::span<const Elem> m);

}  // namespace lrsc
