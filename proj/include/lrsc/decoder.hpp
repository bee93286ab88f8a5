#pragma once

// Sliding-window decoder.  Every erased message symbol becomes an unknown;
// every received parity becomes a linear equation in the unknowns once the
// contributions of known symbols are stripped.  The equations are kept in
// reduced row echelon form (pivot = smallest unknown id in the row, pivot
// columns zero elsewhere), so an unknown is resolved exactly when its row
// shrinks to a single term.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lrsc/code.hpp"
#include "lrsc/encoder.hpp"

namespace lrsc {

struct DecodeEvent {
  enum class Kind {
    recovered,       // all k symbols of m(time) known within the deadline
    lost,            // deadline time + deadline passed without full recovery
    late_recovered,  // previously reported lost, resolved afterwards
  };
  Kind kind;
  long time;
  int delay;  // push time - packet time
  std::vector<Elem> message;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Decoder {
 public:
  /// `deadline` defaults to the code's tau.
  explicit Decoder(const Code& code, std::optional<int> deadline = std::nullopt);

  /// Packets must arrive with t = 0, 1, 2, ...; a null packet marks an erasure.
  std::vector<DecodeEvent> push(long t, const CodedPacket* packet);
  std::vector<DecodeEvent> push_received(const CodedPacket& p) { return push(p.t, &p); }
  std::vector<DecodeEvent> push_erased(long t) { return push(t, nullptr); }

  int deadline() const { return deadline_; }
  /// Unknowns older than now - retention() are dropped.
  int retention() const { return retention_; }
  std::size_t live_equations() const { return rows_.size(); }
  /// Symbol s of m(t) is known (false once t leaves the retention window).
  bool known(long t, int s) const;
  std::size_t live_unknowns() const;

 private:
  struct Term {
    std::uint64_t id;
    Elem c;
  };
  struct Row {
    std::vector<Term> terms;  // sorted by id
    Elem rhs;
  };
  enum class State : std::uint8_t { known, unknown, dropped };
  struct Slot {
    long t = -1;
    std::vector<Elem> value;
    std::vector<State> state;
    int missing = 0;
    bool reported_lost = false;
  };

  Slot& slot(long t) { return slots_[static_cast<std::size_t>(t % static_cast<long>(slots_.size()))]; }
  std::uint64_t id_of(long t, int s) const { return static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(k_) + static_cast<std::uint64_t>(s); }

  void insert(Row row);
  void resolve(std::uint64_t id, Elem value);
  void axpy(std::vector<Term>& dst, Elem factor, const std::vector<Term>& src) const;
  void drop_before(long horizon);

  const Code* code_;
  const TowerField* f_;
  int k_, deadline_, retention_;
  long next_ = 0;
  std::vector<Slot> slots_;
  std::vector<Row> rows_;
  std::vector<long> pending_;  // packets not yet fully known, ascending
};

}  // namespace lrsc
