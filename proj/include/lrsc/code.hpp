#pragma once

// A packet-level code described by its parity taps:
//
//   p_i(t) = sum over taps (i, s, lag, c) of  c * m_s(t - lag)
//
// Both LRSC constructions and the diagonal-embedding baseline reduce to this
// form, so one encoder and one decoder serve all of them.

#include <optional>
#include <string>
#include <vector>

#include "lrsc/gf.hpp"
#include "lrsc/matrix.hpp"
#include "lrsc/params.hpp"

namespace lrsc {

using gf::Elem;
using gf::TowerField;
using gf::TowerPtr;

enum class CodeKind { lrsc, diagonal_mds };

struct Tap {
  int parity = 0;
  int symbol = 0;
  int lag = 0;
  Elem coeff;
  // Entry of Gamma (LRSC) or of the RS parity matrix (baseline) this tap
  // came from; used for symbolic rendering.
  int gamma_row = 0;
  int gamma_col = 0;
};

class Code {
 public:
  /// Diagonal-vector construction for the exact and long regimes, split
  /// diagonals for the short regime.
  static Code lrsc(const CodeParams& params);
  /// (a, tau) streaming code from diagonal embedding of a systematic
  /// [tau+1, tau+1-a] doubly extended Reed-Solomon code.  Default field is the
  /// smallest prime power >= tau.
  static Code diagonal_mds(int a, int tau, std::optional<std::uint32_t> q = std::nullopt);

  CodeKind kind() const { return kind_; }
  /// Short identifier, e.g. "lrsc_2_5_2" or "de_2_5".
  const std::string& name() const { return name_; }
  int a() const { return a_; }
  int tau() const { return tau_; }
  /// Locality deadline; tau for the baseline.
  int r() const { return r_; }
  int k() const { return k_; }
  int n() const { return n_; }
  int parities() const { return n_ - k_; }
  int max_lag() const { return max_lag_; }

  const TowerField& field() const { return *field_; }
  const TowerPtr& field_ptr() const { return field_; }
  /// Only meaningful for LRSC codes.
  const CodeParams& params() const { return params_; }
  /// Gamma for LRSC codes; for the baseline, gamma.c and gamma.gamma hold the
  /// k x a RS parity matrix.
  const linalg::Gamma& gamma() const { return gamma_; }
  const std::vector<Tap>& taps() const { return taps_; }

  /// Parity symbols at time t, reading message symbols through `m(s, t')`
  /// (callers return zero for t' < 0).
  template <class Lookup>
  std::vector<Elem> parities_at(long t, Lookup&& m) const {
    std::vector<Elem> out(static_cast<std::size_t>(parities()), TowerField::zero());
    for (const Tap& tap : taps_) {
      const long when = t - tap.lag;
      if (when < 0) continue;
      auto& slot = out[static_cast<std::size_t>(tap.parity)];
      slot = field_->add(slot, field_->mul(tap.coeff, m(tap.symbol, when)));
    }
    return out;
  }

 private:
  Code() = default;
  void finish();

  CodeKind kind_ = CodeKind::lrsc;
  std::string name_;
  int a_ = 0, tau_ = 0, r_ = 0, k_ = 0, n_ = 0, max_lag_ = 0;
  TowerPtr field_;
  CodeParams params_;
  linalg::Gamma gamma_;
  std::vector<Tap> taps_;
};

}  // namespace lrsc
