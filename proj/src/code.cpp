#include "lrsc/code.hpp"

#include <algorithm>

namespace lrsc {

namespace {

// Term mu_x(t - shift) * Gamma_col, where mu_x(t)[s'] = m_{x r + s'}(t + s')
// and only the first `width` entries of mu_x are real.
void add_mu_term(std::vector<Tap>& taps, const linalg::Gamma& g, int parity, int x, int width, int shift,
                 int col) {
  const int r = g.r();
  for (int s = 0; s < width; ++s)
    taps.push_back(Tap{parity, x * r + s, shift - s, g(s, col), s, col});
}

}  // namespace

Code Code::lrsc(const CodeParams& p) {
  Code c;
  c.kind_ = CodeKind::lrsc;
  c.params_ = p;
  c.a_ = p.a;
  c.tau_ = p.tau;
  c.r_ = p.r;
  c.k_ = p.k;
  c.n_ = p.n;
  c.name_ = "lrsc_" + std::to_string(p.a) + "_" + std::to_string(p.tau) + "_" + std::to_string(p.r);
  c.field_ = TowerField::make(p.q, p.a);
  c.gamma_ = linalg::build_gamma(*c.field_, linalg::build_C(*c.field_, p.r, p.a));

  const int a = p.a, r = p.r;
  if (p.regime != Regime::short_window) {
    // p_0(t) = sum_j mhat(t - r - j(r+1)) Gamma_j
    for (int j = 0; j < a; ++j) add_mu_term(c.taps_, c.gamma_, 0, 0, r, r + j * (r + 1), j);
  } else {
    const int u = p.u, v = p.v, l = p.l;
    auto width = [&](int x) { return x < u ? r : v; };
    for (int i = 0; i < u; ++i) {
      for (int j = 0; j <= i; ++j) add_mu_term(c.taps_, c.gamma_, i, i - j, width(i - j), r + j * (r + 1), j);
      for (int j = i; j < u; ++j)
        add_mu_term(c.taps_, c.gamma_, i, u + i - j, width(u + i - j), r + j * (r + 1) + v + l, a - u + j);
    }
    for (int i = 0; i < l; ++i)
      for (int j = 0; j <= u; ++j) add_mu_term(c.taps_, c.gamma_, u + i, u - j, width(u - j), v + i + j * (r + 1), j + i);
  }
  c.finish();
  return c;
}

Code Code::diagonal_mds(int a, int tau, std::optional<std::uint32_t> q) {
  if (a < 1 || a > tau) throw InvalidParams("baseline needs 1 <= a <= tau (got a=" + std::to_string(a) + ", tau=" + std::to_string(tau) + ")");
  const int k = tau + 1 - a;
  std::uint32_t field = q ? *q : gf::next_prime_power(static_cast<std::uint64_t>(tau));
  if (gf::prime_power_base(field) == 0) throw InvalidParams("q=" + std::to_string(field) + " is not a prime power");
  if (field < static_cast<std::uint32_t>(tau))
    throw InvalidParams("baseline [" + std::to_string(tau + 1) + "," + std::to_string(k) + "] RS code needs q >= " +
                        std::to_string(tau) + " (got q=" + std::to_string(field) + ")");

  Code c;
  c.kind_ = CodeKind::diagonal_mds;
  c.a_ = a;
  c.tau_ = tau;
  c.r_ = tau;
  c.k_ = k;
  c.n_ = tau + 1;
  c.name_ = "de_" + std::to_string(a) + "_" + std::to_string(tau);
  c.field_ = TowerField::make(field, 2);
  const linalg::Matrix g = linalg::build_C(*c.field_, k, a);
  c.gamma_ = linalg::Gamma{g, std::vector<Elem>(static_cast<std::size_t>(a), TowerField::one()), g};
  // Diagonal starting at time T carries m_s(T + s) and p_i(T + k + i), so
  // p_i(t) = sum_s G[s][i] m_s(t - k - i + s).
  for (int i = 0; i < a; ++i)
    for (int s = 0; s < k; ++s)
      c.taps_.push_back(Tap{i, s, k + i - s, g(static_cast<std::size_t>(s), static_cast<std::size_t>(i)), s, i});
  c.finish();
  return c;
}

void Code::finish() {
  std::erase_if(taps_, [](const Tap& t) { return t.coeff == TowerField::zero(); });
  max_lag_ = 0;
  for (const Tap& t : taps_) {
    if (t.lag < 1 || t.lag > tau_)
      throw std::logic_error(name_ + ": tap lag " + std::to_string(t.lag) + " outside [1, tau]");
    if (t.symbol < 0 || t.symbol >= k_ || t.parity < 0 || t.parity >= parities())
      throw std::logic_error(name_ + ": tap index out of range");
    max_lag_ = std::max(max_lag_, t.lag);
  }
}

}  // namespace lrsc
