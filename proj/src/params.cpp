#include "lrsc/params.hpp"

#include <numeric>

#include "lrsc/gf.hpp"

namespace lrsc {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::exact: return "exact";
    case Regime::long_window: return "long";
    case Regime::short_window: return "short";
  }
  return "?";
}

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

Rational min(const Rational& x, const Rational& y) {
  return static_cast<__int128>(x.num) * y.den <= static_cast<__int128>(y.num) * x.den ? x : y;
}

CodeParams derive_params(int a, int tau, int r, std::optional<std::uint32_t> q) {
  if (a <= 1) throw InvalidParams("a must exceed 1 (got a=" + std::to_string(a) + ")");
  if (a > tau) throw InvalidParams("a must not exceed tau (got a=" + std::to_string(a) + ", tau=" + std::to_string(tau) + ")");
  if (r < 1) throw InvalidParams("r must be at least 1 (got r=" + std::to_string(r) + ")");
  if (r >= tau) throw InvalidParams("r must be below tau (got r=" + std::to_string(r) + ", tau=" + std::to_string(tau) + ")");

  CodeParams p;
  p.a = a;
  p.tau = tau;
  p.r = r;
  const int span = a * (r + 1);
  if (tau + 1 == span) {
    p.regime = Regime::exact;
  } else if (tau + 1 > span) {
    p.regime = Regime::long_window;
  } else {
    p.regime = Regime::short_window;
  }
  if (p.regime == Regime::short_window) {
    p.k = tau + 1 - a;
    p.n = tau + 1;
    p.u = p.k / r;
    p.v = p.k % r;
    p.l = a - p.u;
  } else {
    p.k = r;
    p.n = r + 1;
  }

  const auto need = static_cast<std::uint32_t>(r + a - 1);
  if (q) {
    if (gf::prime_power_base(*q) == 0) throw InvalidParams("q=" + std::to_string(*q) + " is not a prime power");
    if (*q < need)
      throw InvalidParams("q=" + std::to_string(*q) + " is below r + a - 1 = " + std::to_string(need));
    p.q = *q;
  } else {
    p.q = gf::next_prime_power(need);
  }
  std::uint64_t Q = p.q;
  for (int j = 2; j <= a - 1 && Q != 0; ++j) Q = Q > (std::uint64_t{1} << 32) / Q ? 0 : Q * Q;
  p.Q = Q;
  return p;
}

CodeParams small_field_params(int tau, std::optional<std::uint32_t> q) {
  return derive_params(2, tau, tau / 2, q);
}

Rational rate(const CodeParams& p) { return Rational::of(p.k, p.n); }

Rational rate_bound(int a, int tau, int r) {
  return min(Rational::of(tau + 1 - a, tau + 1), Rational::of(r, r + 1));
}

}  // namespace lrsc
