#include "lrsc/gf.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace lrsc::gf {
namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic g.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint32_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(lead) * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

Poly digits_of(std::uint64_t index, std::uint32_t p, std::size_t count) {
  Poly d(count);
  for (std::size_t i = 0; i < count; ++i) {
    d[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return d;
}

std::uint64_t index_of(const Poly& d, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = digits_of(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr std::uint64_t kTableLimit = 1u << 22;
constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t prime_power_base(std::uint64_t q) {
  if (q < 2) return 0;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1 ? static_cast<std::uint32_t>(p) : 0;
}

std::uint32_t next_prime_power(std::uint64_t n) {
  std::uint64_t q = std::max<std::uint64_t>(n, 2);
  while (prime_power_base(q) == 0) ++q;
  return static_cast<std::uint32_t>(q);
}

// ---------------------------------------------------------------------------
// BaseField

BaseField::BaseField(std::uint32_t q) : q_(q), p_(prime_power_base(q)), m_(0) {
  if (p_ == 0) throw std::invalid_argument("gf: q = " + std::to_string(q) + " is not a prime power");
  for (std::uint64_t t = q; t > 1; t /= p_) ++m_;

  // Lexicographically smallest monic irreducible of degree m, where candidate
  // order is the integer value of the non-leading coefficient vector.
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m_; ++i) count *= p_;
  for (std::uint64_t low = 0; low < count; ++low) {
    Poly f = digits_of(low, p_, m_);
    f.push_back(1);
    if (poly_irreducible(f, p_)) {
      modulus_ = std::move(f);
      break;
    }
  }
  if (modulus_.empty()) throw std::logic_error("gf: no irreducible polynomial found");

  if (q_ <= 1024 && m_ > 1) {
    std::vector<std::uint32_t> table(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t x = 0; x < q_; ++x)
      for (std::uint32_t y = 0; y < q_; ++y) table[static_cast<std::size_t>(x) * q_ + y] = mul(x, y);
    mul_table_ = std::move(table);
  }
}

std::uint32_t BaseField::add(std::uint32_t x, std::uint32_t y) const {
  if (p_ == 2) return x ^ y;
  std::uint32_t out = 0, scale = 1;
  while (x != 0 || y != 0) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t BaseField::neg(std::uint32_t x) const {
  if (p_ == 2) return x;
  std::uint32_t out = 0, scale = 1;
  while (x != 0) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t BaseField::mul(std::uint32_t x, std::uint32_t y) const {
  if (m_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p_);
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(x) * q_ + y];
  const Poly a = digits_of(x, p_, m_), b = digits_of(y, p_, m_);
  Poly prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
  return static_cast<std::uint32_t>(index_of(poly_mod(prod, modulus_, p_), p_));
}

// ---------------------------------------------------------------------------
// TowerField

TowerPtr TowerField::make(std::uint32_t q, int a) {
  if (a < 1) throw std::invalid_argument("gf: tower needs a >= 1");
  return with_levels(q, std::max(a - 1, 1));
}

TowerPtr TowerField::with_levels(std::uint32_t q, int levels) {
  return TowerPtr(new TowerField(q, levels));
}

TowerField::TowerField(std::uint32_t q, int levels) : base_(q) {
  if (levels < 1) throw std::invalid_argument("gf: tower needs at least one level");
  p_ = base_.characteristic();
  level_order_.assign(static_cast<std::size_t>(levels) + 1, q);
  for (int j = 2; j <= levels; ++j) {
    const std::uint64_t prev = level_order_[j - 1];
    if (prev * prev > kMaxOrder)
      throw std::invalid_argument("gf: tower order exceeds 2^32 (q=" + std::to_string(q) +
                                  ", levels=" + std::to_string(levels) + ")");
    level_order_[j] = prev * prev;
  }
  order_ = level_order_.back();
  digits_ = static_cast<std::size_t>(base_.degree()) << (levels - 1);

  quadratics_.resize(static_cast<std::size_t>(levels) + 1);
  for (int j = 2; j <= levels; ++j) {
    const std::uint64_t below = level_order_[j - 1];
    bool found = false;
    for (std::uint64_t c1 = 0; c1 < below && !found; ++c1) {
      for (std::uint64_t c0 = 1; c0 < below && !found; ++c0) {
        const Quadratic f{Elem{static_cast<std::uint32_t>(c0)}, Elem{static_cast<std::uint32_t>(c1)}};
        if (!has_root(j - 1, f)) {
          quadratics_[j] = f;
          found = true;
        }
      }
    }
    if (!found) throw std::logic_error("gf: no irreducible quadratic at level " + std::to_string(j));
  }

  if (order_ <= kTableLimit) build_tables();
}

bool TowerField::has_root(int level, const Quadratic& f) const {
  const std::uint64_t n = level_order_[level];
  for (std::uint64_t x = 0; x < n; ++x) {
    const Elem e{static_cast<std::uint32_t>(x)};
    const Elem value = add_reference(add_reference(mul_level(level, e, e), mul_level(level, f.c1, e)), f.c0);
    if (value == zero()) return true;
  }
  return false;
}

void TowerField::build_tables() {
  const std::uint64_t n = order_ - 1;
  if (n == 0) return;
  const auto factors = prime_factors(n);
  std::uint64_t g = 0;
  for (std::uint64_t cand = 1; cand < order_ && g == 0; ++cand) {
    const Elem c{static_cast<std::uint32_t>(cand)};
    bool primitive = true;
    for (auto f : factors) {
      if (pow_reference(c, n / f) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive && (n > 1 || cand == 1)) g = cand;
  }
  if (g == 0) throw std::logic_error("gf: no primitive element");

  std::vector<std::uint32_t> exp(2 * n), log(order_, 0);
  Elem x = one();
  for (std::uint64_t i = 0; i < n; ++i) {
    exp[i] = x.v;
    log[x.v] = static_cast<std::uint32_t>(i);
    x = mul_reference(x, Elem{static_cast<std::uint32_t>(g)});
  }
  for (std::uint64_t i = n; i < 2 * n; ++i) exp[i] = exp[i - n];

  std::vector<std::uint32_t> zech;
  if (p_ != 2) {
    zech.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Elem s = add_reference(one(), Elem{exp[i]});
      zech[i] = s == zero() ? kNoLog : log[s.v];
    }
  }
  exp_ = std::move(exp);
  log_ = std::move(log);
  zech_ = std::move(zech);
}

std::uint64_t TowerField::level_order(int j) const {
  if (j < 0 || j > levels()) throw std::out_of_range("gf: level " + std::to_string(j) + " out of range");
  return level_order_[static_cast<std::size_t>(j)];
}

const Quadratic& TowerField::level_polynomial(int j) const {
  if (j < 2 || j > levels()) throw std::out_of_range("gf: no defining quadratic at level " + std::to_string(j));
  return quadratics_[static_cast<std::size_t>(j)];
}

Elem TowerField::from_int(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(p_);
  return Elem{static_cast<std::uint32_t>(((k % p) + p) % p)};
}

Elem TowerField::element(std::uint64_t index) const {
  if (index >= order_)
    throw std::out_of_range("gf: index " + std::to_string(index) + " outside field of order " +
                            std::to_string(order_));
  return Elem{static_cast<std::uint32_t>(index)};
}

Elem TowerField::add_reference(Elem x, Elem y) const {
  if (p_ == 2) return Elem{x.v ^ y.v};
  std::uint64_t a = x.v, b = y.v, out = 0, scale = 1;
  while (a != 0 || b != 0) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem TowerField::neg_reference(Elem x) const {
  if (p_ == 2) return x;
  std::uint64_t a = x.v, out = 0, scale = 1;
  while (a != 0) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem TowerField::mul_level(int level, Elem x, Elem y) const {
  if (level == 1) return Elem{base_.mul(x.v, y.v)};
  const std::uint64_t below = level_order_[static_cast<std::size_t>(level) - 1];
  const Elem x0{static_cast<std::uint32_t>(x.v % below)}, x1{static_cast<std::uint32_t>(x.v / below)};
  const Elem y0{static_cast<std::uint32_t>(y.v % below)}, y1{static_cast<std::uint32_t>(y.v / below)};
  const Quadratic& f = quadratics_[static_cast<std::size_t>(level)];
  // X^2 = -c1 X - c0
  const Elem lo = mul_level(level - 1, x0, y0);
  const Elem hi = mul_level(level - 1, x1, y1);
  const Elem cross = add_reference(mul_level(level - 1, x0, y1), mul_level(level - 1, x1, y0));
  const Elem r0 = add_reference(lo, neg_reference(mul_level(level - 1, f.c0, hi)));
  const Elem r1 = add_reference(cross, neg_reference(mul_level(level - 1, f.c1, hi)));
  return Elem{static_cast<std::uint32_t>(r0.v + below * r1.v)};
}

Elem TowerField::mul_reference(Elem x, Elem y) const { return mul_level(levels(), x, y); }

Elem TowerField::pow_reference(Elem x, std::uint64_t e) const {
  Elem result = one();
  while (e > 0) {
    if (e & 1u) result = mul_reference(result, x);
    x = mul_reference(x, x);
    e >>= 1;
  }
  return result;
}

Elem TowerField::add(Elem x, Elem y) const {
  if (p_ == 2) return Elem{x.v ^ y.v};
  if (zech_.empty()) return add_reference(x, y);
  if (x.v == 0) return y;
  if (y.v == 0) return x;
  const std::uint64_t n = order_ - 1;
  const std::uint32_t lx = log_[x.v], ly = log_[y.v];
  const std::uint32_t diff = ly >= lx ? ly - lx : static_cast<std::uint32_t>(ly + n - lx);
  const std::uint32_t z = zech_[diff];
  if (z == kNoLog) return zero();
  return Elem{exp_[static_cast<std::uint64_t>(lx) + z]};
}

Elem TowerField::neg(Elem x) const {
  if (p_ == 2 || x.v == 0) return x;
  if (!exp_.empty()) return Elem{exp_[log_[x.v] + (order_ - 1) / 2]};
  return neg_reference(x);
}

Elem TowerField::mul(Elem x, Elem y) const {
  if (exp_.empty()) return mul_reference(x, y);
  if (x.v == 0 || y.v == 0) return zero();
  return Elem{exp_[static_cast<std::uint64_t>(log_[x.v]) + log_[y.v]]};
}

Elem TowerField::inv(Elem x) const {
  if (x.v == 0) throw DivisionByZero();
  if (exp_.empty()) return pow_reference(x, order_ - 2);
  const std::uint32_t l = log_[x.v];
  return Elem{exp_[l == 0 ? 0 : (order_ - 1) - l]};
}

Elem TowerField::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return one();
  if (x.v == 0) return zero();
  if (exp_.empty()) return pow_reference(x, e);
  const std::uint64_t n = order_ - 1;
  const auto l = static_cast<unsigned __int128>(log_[x.v]) * (e % n) % n;
  return Elem{exp_[static_cast<std::uint64_t>(l)]};
}

Elem TowerField::alpha(int j) const {
  if (j < 0 || j > levels()) throw std::out_of_range("gf: alpha index " + std::to_string(j) + " out of range");
  if (j <= 1) return one();
  return Elem{static_cast<std::uint32_t>(level_order_[static_cast<std::size_t>(j) - 1])};
}

bool TowerField::in_subfield(Elem x, int j) const {
  if (j < 1 || j > levels()) throw std::out_of_range("gf: subfield level " + std::to_string(j) + " out of range");
  return x.v < level_order_[static_cast<std::size_t>(j)];
}

bool TowerField::frobenius_in_subfield(Elem x, int j) const {
  if (j < 1 || j > levels()) throw std::out_of_range("gf: subfield level " + std::to_string(j) + " out of range");
  return pow(x, level_order_[static_cast<std::size_t>(j)]) == x;
}

std::vector<std::uint32_t> TowerField::coefficients(Elem x) const { return digits_of(x.v, p_, digits_); }

Elem TowerField::from_coefficients(const std::vector<std::uint32_t>& digits) const {
  if (digits.size() != digits_)
    throw std::invalid_argument("gf: expected " + std::to_string(digits_) + " coefficients, got " +
                                std::to_string(digits.size()));
  for (auto d : digits)
    if (d >= p_) throw std::invalid_argument("gf: coefficient " + std::to_string(d) + " not below p");
  return Elem{static_cast<std::uint32_t>(index_of(digits, p_))};
}

std::string TowerField::format(Elem x) const {
  std::string out = "[";
  const auto d = coefficients(x);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(d[i]);
  }
  out += ']';
  return out;
}

Elem TowerField::parse(std::string_view text) const {
  auto strip = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("gf: malformed element '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<std::uint32_t> digits;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view tok = strip(text.substr(0, comma));
    std::uint32_t d = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
      throw std::invalid_argument("gf: bad coefficient '" + std::string(tok) + "'");
    digits.push_back(d);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_coefficients(digits);
}

// ---------------------------------------------------------------------------
// Element

Element::Element(TowerPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw std::invalid_argument("gf: element without a field");
  if (!field_->contains(value_)) throw std::out_of_range("gf: element index outside field");
}

const TowerField& Element::common(const Element& x, const Element& y) {
  if (x.field_ != y.field_) throw std::invalid_argument("gf: operands belong to different towers");
  return *x.field_;
}

Element operator+(const Element& x, const Element& y) {
  return Element(x.field_, Element::common(x, y).add(x.value_, y.value_));
}
Element operator-(const Element& x, const Element& y) {
  return Element(x.field_, Element::common(x, y).sub(x.value_, y.value_));
}
Element operator*(const Element& x, const Element& y) {
  return Element(x.field_, Element::common(x, y).mul(x.value_, y.value_));
}
Element operator/(const Element& x, const Element& y) {
  return Element(x.field_, Element::common(x, y).div(x.value_, y.value_));
}
Element Element::operator-() const { return Element(field_, field_->neg(value_)); }
Element Element::inverse() const { return Element(field_, field_->inv(value_)); }
Element Element::pow(std::uint64_t e) const { return Element(field_, field_->pow(value_, e)); }
bool operator==(const Element& x, const Element& y) { return Element::common(x, y), x.value_ == y.value_; }

}  // namespace lrsc::gf
