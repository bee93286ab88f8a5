#pragma once

// Finite-field arithmetic over a tower of quadratic extensions
//
//   GF(q) = GF(p)[x]/(f)  ⊂  GF(q^2)  ⊂  GF(q^4)  ⊂ ... ⊂ GF(q^(2^(L-1)))
//
// Every element of the top field is stored as a single integer index.  The
// index is the little-endian base-p number whose digits are the GF(p)
// coordinates of the element in the flattened tower basis: level-j elements
// are pairs (x0, x1) over level j-1 meaning x0 + x1*X_j, packed as
// x0 + Q_{j-1} * x1.  With this packing the level-j subfield is exactly the
// set of indices below Q_j, and embedding a subfield element is the identity.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lrsc::gf {

/// Raw field element: an index into the top field of some tower.
struct Elem {
  std::uint32_t v = 0;
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("gf: inverse of zero") {}
};

/// Returns p if q = p^m for a prime p and m >= 1, otherwise 0.
std::uint32_t prime_power_base(std::uint64_t q);
bool is_prime(std::uint64_t n);
/// Smallest prime power that is >= n (and >= 2).
std::uint32_t next_prime_power(std::uint64_t n);

/// GF(q) with q = p^m, represented as GF(p)[x]/(f).  Only used as the bottom
/// level of a TowerField; code arithmetic goes through the tower.
class BaseField {
 public:
  explicit BaseField(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  /// Monic modulus, low degree first, length m+1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg(std::uint32_t x) const;
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;

 private:
  std::uint32_t q_, p_, m_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> mul_table_;  // q*q entries when q is small
};

/// Monic quadratic X^2 + c1 X + c0 over the level below.
struct Quadratic {
  Elem c0;
  Elem c1;
};

class TowerField;
using TowerPtr = std::shared_ptr<const TowerField>;

/// Immutable tower GF(q) ⊂ ... ⊂ GF(Q).  Safe to share across threads.
class TowerField {
 public:
  /// Tower for code parameter `a`: max(a-1, 1) levels, so Q = q^(2^(a-2))
  /// for a >= 2 and Q = q for a = 1.
  static TowerPtr make(std::uint32_t q, int a);
  /// Tower with an explicit level count (>= 1).
  static TowerPtr with_levels(std::uint32_t q, int levels);

  std::uint64_t order() const { return order_; }
  std::uint32_t characteristic() const { return base_.characteristic(); }
  std::uint32_t base_order() const { return base_.order(); }
  const BaseField& base() const { return base_; }
  int levels() const { return static_cast<int>(level_order_.size()) - 1; }
  /// Q_j for j in [1, levels()]; Q_0 is defined as q as well.
  std::uint64_t level_order(int j) const;
  /// Defining quadratic of level j, j in [2, levels()].
  const Quadratic& level_polynomial(int j) const;
  /// Number of GF(p) digits in the textual form.
  std::size_t digits() const { return digits_; }
  bool has_tables() const { return !exp_.empty(); }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }
  /// Image of an integer in the prime field.
  Elem from_int(std::int64_t k) const;
  /// Checked conversion from a raw index.
  Elem element(std::uint64_t index) const;
  bool contains(Elem x) const { return x.v < order_; }

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;

  // Table-free tower arithmetic.  The fast operations above are built from
  // these and tests compare the two.
  Elem add_reference(Elem x, Elem y) const;
  Elem neg_reference(Elem x) const;
  Elem mul_reference(Elem x, Elem y) const;
  Elem pow_reference(Elem x, std::uint64_t e) const;

  /// alpha_0 = alpha_1 = 1; alpha_j (j >= 2) is the adjoined root of the
  /// level-j quadratic, an element of F_{Q_j} \ F_{Q_{j-1}}.
  Elem alpha(int j) const;
  /// Support test: x lies in the level-j subfield.
  bool in_subfield(Elem x, int j) const;
  /// Frobenius test: x^(Q_j) == x.  Always agrees with in_subfield.
  bool frobenius_in_subfield(Elem x, int j) const;

  std::vector<std::uint32_t> coefficients(Elem x) const;
  Elem from_coefficients(const std::vector<std::uint32_t>& digits) const;
  /// "[d0,d1,...]" over GF(p) in tower-basis order.
  std::string format(Elem x) const;
  Elem parse(std::string_view text) const;

 private:
  TowerField(std::uint32_t q, int levels);
  Elem mul_level(int level, Elem x, Elem y) const;
  bool has_root(int level, const Quadratic& f) const;
  void build_tables();

  BaseField base_;
  std::vector<std::uint64_t> level_order_;  // index 0 unused-ish (= q)
  std::vector<Quadratic> quadratics_;       // index j for level j >= 2
  std::uint64_t order_ = 0;
  std::size_t digits_ = 0;
  std::uint32_t p_ = 0;

  std::vector<std::uint32_t> exp_;   // 2(Q-1) entries
  std::vector<std::uint32_t> log_;   // Q entries, log_[0] unused
  std::vector<std::uint32_t> zech_;  // log(1 + g^n), kNoLog when 1 + g^n == 0
  static constexpr std::uint32_t kNoLog = 0xffffffffu;
};

/// An element bound to its tower.  Arithmetic between elements of different
/// towers throws std::invalid_argument.
class Element {
 public:
  Element(TowerPtr field, Elem value);

  const TowerPtr& field() const { return field_; }
  Elem raw() const { return value_; }
  std::string str() const { return field_->format(value_); }

  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator*(const Element& x, const Element& y);
  friend Element operator/(const Element& x, const Element& y);
  Element operator-() const;
  Element inverse() const;
  Element pow(std::uint64_t e) const;
  friend bool operator==(const Element& x, const Element& y);

 private:
  static const TowerField& common(const Element& x, const Element& y);
  TowerPtr field_;
  Elem value_;
};

}  // namespace lrsc::gf
