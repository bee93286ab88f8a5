#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "lrsc/gf.hpp"

using namespace lrsc::gf;

namespace {

// Polynomials over GF(p), low degree first; used only to build oracles.
using Poly = std::vector<std::uint32_t>;

Poly reduce(Poly f, const Poly& g, std::uint32_t p) {
  while (f.size() >= g.size()) {
    const std::uint32_t lead = f.back();
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = (f[shift + i] + (p - lead) * g[i]) % p;
    f.pop_back();
  }
  return f;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      std::uint64_t v = c;
      for (std::size_t i = 0; i < d; ++i, v /= p) g[i] = static_cast<std::uint32_t>(v % p);
      g[d] = 1;
      Poly r = reduce(f, g, p);
      bool zero = true;
      for (auto x : r) zero = zero && x == 0;
      if (zero) return false;
    }
  }
  return true;
}

const std::vector<std::uint32_t> kSmallQ = {2, 3, 4, 5, 7, 8, 9};

}  // namespace

TEST(GfBasics, PrimePowers) {
  EXPECT_EQ(prime_power_base(9), 3u);
  EXPECT_EQ(prime_power_base(16), 2u);
  EXPECT_EQ(prime_power_base(6), 0u);
  EXPECT_EQ(prime_power_base(1), 0u);
  EXPECT_EQ(next_prime_power(5), 5u);
  EXPECT_EQ(next_prime_power(6), 7u);
  EXPECT_EQ(next_prime_power(0), 2u);
  EXPECT_THROW(TowerField::make(6, 2), std::invalid_argument);
  EXPECT_THROW(TowerField::make(3, 0), std::invalid_argument);
}

TEST(GfBasics, TowerShapes) {
  auto f = TowerField::make(3, 2);
  EXPECT_EQ(f->levels(), 1);
  EXPECT_EQ(f->order(), 3u);

  auto g = TowerField::make(4, 3);
  EXPECT_EQ(g->levels(), 2);
  EXPECT_EQ(g->order(), 16u);
  EXPECT_EQ(g->level_order(1), 4u);

  auto h = TowerField::make(3, 4);
  EXPECT_EQ(h->levels(), 3);
  EXPECT_EQ(h->level_order(1), 3u);
  EXPECT_EQ(h->level_order(2), 9u);
  EXPECT_EQ(h->level_order(3), 81u);
  EXPECT_EQ(h->digits(), 4u);
}

TEST(GfBasics, PrimeFieldArithmetic) {
  auto f = TowerField::make(3, 2);
  EXPECT_EQ(f->mul(Elem{2}, Elem{2}), Elem{1});
  EXPECT_EQ(f->add(Elem{2}, Elem{2}), Elem{1});
  EXPECT_EQ(f->neg(Elem{1}), Elem{2});
  EXPECT_EQ(f->inv(Elem{2}), Elem{2});
  EXPECT_THROW(f->inv(Elem{0}), DivisionByZero);
  EXPECT_EQ(f->from_int(-1), Elem{2});
  EXPECT_EQ(f->from_int(7), Elem{1});
}

TEST(GfBasics, InverseAxiomEverywhere) {
  for (auto q : kSmallQ)
    for (int a = 2; a <= 4; ++a) {
      auto f = TowerField::make(q, a);
      for (std::uint32_t x = 1; x < f->order(); ++x)
        ASSERT_EQ(f->mul(Elem{x}, f->inv(Elem{x})), f->one()) << "q=" << q << " a=" << a << " x=" << x;
    }
}

TEST(GfBasics, FieldAxiomsSampled) {
  std::mt19937_64 rng(7);
  for (auto q : {3u, 4u, 5u, 7u}) {
    auto f = TowerField::make(q, 4);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->order() - 1));
    for (int i = 0; i < 2000; ++i) {
      const Elem x{pick(rng)}, y{pick(rng)}, z{pick(rng)};
      ASSERT_EQ(f->mul(x, f->add(y, z)), f->add(f->mul(x, y), f->mul(x, z)));
      ASSERT_EQ(f->mul(f->mul(x, y), z), f->mul(x, f->mul(y, z)));
      ASSERT_EQ(f->add(x, f->neg(x)), f->zero());
      ASSERT_EQ(f->sub(f->add(x, y), y), x);
    }
  }
}

// Log/exp tables against the table-free recursive tower arithmetic.
TEST(GfDualRoute, TablesMatchReference) {
  for (auto q : kSmallQ)
    for (int a = 2; a <= 3; ++a) {
      auto f = TowerField::make(q, a);
      ASSERT_TRUE(f->has_tables());
      for (std::uint32_t x = 0; x < f->order(); ++x) {
        ASSERT_EQ(f->neg(Elem{x}), f->neg_reference(Elem{x}));
        for (std::uint32_t y = 0; y < f->order(); ++y) {
          ASSERT_EQ(f->add(Elem{x}, Elem{y}), f->add_reference(Elem{x}, Elem{y}));
          ASSERT_EQ(f->mul(Elem{x}, Elem{y}), f->mul_reference(Elem{x}, Elem{y}));
        }
      }
    }
  std::mt19937_64 rng(11);
  for (auto q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    auto f = TowerField::make(q, 4);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->order() - 1));
    for (int i = 0; i < 5000; ++i) {
      const Elem x{pick(rng)}, y{pick(rng)};
      ASSERT_EQ(f->add(x, y), f->add_reference(x, y));
      ASSERT_EQ(f->mul(x, y), f->mul_reference(x, y));
      ASSERT_EQ(f->pow(x, 1000 + i), f->pow_reference(x, 1000 + i));
    }
  }
}

// GF(16) over GF(4): GF(4) = {0, 1, w, w+1} with w^2 = w + 1, index d0 + 2*d1.
// The tower must pick X^2 + X + w, the first irreducible in (c1, c0) order,
// and every product must match long multiplication reduced by that quadratic.
TEST(GfOracle, Gf16MultiplicationTable) {
  const int gf4[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  auto f = TowerField::make(4, 3);
  const Quadratic& quad = f->level_polynomial(2);
  EXPECT_EQ(quad.c1, Elem{1});
  EXPECT_EQ(quad.c0, Elem{2});
  for (int x = 0; x < 4; ++x) EXPECT_NE(gf4[x][x] ^ x ^ 2, 0) << "root " << x;

  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) {
      const int x0 = x % 4, x1 = x / 4, y0 = y % 4, y1 = y / 4;
      const int lo = gf4[x0][y0];
      const int mid = gf4[x0][y1] ^ gf4[x1][y0];
      const int hi = gf4[x1][y1];
      // X^2 = X + w in characteristic 2.
      const int r0 = lo ^ gf4[hi][2];
      const int r1 = mid ^ hi;
      ASSERT_EQ(f->mul(Elem{static_cast<std::uint32_t>(x)}, Elem{static_cast<std::uint32_t>(y)}).v,
                static_cast<std::uint32_t>(r0 + 4 * r1))
          << x << "*" << y;
    }
  // Tower generator squared reduces by the quadratic: X^2 = X + w.
  const Elem alpha = f->alpha(2);
  EXPECT_EQ(f->mul(alpha, alpha), Elem{2 + 4});
}

// Every level of the tower is isomorphic to GF(p)[x]/(g) for an independently
// chosen irreducible g.  Map x -> a root of g in the tower and check that the
// induced map is a bijective ring homomorphism.
TEST(GfOracle, IsomorphicToSingleExtension) {
  struct Case {
    std::uint32_t q;
    int levels;
  };
  for (auto c : {Case{4, 2}, Case{3, 3}, Case{9, 2}, Case{2, 4}, Case{5, 2}, Case{4, 3}}) {
    auto f = TowerField::with_levels(c.q, c.levels);
    const std::uint32_t p = f->characteristic();
    const std::size_t n = f->digits();
    const std::uint64_t order = f->order();

    Poly g;
    for (std::uint64_t low = 0;; ++low) {
      g.assign(n + 1, 0);
      std::uint64_t v = low;
      for (std::size_t i = 0; i < n; ++i, v /= p) g[i] = static_cast<std::uint32_t>(v % p);
      g[n] = 1;
      if (irreducible(g, p)) break;
    }

    Elem root{0};
    bool found = false;
    for (std::uint32_t y = 0; y < order && !found; ++y) {
      Elem acc = f->zero();
      for (std::size_t i = n + 1; i-- > 0;) acc = f->add(f->mul(acc, Elem{y}), f->from_int(g[i]));
      if (acc == f->zero()) {
        root = Elem{y};
        found = true;
      }
    }
    ASSERT_TRUE(found) << "q=" << c.q << " levels=" << c.levels;

    std::vector<Elem> powers(n);
    powers[0] = f->one();
    for (std::size_t i = 1; i < n; ++i) powers[i] = f->mul(powers[i - 1], root);
    auto phi = [&](std::uint64_t idx) {
      Elem acc = f->zero();
      for (std::size_t i = 0; i < n; ++i, idx /= p) acc = f->add(acc, f->mul(f->from_int(idx % p), powers[i]));
      return acc;
    };
    auto single_mul = [&](std::uint64_t x, std::uint64_t y) {
      Poly a(n), b(n), prod(2 * n - 1, 0);
      for (std::size_t i = 0; i < n; ++i, x /= p, y /= p) {
        a[i] = x % p;
        b[i] = y % p;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
      Poly r = reduce(prod, g, p);
      std::uint64_t out = 0;
      for (std::size_t i = r.size(); i-- > 0;) out = out * p + r[i];
      return out;
    };

    std::vector<bool> seen(order, false);
    for (std::uint64_t x = 0; x < order; ++x) {
      const Elem img = phi(x);
      ASSERT_FALSE(seen[img.v]);
      seen[img.v] = true;
    }
    std::mt19937_64 rng(c.q * 100 + c.levels);
    std::uniform_int_distribution<std::uint64_t> pick(0, order - 1);
    for (int i = 0; i < 3000; ++i) {
      const auto x = pick(rng), y = pick(rng);
      ASSERT_EQ(phi(single_mul(x, y)), f->mul(phi(x), phi(y)));
      ASSERT_EQ(f->mul_reference(phi(x), phi(y)), f->mul(phi(x), phi(y)));
    }
  }
}

TEST(GfSubfield, AlphaValues) {
  auto f = TowerField::make(4, 3);
  EXPECT_EQ(f->alpha(0), f->one());
  EXPECT_EQ(f->alpha(1), f->one());
  EXPECT_FALSE(f->in_subfield(f->alpha(2), 1));
  EXPECT_TRUE(f->in_subfield(f->alpha(2), 2));
  EXPECT_THROW(f->alpha(3), std::out_of_range);
  EXPECT_THROW(f->in_subfield(Elem{0}, 0), std::out_of_range);

  auto h = TowerField::make(3, 4);
  const auto coeffs = h->coefficients(h->alpha(3));
  bool high = false;
  for (std::size_t i = 2; i < coeffs.size(); ++i) high = high || coeffs[i] != 0;
  EXPECT_TRUE(high);
  EXPECT_FALSE(h->in_subfield(h->alpha(3), 2));
  EXPECT_TRUE(h->in_subfield(h->one(), 1));
}

TEST(GfSubfield, SupportAgreesWithFrobeniusExhaustive) {
  for (auto q : kSmallQ)
    for (int a = 2; a <= 3; ++a) {
      auto f = TowerField::make(q, a);
      for (int j = 1; j <= f->levels(); ++j)
        for (std::uint32_t x = 0; x < f->order(); ++x)
          ASSERT_EQ(f->in_subfield(Elem{x}, j), f->frobenius_in_subfield(Elem{x}, j))
              << "q=" << q << " a=" << a << " j=" << j << " x=" << x;
    }
}

TEST(GfSubfield, SupportAgreesWithFrobeniusSampled) {
  std::mt19937_64 rng(5);
  for (auto q : {3u, 4u, 5u, 7u, 9u, 16u}) {
    auto f = TowerField::make(q, q >= 9 ? 4 : 5);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->order() - 1));
    for (int j = 1; j <= f->levels(); ++j) {
      std::uniform_int_distribution<std::uint32_t> sub(0, static_cast<std::uint32_t>(f->level_order(j) - 1));
      for (int i = 0; i < 300; ++i) {
        const Elem x{pick(rng)}, y{sub(rng)};
        ASSERT_EQ(f->in_subfield(x, j), f->frobenius_in_subfield(x, j));
        ASSERT_TRUE(f->frobenius_in_subfield(y, j));
      }
    }
  }
}

TEST(GfDeterminism, EqualInputsEqualTowers) {
  for (auto q : {3u, 4u, 8u, 9u}) {
    auto f = TowerField::make(q, 4), g = TowerField::make(q, 4);
    EXPECT_EQ(f->base().modulus(), g->base().modulus());
    for (int j = 2; j <= f->levels(); ++j) {
      EXPECT_EQ(f->level_polynomial(j).c0, g->level_polynomial(j).c0);
      EXPECT_EQ(f->level_polynomial(j).c1, g->level_polynomial(j).c1);
    }
    for (int j = 0; j <= f->levels(); ++j) EXPECT_EQ(f->alpha(j), g->alpha(j));
  }
}

TEST(GfText, FormatParseRoundTrip) {
  auto f = TowerField::make(3, 4);
  EXPECT_EQ(f->format(Elem{0}), "[0,0,0,0]");
  EXPECT_EQ(f->format(Elem{2 + 9}), "[2,0,1,0]");
  for (std::uint32_t x = 0; x < f->order(); ++x) ASSERT_EQ(f->parse(f->format(Elem{x})), Elem{x});
  EXPECT_EQ(f->parse(" [1, 0,0,0] "), Elem{1});
  EXPECT_THROW(f->parse("[1,0,0]"), std::invalid_argument);
  EXPECT_THROW(f->parse("[3,0,0,0]"), std::invalid_argument);
  EXPECT_THROW(f->parse("1,0,0,0"), std::invalid_argument);
  EXPECT_THROW(f->element(81), std::out_of_range);
}

TEST(GfElement, CrossTowerIsAnError) {
  auto f = TowerField::make(3, 2), g = TowerField::make(3, 2);
  Element x(f, Elem{1}), y(g, Elem{2}), z(f, Elem{2});
  EXPECT_THROW(x + y, std::invalid_argument);
  EXPECT_THROW(x * y, std::invalid_argument);
  EXPECT_EQ((x + z).raw(), Elem{0});
  EXPECT_EQ((z * z).raw(), Elem{1});
  EXPECT_EQ((x / z).raw(), Elem{2});
  EXPECT_EQ((-x).raw(), Elem{2});
  EXPECT_THROW(Element(f, Elem{0}).inverse(), DivisionByZero);
}
