#include "lrsc/matrix.hpp"

#include <numeric>
#include <random>

namespace lrsc::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("matrix: data size does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = TowerField::one();
  return m;
}

Matrix Matrix::from_ints(const TowerField& field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows.front().size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("matrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

std::vector<Elem> Matrix::column(std::size_t j) const {
  std::vector<Elem> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

Matrix Matrix::columns(std::span<const std::size_t> cols) const {
  std::vector<std::size_t> all(rows_);
  std::iota(all.begin(), all.end(), 0);
  return submatrix(all, cols);
}

Matrix multiply(const TowerField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == TowerField::zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  return out;
}

Matrix add(const TowerField& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shapes differ");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  return out;
}

std::vector<Elem> multiply(const TowerField& f, const Matrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("multiply: vector length differs from column count");
  std::vector<Elem> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = f.add(out[i], f.mul(a(i, j), x[j]));
  return out;
}

std::string format(const TowerField& f, const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += f.format(m(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

// In-place reduction to reduced row echelon form over the first `ncols`
// columns (extra columns ride along).  Returns pivot columns in row order.
std::vector<std::size_t> reduce(const TowerField& f, Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == TowerField::zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const Elem scale = f.inv(m(row, col));
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == TowerField::zero()) continue;
      const Elem factor = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const TowerField& f, Matrix m) { return reduce(f, m, m.cols()).size(); }

Elem determinant(const TowerField& f, Matrix m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant: matrix is not square");
  Elem det = TowerField::one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col) == TowerField::zero()) ++sel;
    if (sel == n) return TowerField::zero();
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(col, col));
    const Elem inv = f.inv(m(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == TowerField::zero()) continue;
      const Elem factor = f.mul(m(i, col), inv);
      for (std::size_t j = col; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(col, j)));
    }
  }
  return det;
}

SolveResult solve(const TowerField& f, const Matrix& m, std::span<const Elem> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length differs from row count");
  const std::size_t n = m.cols();
  Matrix aug(m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = reduce(f, aug, n);

  SolveResult res;
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (aug(i, n) != TowerField::zero()) return res;

  res.free_variables = n - pivots.size();
  res.status = res.free_variables == 0 ? SolveResult::Status::unique : SolveResult::Status::underdetermined;
  res.x.assign(n, TowerField::zero());
  res.determined.assign(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    res.x[pivots[i]] = aug(i, n);
    bool alone = true;
    for (std::size_t j = 0; j < n && alone; ++j)
      if (j != pivots[i] && aug(i, j) != TowerField::zero()) alone = false;
    res.determined[pivots[i]] = alone;
  }
  return res;
}

bool in_span(const TowerField& f, std::span<const Elem> v, const Matrix& columns) {
  if (columns.cols() > 0 && columns.rows() != v.size())
    throw DimensionMismatch("in_span: vector length differs from column height");
  if (columns.cols() == 0) {
    for (auto e : v)
      if (e != TowerField::zero()) return false;
    return true;
  }
  Matrix aug(v.size(), columns.cols() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < columns.cols(); ++j) aug(i, j) = columns(i, j);
    aug(i, columns.cols()) = v[i];
  }
  Matrix base = columns;
  return rank(f, std::move(base)) == rank(f, std::move(aug));
}

bool all_minors_nonsingular(const TowerField& f, const Matrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r > 20 || c > 20) throw std::invalid_argument("all_minors_nonsingular: matrix too large to enumerate");
  for (std::uint32_t rmask = 1; rmask < (1u << r); ++rmask) {
    const int k = __builtin_popcount(rmask);
    if (k > static_cast<int>(c)) continue;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r; ++i)
      if (rmask >> i & 1u) rows.push_back(i);
    for (std::uint32_t cmask = 1; cmask < (1u << c); ++cmask) {
      if (__builtin_popcount(cmask) != k) continue;
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < c; ++j)
        if (cmask >> j & 1u) cols.push_back(j);
      if (determinant(f, m.submatrix(rows, cols)) == TowerField::zero()) return false;
    }
  }
  return true;
}

namespace {

// Scale columns so row 0 is all ones, then rows so column 0 is all ones.
void normalize(const TowerField& f, Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Elem s = f.inv(m(0, j));
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = f.mul(m(i, j), s);
  }
  for (std::size_t i = 1; i < m.rows(); ++i) {
    const Elem s = f.inv(m(i, 0));
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.mul(m(i, j), s);
  }
}

}  // namespace

Matrix build_C(const TowerField& f, int r, int a) {
  if (r < 1 || a < 1) throw std::invalid_argument("build_C: r and a must be positive");
  const std::uint32_t q = f.base_order();
  if (static_cast<std::uint64_t>(q) + 1 < static_cast<std::uint64_t>(r) + a)
    throw std::invalid_argument("build_C: q = " + std::to_string(q) + " is below r + a - 1 = " +
                                std::to_string(r + a - 1));
  const auto ur = static_cast<std::size_t>(r), ua = static_cast<std::size_t>(a);
  Matrix c(ur, ua);
  auto point = [&](std::size_t i) { return Elem{static_cast<std::uint32_t>(i)}; };

  if (static_cast<std::uint64_t>(q) >= static_cast<std::uint64_t>(r) + a) {
    for (std::size_t i = 0; i < ur; ++i)
      for (std::size_t j = 0; j < ua; ++j) c(i, j) = f.inv(f.sub(point(i), point(ur + j)));
  } else {
    // Doubly extended RS [q+1, r]: information points 0..r-1, parity points
    // r..q-1 followed by the point at infinity.  Column c of the systematic
    // parity part holds the Lagrange basis L_s evaluated at that parity
    // point; at infinity it is the leading coefficient of L_s.
    for (std::size_t s = 0; s < ur; ++s) {
      Elem denom = TowerField::one();
      for (std::size_t t = 0; t < ur; ++t)
        if (t != s) denom = f.mul(denom, f.sub(point(s), point(t)));
      const Elem inv_denom = f.inv(denom);
      for (std::size_t j = 0; j + 1 < ua; ++j) {
        Elem num = TowerField::one();
        for (std::size_t t = 0; t < ur; ++t)
          if (t != s) num = f.mul(num, f.sub(point(ur + j), point(t)));
        c(s, j) = f.mul(num, inv_denom);
      }
      c(s, ua - 1) = inv_denom;
    }
  }
  normalize(f, c);
  if (!all_minors_nonsingular(f, c)) throw std::logic_error("build_C: constructed matrix is not superregular");
  return c;
}

Gamma build_gamma(const TowerField& f, const Matrix& c) {
  const int a = static_cast<int>(c.cols());
  if (a > 1 && f.levels() < a - 1)
    throw DimensionMismatch("build_gamma: tower has " + std::to_string(f.levels()) + " levels, need " +
                            std::to_string(a - 1));
  Gamma g{c, std::vector<Elem>(c.cols()), Matrix(c.rows(), c.cols())};
  for (int j = 0; j < a; ++j) g.alpha[static_cast<std::size_t>(j)] = f.alpha(j);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) g.gamma(i, j) = f.mul(c(i, j), g.alpha[j]);
  return g;
}

ParityStructure build_H(const TowerField& f, const Gamma& g) {
  const auto r = static_cast<std::size_t>(g.r()), a = static_cast<std::size_t>(g.a());
  ParityStructure ps{Matrix(a * r, a), Matrix(a, a * (r + 1))};
  // Block (i, b) of P^T, for b <= i, is Gamma_{i-b}^T.
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t b = 0; b <= i; ++b)
      for (std::size_t s = 0; s < r; ++s) {
        const Elem e = g.gamma(s, i - b);
        ps.p(b * r + s, i) = e;
        ps.h(i, b * r + s) = e;
      }
  for (std::size_t i = 0; i < a; ++i) ps.h(i, a * r + i) = f.neg(TowerField::one());
  return ps;
}

Matrix random_interference_matrix(const TowerField& f, int r, int a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix d(static_cast<std::size_t>(r), static_cast<std::size_t>(a));
  for (int j = 2; j < a; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, f.level_order(j - 1) - 1);
    for (int i = 0; i < r; ++i)
      d(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Elem{static_cast<std::uint32_t>(pick(rng))};
  }
  return d;
}

}  // namespace lrsc::linalg
