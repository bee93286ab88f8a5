#pragma once

// Dense exact linear algebra over a TowerField, plus the structured matrices
// of the construction: the superregular C, the scaled Gamma = C * diag(alpha),
// the block parity matrix P and the parity-check matrix H = [P^T  -I].

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lrsc/gf.hpp"

namespace lrsc::linalg {

using gf::Elem;
using gf::TowerField;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static Matrix identity(std::size_t n);
  /// Rows of small integers mapped into the prime field.
  static Matrix from_ints(const TowerField& field, const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<Elem> column(std::size_t j) const;

  Matrix transpose() const;
  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Matrix columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Matrix multiply(const TowerField& f, const Matrix& a, const Matrix& b);
Matrix add(const TowerField& f, const Matrix& a, const Matrix& b);
std::vector<Elem> multiply(const TowerField& f, const Matrix& a, std::span<const Elem> x);

/// Row-major dump: one row per line, elements in the gf text format
/// separated by single spaces.
std::string format(const TowerField& f, const Matrix& m);

std::size_t rank(const TowerField& f, Matrix m);
Elem determinant(const TowerField& f, Matrix m);

struct SolveResult {
  enum class Status { unique, underdetermined, inconsistent };
  Status status = Status::inconsistent;
  std::size_t free_variables = 0;
  /// A particular solution (free variables set to zero); empty if inconsistent.
  std::vector<Elem> x;
  /// determined[i] is true iff x_i takes the same value in every solution.
  std::vector<bool> determined;
};

/// Gaussian elimination with first-nonzero pivoting.
SolveResult solve(const TowerField& f, const Matrix& m, std::span<const Elem> b);

/// True iff v lies in the span of the columns of `columns` (which may have
/// zero columns; the empty span is {0}).
bool in_span(const TowerField& f, std::span<const Elem> v, const Matrix& columns);

/// Every square submatrix is nonsingular.
bool all_minors_nonsingular(const TowerField& f, const Matrix& m);

// --- structured matrices -------------------------------------------------

/// r x a matrix over GF(q) (embedded in the tower) whose every square
/// submatrix is nonsingular.  Cauchy construction when q >= r + a, parity part
/// of a systematic doubly extended Reed-Solomon generator when q = r + a - 1.
/// Both are scaled so that row 0 and column 0 are all ones.
Matrix build_C(const TowerField& f, int r, int a);

struct Gamma {
  Matrix c;                 // r x a over GF(q)
  std::vector<Elem> alpha;  // diagonal of A
  Matrix gamma;             // C * A

  int r() const { return static_cast<int>(gamma.rows()); }
  int a() const { return static_cast<int>(gamma.cols()); }
  Elem operator()(int row, int col) const { return gamma(static_cast<std::size_t>(row), static_cast<std::size_t>(col)); }
};

Gamma build_gamma(const TowerField& f, const Matrix& c);

struct ParityStructure {
  Matrix p;  // ar x a
  Matrix h;  // a x a(r+1) = [P^T  -I_a]
};

ParityStructure build_H(const TowerField& f, const Gamma& g);

/// r x a matrix with columns 0 and 1 zero and column j >= 2 drawn uniformly
/// from the level-(j-1) subfield.  Deterministic in `seed`.
Matrix random_interference_matrix(const TowerField& f, int r, int a, std::uint64_t seed);

}  // namespace lrsc::linalg
