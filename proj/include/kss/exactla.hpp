#pragma once

// Exact rational linear algebra: matrices, canonical subspaces, subquotients
// and the maps they induce.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kss {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Canonical "num/den" form (the denominator is always written).
std::string to_string(const Rational& q);

/// Accepts "n" or "n/d" with optional sign; throws std::invalid_argument.
Rational parse_rational(const std::string& text);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  Matrix transpose() const;
  bool is_zero() const;

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  Matrix scaled(const Rational& s) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct Echelon {
  Matrix reduced;                    // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column per row, strictly increasing
};

/// Gauss-Jordan elimination, first nonzero entry of each column as pivot.
Echelon reduced_row_echelon(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// A linear subspace of Q^n stored by its reduced row-echelon basis, so two
/// equal subspaces always have identical bases.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0);

  static Subspace full(std::size_t ambient_dim);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Rows are the basis vectors.
  Matrix basis_matrix() const;

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  /// Coefficients of v in basis(), or nullopt when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;

  bool operator==(const Subspace& other) const = default;

 private:
  std::size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : Mv = 0}.
Subspace kernel_basis(const Matrix& m);
/// Column span of M.
Subspace image_basis(const Matrix& m);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
/// M(U) for U in the source space of M.
Subspace image(const Matrix& m, const Subspace& source);
/// {u in U : M u in W}.
Subspace preimage(const Matrix& m, const Subspace& target, const Subspace& within);

/// A matrix whose kernel is exactly W (rows span the annihilator of W).
Matrix annihilator(const Subspace& w);

class NotCompatibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// cycles / boundaries with a fixed complement basis of boundaries inside
/// cycles. The complement extends the echelon basis of the boundaries by
/// echelon basis vectors of the cycles, scanned in order.
class Subquotient {
 public:
  Subquotient(Subspace cycles, Subspace boundaries);

  std::size_t dim() const { return representatives_.size(); }
  std::size_t ambient_dim() const { return cycles_.ambient_dim(); }
  const Subspace& cycles() const { return cycles_; }
  const Subspace& boundaries() const { return boundaries_; }
  const std::vector<Vector>& representatives() const { return representatives_; }

  /// Class coordinates of v in the complement basis; nullopt when v is not a cycle.
  std::optional<Vector> class_of(const Vector& v) const;

 private:
  Subspace cycles_;
  Subspace boundaries_;
  std::vector<Vector> representatives_;
  // Coordinates with respect to [boundary basis..., representatives...]:
  // solved on the pivot columns of the combined basis.
  std::vector<std::size_t> solve_columns_;
  Matrix solve_inverse_;
};

/// Matrix of the map src -> dst induced by f on class representatives.
/// Throws NotCompatibleError unless f(cycles) lands in cycles and
/// f(boundaries) lands in boundaries.
Matrix induced_map(const Matrix& f, const Subquotient& src, const Subquotient& dst);

}  // namespace kss
