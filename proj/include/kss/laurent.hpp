#pragma once

// Laurent polynomials in one variable over Q and small matrices of them.

#include <map>
#include <string>
#include <vector>

#include "kss/exactla.hpp"

namespace kss {

class Laurent {
 public:
  Laurent() = default;
  Laurent(const Rational& c) { add_term(0, c); }
  static Laurent monomial(int e, const Rational& c = 1);

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int e) const;
  /// Only meaningful when nonzero.
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }

  void add_term(int e, const Rational& c);

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent scaled(const Rational& c) const;
  Laurent& operator+=(const Laurent& o);
  bool operator==(const Laurent& o) const = default;

  /// f(z) -> f(1/z).
  Laurent inverted() const;
  /// Terms with exponent > 0 (or < 0).
  Laurent positive_part() const;
  Laurent negative_part() const;
  /// Value at z = r; throws std::domain_error on negative exponents when r = 0.
  Rational evaluate(const Rational& r) const;

  std::string format(const std::string& var = "z") const;

 private:
  std::map<int, Rational> terms_;
};

using LaurentVector = std::vector<Laurent>;

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(std::size_t rows, std::size_t cols);
  static LaurentMatrix identity(std::size_t n);
  static LaurentMatrix from_rows(const std::vector<LaurentVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Laurent& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Laurent& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  LaurentMatrix operator*(const LaurentMatrix& o) const;
  LaurentVector operator*(const LaurentVector& v) const;
  LaurentMatrix transpose() const;
  LaurentMatrix inverted_variable() const;
  bool operator==(const LaurentMatrix& o) const = default;

  /// Smallest and largest exponent over all entries (0 for an all-zero matrix).
  int min_exponent() const;
  int max_exponent() const;

  std::string format(const std::string& var = "z") const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Laurent> e_;
};

Laurent determinant(const LaurentMatrix& m);
/// Λ^p M on the basis of p-subsets in lexicographic order.
LaurentMatrix exterior_power(const LaurentMatrix& m, std::size_t p);

}  // namespace kss
