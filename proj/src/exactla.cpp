#include "kss/exactla.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace kss {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto valid_integer = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(start), part.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const { return kss::is_zero(entries_); }

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Rational& b = other(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out = zero_vector(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Rational& a = (*this)(i, j);
      if (sgn(a) != 0 && sgn(v[j]) != 0) out[i] += a * v[j];
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] += other.entries_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const { return *this + (-other); }

Matrix Matrix::operator-() const { return scaled(Rational(-1)); }

Matrix Matrix::scaled(const Rational& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

// ------------------------------------------------------------ elimination

Echelon reduced_row_echelon(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot_row = r;
    while (pivot_row < a.rows() && sgn(a(pivot_row, c)) == 0) ++pivot_row;
    if (pivot_row == a.rows()) continue;
    if (pivot_row != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pivot_row, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Rational factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return reduced_row_echelon(m).pivots.size(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = reduced_row_echelon(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

// -------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(unit_vector(ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  const Echelon e = reduced_row_echelon(Matrix::from_rows(vectors, ambient_dim));
  for (std::size_t i = 0; i < e.reduced.rows(); ++i) s.basis_.push_back(e.reduced.row(i));
  s.pivots_ = e.pivots;
  return s;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_rows(basis_, ambient_); }

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector outside the ambient space");
  Vector coords(basis_.size());
  Vector residual = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    coords[i] = v[pivots_[i]];
    if (sgn(coords[i]) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(basis_[i][j]) != 0) residual[j] -= coords[i] * basis_[i][j];
  }
  if (!kss::is_zero(residual)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vector& v) { return contains(v); });
}

Subspace kernel_basis(const Matrix& m) {
  const Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> vectors;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector x = unit_vector(m.cols(), f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = -e.reduced(r, f);
    vectors.push_back(std::move(x));
  }
  return Subspace::span(m.cols(), vectors);
}

Subspace image_basis(const Matrix& m) {
  std::vector<Vector> columns;
  for (std::size_t j = 0; j < m.cols(); ++j) columns.push_back(m.column(j));
  return Subspace::span(m.rows(), columns);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum of subspaces in different spaces");
  std::vector<Vector> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), all);
}

Matrix annihilator(const Subspace& w) {
  const Subspace k = kernel_basis(w.basis_matrix());
  return k.basis_matrix();
}

Subspace preimage(const Matrix& m, const Subspace& target, const Subspace& within) {
  if (m.rows() != target.ambient_dim() || m.cols() != within.ambient_dim())
    throw std::invalid_argument("preimage shape mismatch");
  if (within.dim() == 0) return Subspace(within.ambient_dim());
  const Matrix u = within.basis_matrix().transpose();  // columns span U
  const Subspace coeffs = kernel_basis(annihilator(target) * (m * u));
  std::vector<Vector> vectors;
  for (const auto& y : coeffs.basis()) vectors.push_back(u * y);
  return Subspace::span(within.ambient_dim(), vectors);
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersection of subspaces in different spaces");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim());
  return preimage(Matrix::identity(a.ambient_dim()), b, a);
}

Subspace image(const Matrix& m, const Subspace& source) {
  if (m.cols() != source.ambient_dim()) throw std::invalid_argument("image shape mismatch");
  std::vector<Vector> vectors;
  for (const auto& v : source.basis()) vectors.push_back(m * v);
  return Subspace::span(m.rows(), vectors);
}

// ----------------------------------------------------------- Subquotient

Subquotient::Subquotient(Subspace cycles, Subspace boundaries)
    : cycles_(std::move(cycles)), boundaries_(std::move(boundaries)) {
  if (cycles_.ambient_dim() != boundaries_.ambient_dim())
    throw std::invalid_argument("subquotient of subspaces in different spaces");
  if (!cycles_.contains(boundaries_))
    throw std::invalid_argument("subquotient boundaries are not contained in cycles");

  // Incremental elimination: each kept row is reduced against the earlier ones.
  std::vector<std::pair<std::size_t, Vector>> rows;
  auto reduce = [&](Vector v) {
    for (const auto& [pivot, row] : rows) {
      if (sgn(v[pivot]) == 0) continue;
      const Rational f = v[pivot];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(row[j]) != 0) v[j] -= f * row[j];
    }
    return v;
  };
  auto keep = [&](Vector v) {
    std::size_t pivot = 0;
    while (pivot < v.size() && sgn(v[pivot]) == 0) ++pivot;
    if (pivot == v.size()) return false;
    const Rational inv = 1 / v[pivot];
    for (auto& x : v) x *= inv;
    rows.emplace_back(pivot, std::move(v));
    return true;
  };
  for (const auto& b : boundaries_.basis()) keep(reduce(b));
  for (const auto& z : cycles_.basis()) {
    if (rows.size() == cycles_.dim()) break;
    if (keep(reduce(z))) representatives_.push_back(z);
  }

  std::vector<Vector> combined = boundaries_.basis();
  combined.insert(combined.end(), representatives_.begin(), representatives_.end());
  if (combined.empty()) return;
  const Matrix k = Matrix::from_rows(combined, ambient_dim());
  solve_columns_ = reduced_row_echelon(k).pivots;
  Matrix square(combined.size(), combined.size());
  for (std::size_t i = 0; i < combined.size(); ++i)
    for (std::size_t j = 0; j < solve_columns_.size(); ++j) square(j, i) = k(i, solve_columns_[j]);
  solve_inverse_ = *inverse(square);
}

std::optional<Vector> Subquotient::class_of(const Vector& v) const {
  if (!cycles_.contains(v)) return std::nullopt;
  if (dim() == 0) return Vector{};
  Vector restricted(solve_columns_.size());
  for (std::size_t j = 0; j < solve_columns_.size(); ++j) restricted[j] = v[solve_columns_[j]];
  const Vector coeffs = solve_inverse_ * restricted;
  return Vector(coeffs.begin() + static_cast<std::ptrdiff_t>(boundaries_.dim()), coeffs.end());
}

Matrix induced_map(const Matrix& f, const Subquotient& src, const Subquotient& dst) {
  if (f.cols() != src.ambient_dim() || f.rows() != dst.ambient_dim())
    throw std::invalid_argument("induced_map shape mismatch");
  for (const auto& b : src.boundaries().basis()) {
    if (!dst.boundaries().contains(f * b))
      throw NotCompatibleError("not filtration-compatible: a boundary maps outside the target boundaries");
  }
  Matrix out(dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    const auto cls = dst.class_of(f * src.representatives()[j]);
    if (!cls) throw NotCompatibleError("not filtration-compatible: a cycle maps outside the target cycles");
    for (std::size_t i = 0; i < dst.dim(); ++i) out(i, j) = (*cls)[i];
  }
  return out;
}

}  // namespace kss
