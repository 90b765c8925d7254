#include "kss/laurent.hpp"

#include <algorithm>
#include <stdexcept>

#include "kss/lierinehart.hpp"

namespace kss {

Laurent Laurent::monomial(int e, const Rational& c) {
  Laurent l;
  l.add_term(e, c);
  return l;
}

Rational Laurent::coefficient(int e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Laurent::add_term(int e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent out = *this;
  out += o;
  return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }
Laurent Laurent::operator-() const { return scaled(Rational(-1)); }

Laurent Laurent::scaled(const Rational& c) const {
  Laurent out;
  if (sgn(c) == 0) return out;
  for (const auto& [e, a] : terms_) out.terms_.emplace(e, a * c);
  return out;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
  return out;
}

Laurent Laurent::inverted() const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

Laurent Laurent::positive_part() const {
  Laurent out;
  for (const auto& [e, c] : terms_)
    if (e > 0) out.terms_.emplace(e, c);
  return out;
}

Laurent Laurent::negative_part() const {
  Laurent out;
  for (const auto& [e, c] : terms_)
    if (e < 0) out.terms_.emplace(e, c);
  return out;
}

Rational Laurent::evaluate(const Rational& r) const {
  Rational out = 0;
  for (const auto& [e, c] : terms_) {
    if (e < 0 && sgn(r) == 0) throw std::domain_error("negative power evaluated at 0");
    Rational p = 1;
    const Rational base = e >= 0 ? r : Rational(1 / r);
    for (int i = 0; i < std::abs(e); ++i) p *= base;
    out += c * p;
  }
  return out;
}

std::string Laurent::format(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.get_str() + ")";
    if (e != 0) s += "*" + var + "^" + std::to_string(e);
  }
  return s;
}

LaurentMatrix::LaurentMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

LaurentMatrix LaurentMatrix::identity(std::size_t n) {
  LaurentMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Laurent(1);
  return m;
}

LaurentMatrix LaurentMatrix::from_rows(const std::vector<LaurentVector>& rows) {
  LaurentMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged Laurent matrix");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Laurent matrix shapes do not match");
  LaurentMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Laurent& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

LaurentVector LaurentMatrix::operator*(const LaurentVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("Laurent matrix and vector shapes do not match");
  LaurentVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

LaurentMatrix LaurentMatrix::inverted_variable() const {
  LaurentMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].inverted();
  return out;
}

int LaurentMatrix::min_exponent() const {
  bool any = false;
  int m = 0;
  for (const auto& l : e_) {
    if (l.is_zero()) continue;
    m = any ? std::min(m, l.min_exponent()) : l.min_exponent();
    any = true;
  }
  return m;
}

int LaurentMatrix::max_exponent() const {
  bool any = false;
  int m = 0;
  for (const auto& l : e_) {
    if (l.is_zero()) continue;
    m = any ? std::max(m, l.max_exponent()) : l.max_exponent();
    any = true;
  }
  return m;
}

std::string LaurentMatrix::format(const std::string& var) const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).format(var);
    s += "]";
  }
  return s + "]";
}

Laurent determinant(const LaurentMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Laurent(1);
  Laurent out;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    LaurentMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Laurent term = m(0, j) * determinant(minor);
    out += (j % 2 == 0) ? term : -term;
  }
  return out;
}

LaurentMatrix exterior_power(const LaurentMatrix& m, std::size_t p) {
  const auto rs = subsets_of_size(m.rows(), p);
  const auto cs = subsets_of_size(m.cols(), p);
  LaurentMatrix out(rs.size(), cs.size());
  auto members = [](Mask s) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; s != 0; ++i, s >>= 1)
      if (s & 1U) v.push_back(i);
    return v;
  };
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto ri = members(rs[i]);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const auto cj = members(cs[j]);
      LaurentMatrix sub(p, p);
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) sub(a, b) = m(ri[a], cj[b]);
      out(i, j) = determinant(sub);
    }
  }
  return out;
}

}  // namespace kss
