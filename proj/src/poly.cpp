#include "kss/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace kss {

WeightedPolyRing::WeightedPolyRing(std::vector<int> weights, std::vector<std::string> names)
    : weights_(std::move(weights)), names_(std::move(names)) {
  for (int w : weights_)
    if (w < 1) throw std::invalid_argument("variable weights must be >= 1");
  if (names_.empty()) {
    for (std::size_t i = 0; i < weights_.size(); ++i) names_.push_back("x" + std::to_string(i));
  }
  if (names_.size() != weights_.size()) throw std::invalid_argument("one name per variable");
}

int WeightedPolyRing::max_weight() const {
  return weights_.empty() ? 1 : *std::max_element(weights_.begin(), weights_.end());
}

int WeightedPolyRing::weight(const Exponent& e) const {
  int w = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) w += e[i] * weights_[i];
  return w;
}

std::vector<Exponent> WeightedPolyRing::monomials(int w) const {
  std::vector<Exponent> out;
  if (w < 0) return out;
  Exponent current(weights_.size(), 0);
  // Highest power of the earliest variable first.
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == weights_.size()) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    for (int k = remaining / weights_[i]; k >= 0; --k) {
      current[i] = k;
      self(self, i + 1, remaining - k * weights_[i]);
    }
    current[i] = 0;
  };
  rec(rec, 0, w);
  return out;
}

std::string WeightedPolyRing::format(const Exponent& e) const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names_[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

Polynomial Polynomial::constant(std::size_t variables, const Rational& c) {
  Polynomial p;
  p.add_term(Exponent(variables, 0), c);
  return p;
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t i) {
  Exponent e(variables, 0);
  e.at(i) = 1;
  return monomial(e);
}

Rational Polynomial::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  out += o;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  if (sgn(c) == 0) return out;
  for (const auto& [e, a] : terms_) out.terms_.emplace(e, a * c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

std::optional<int> Polynomial::homogeneous_weight(const WeightedPolyRing& ring) const {
  std::optional<int> w;
  for (const auto& [e, c] : terms_) {
    const int we = ring.weight(e);
    if (w && *w != we) return std::nullopt;
    w = we;
  }
  return w;
}

bool Polynomial::is_homogeneous_of(const WeightedPolyRing& ring, int w) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return ring.weight(kv.first) == w; });
}

std::string Polynomial::format(const WeightedPolyRing& ring) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "(" + it->second.get_str() + ")*" + ring.format(it->first);
  }
  return s;
}

}  // namespace kss
