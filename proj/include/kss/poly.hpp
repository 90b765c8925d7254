#pragma once

// Polynomials over Q in a weighted polynomial ring.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kss/exactla.hpp"

namespace kss {

using Exponent = std::vector<int>;

class WeightedPolyRing {
 public:
  WeightedPolyRing() = default;
  /// Every weight must be >= 1 so that each weight slice is finite.
  explicit WeightedPolyRing(std::vector<int> weights, std::vector<std::string> names = {});

  std::size_t variables() const { return weights_.size(); }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<std::string>& names() const { return names_; }
  int max_weight() const;

  int weight(const Exponent& e) const;
  /// Monomials of weight w, lexicographically descending (x0 before x1 ...).
  std::vector<Exponent> monomials(int w) const;
  Exponent one() const { return Exponent(weights_.size(), 0); }

  std::string format(const Exponent& e) const;

 private:
  std::vector<int> weights_;
  std::vector<std::string> names_;
};

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(std::size_t variables, const Rational& c);
  static Polynomial monomial(const Exponent& e, const Rational& c = 1);
  static Polynomial variable(std::size_t variables, std::size_t i);

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial& operator+=(const Polynomial& o);

  bool operator==(const Polynomial& o) const = default;

  /// The common weight of all terms; nullopt when mixed. Zero is homogeneous
  /// of every weight and reports nullopt too, callers treat it separately.
  std::optional<int> homogeneous_weight(const WeightedPolyRing& ring) const;
  bool is_homogeneous_of(const WeightedPolyRing& ring, int w) const;

  std::string format(const WeightedPolyRing& ring) const;

 private:
  std::map<Exponent, Rational> terms_;
};

}  // namespace kss
