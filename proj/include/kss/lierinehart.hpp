#pragma once

// Weighted-homogeneous Lie-Rinehart algebras over Q[x_1..x_n]: a free module
// on generators e_1..e_m with an anchor into derivations and a bracket.
//
// Grading: variable x_j has weight w_j >= 1, generator e_i has an integer
// weight ω_i. The anchor coefficient a_ij of ∂_j in ρ(e_i) has weight
// ω_i + w_j and the bracket coefficient c^k_ij has weight ω_i + ω_j - ω_k.
// The dual generator ε_i has weight -ω_i, so the form f ε_I has weight
// wt(f) - Σ_{i∈I} ω_i and the algebroid differential preserves it.
// A section V = Σ v_i e_i of weight w_V has wt(v_i) = w_V - ω_i and i_V
// raises form weight by w_V.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kss/complexes.hpp"
#include "kss/poly.hpp"

namespace kss {

class InvalidStructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Generator {
  std::string name;
  int weight = 0;
};

class LieRinehartPresentation {
 public:
  using Anchor = std::vector<std::vector<Polynomial>>;                // [i][j] : coefficient of ∂_j in ρ(e_i)
  using Bracket = std::vector<std::vector<std::vector<Polynomial>>>;  // [i][j][k] : c^k_ij

  LieRinehartPresentation(WeightedPolyRing ring, std::vector<Generator> generators, Anchor anchor, Bracket bracket);

  /// Generators ∂_j of weight -w_j, identity anchor, zero bracket.
  static LieRinehartPresentation tangent(const WeightedPolyRing& ring);

  const WeightedPolyRing& ring() const { return ring_; }
  std::size_t rank() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  int generator_weight(std::size_t i) const { return generators_[i].weight; }
  const Polynomial& anchor(std::size_t i, std::size_t j) const { return anchor_[i][j]; }
  const Polynomial& bracket(std::size_t i, std::size_t j, std::size_t k) const { return bracket_[i][j][k]; }

  /// ρ(e_i)(f).
  Polynomial apply_anchor(std::size_t i, const Polynomial& f) const;

  /// Smallest form weight that any slice can have.
  int lowest_form_weight() const;

 private:
  WeightedPolyRing ring_;
  std::vector<Generator> generators_;
  Anchor anchor_;
  Bracket bracket_;
};

class SectionV {
 public:
  /// Throws InvalidStructureError unless every component is homogeneous with
  /// wt(v_i) = w_V - ω_i. An all-zero section takes `weight` (default 0).
  SectionV(const LieRinehartPresentation& l, std::vector<Polynomial> components, std::optional<int> weight = {});

  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& component(std::size_t i) const { return components_[i]; }
  int weight() const { return weight_; }
  bool is_zero() const;

 private:
  std::vector<Polynomial> components_;
  int weight_ = 0;
};

/// Weighted Euler field Σ w_j x_j ∂_j on the tangent algebroid (weight 0).
SectionV euler_field(const LieRinehartPresentation& tangent);

using Mask = std::uint32_t;

/// Subsets of {0..m-1} of size p, lexicographic in their sorted index lists.
std::vector<Mask> subsets_of_size(std::size_t m, std::size_t p);

/// Basis of the weight-w piece of Λ^p A*: pairs (subset, monomial).
class FormSlice {
 public:
  struct Element {
    Mask subset;
    Exponent monomial;
  };

  FormSlice(const LieRinehartPresentation& l, int p, int w);

  int degree() const { return p_; }
  int weight() const { return w_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Element>& basis() const { return basis_; }
  std::optional<std::size_t> index(Mask subset, const Exponent& monomial) const;

 private:
  int p_;
  int w_;
  std::vector<Element> basis_;
  std::map<std::pair<Mask, Exponent>, std::size_t> index_;
};

/// Alternating form with polynomial coefficients, keyed by subset.
using Form = std::map<Mask, Polynomial>;

Form basis_form(const FormSlice::Element& e);
/// Throws InvalidStructureError when a term falls outside the slice.
Vector form_coordinates(const Form& form, const FormSlice& slice);
void add_to_form(Form& form, Mask subset, const Polynomial& f);

Form exterior_derivative(const LieRinehartPresentation& l, const Form& omega, std::size_t degree);
Form contract(const SectionV& v, const Form& omega);
/// (Σ_j g_j ε_j) ∧ ω.
Form wedge_one_form(const std::vector<Polynomial>& one_form, const Form& omega);
/// d_A f as the coefficient list of ε_1..ε_m.
std::vector<Polynomial> differential_of_function(const LieRinehartPresentation& l, const Polynomial& f);

struct ValidationReport {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  bool ok() const { return failures.empty(); }
};

/// Exact check of antisymmetry, the anchor morphism property, Jacobi (with
/// Leibniz extension) on generator triples, and d^2 = 0 on every form slice
/// of weight <= w_max.
ValidationReport validate(const LieRinehartPresentation& l, int w_max);

/// d_A : FormSlice(p, w) -> FormSlice(p+1, w).
Matrix ce_d(const LieRinehartPresentation& l, int p, int w);
/// i_V : FormSlice(p, w) -> FormSlice(p-1, w + w_V).
Matrix contraction(const LieRinehartPresentation& l, const SectionV& v, int p, int w);
/// d i_V + i_V d : FormSlice(p, w) -> FormSlice(p, w + w_V).
Matrix lie_derivative(const LieRinehartPresentation& l, const SectionV& v, int p, int w);

/// (FormSlice(•, w), d_A) in degrees 0..m.
CochainComplex omega_slice_complex(const LieRinehartPresentation& l, int w);

}  // namespace kss
