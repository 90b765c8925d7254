#pragma once

// Finite-dimensional Lie algebras over Q, Chevalley-Eilenberg cochains with
// coefficients in a module, and the Hochschild-Serre filtration of an ideal.

#include <string>
#include <vector>

#include "kss/complexes.hpp"
#include "kss/specseq.hpp"

namespace kss {

class InvalidLieAlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LieAlgebra {
 public:
  /// structure[i][j][k] = c^k_ij with [e_i, e_j] = Σ_k c^k_ij e_k.
  /// Antisymmetry and Jacobi are checked exactly.
  explicit LieAlgebra(std::vector<std::vector<Vector>> structure);

  static LieAlgebra abelian(std::size_t n);

  std::size_t dim() const { return c_.size(); }
  const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const { return c_[i][j][k]; }
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad(x).
  Matrix ad(const Vector& x) const;

 private:
  std::vector<std::vector<Vector>> c_;
};

class GModule {
 public:
  /// actions[i] = ρ(e_i); ρ([x,y]) = [ρ(x), ρ(y)] is checked.
  GModule(const LieAlgebra& g, std::size_t dim, std::vector<Matrix> actions);

  static GModule trivial(const LieAlgebra& g, std::size_t dim = 1);

  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& actions() const { return actions_; }
  Matrix action(const Vector& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix> actions_;
};

class LieIdeal {
 public:
  /// Throws InvalidLieAlgebraError unless [g, h] ⊆ h.
  LieIdeal(const LieAlgebra& g, Subspace h);
  const Subspace& space() const { return h_; }

 private:
  Subspace h_;
};

/// Λ^• g* ⊗ M in degrees 0..dim g. Basis of degree n: subsets of size n
/// (lexicographic) times the module basis, subset-major.
CochainComplex ce_complex(const LieAlgebra& g, const GModule& m);

/// g rewritten in a basis: basis[i] is the new i-th generator.
LieAlgebra change_basis(const LieAlgebra& g, const std::vector<Vector>& basis);
/// M over the rebased algebra.
GModule change_basis(const LieAlgebra& rebased, const GModule& m, const std::vector<Vector>& basis);

/// Echelon complement of h followed by the echelon basis of h.
std::vector<Vector> adapted_basis(const LieAlgebra& g, const LieIdeal& h);

/// CE complex in the adapted basis with F_p = cochains supported on subsets
/// meeting the complement in at least p elements, p in [0, dim g/h].
FilteredComplex hs_filtered(const LieAlgebra& g, const LieIdeal& h, const GModule& m);

/// dim H^p(g/h, H^q(h, M)).
DimGrid expected_e2(const LieAlgebra& g, const LieIdeal& h, const GModule& m);

struct HsReport {
  DimGrid e2;
  DimGrid expected;
  std::map<int, std::size_t> e_inf_totals;
  std::vector<std::size_t> betti;
  bool e2_matches = false;
  bool totals_match = false;
  bool ok() const { return e2_matches && totals_match; }
};

HsReport hs_report(const LieAlgebra& g, const LieIdeal& h, const GModule& m);
bool verify(const LieAlgebra& g, const LieIdeal& h, const GModule& m);

}  // namespace kss
