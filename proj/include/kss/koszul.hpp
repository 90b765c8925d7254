#pragma once

// The Lie-Koszul complex (Λ^{-p} A*, i_V), p in [-m, 0], on weight slices,
// the zero locus of V as a homogeneous ideal, formality and vanishing checks.
//
// The slice labelled w has K^p = FormSlice(-p, w + p w_V), so i_V maps
// K^p to K^{p+1} and K^0 is the weight-w piece of R.

#include <optional>
#include <string>
#include <vector>

#include "kss/complexes.hpp"
#include "kss/lierinehart.hpp"

namespace kss {

struct LieKoszulSlice {
  int weight = 0;
  /// Degrees -m .. 0.
  CochainComplex complex;
  /// slices[p + m] is the basis of K^p.
  std::vector<FormSlice> slices;
};

LieKoszulSlice lie_koszul(const LieRinehartPresentation& l, const SectionV& v, int w);

// ------------------------------------------------------------- zero locus

/// I_Y generated by the components v_i.
class ZeroLocusModel {
 public:
  ZeroLocusModel(const LieRinehartPresentation& l, const SectionV& v);

  const std::vector<Polynomial>& generators() const { return generators_; }
  /// Rows span (I_Y)_w inside the monomial basis of R_w.
  Subspace ideal_slice(int w) const;
  std::size_t quotient_dim(int w) const;
  /// True when some generator is a nonzero constant.
  bool is_unit_ideal() const;

 private:
  WeightedPolyRing ring_;
  std::vector<Polynomial> generators_;
};

enum class ZeroDimVerdict { kZeroDimensional, kPositiveDimensional, kInconclusive };

class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// kZeroDimensional when (R/I_Y)_w vanishes on max-variable-weight consecutive
/// weights <= w_max, kPositiveDimensional when a coordinate axis lies in Y.
ZeroDimVerdict zero_dimensional_verdict(const LieRinehartPresentation& l, const SectionV& v, int w_max);
/// Throws InconclusiveError when neither certificate is found.
bool is_zero_dimensional(const LieRinehartPresentation& l, const SectionV& v, int w_max);

// -------------------------------------------------------------- formality

enum class FormalityTarget {
  /// Λ A* restricted to Y: forms modulo I_Y Λ A* + d_A(I_Y) ∧ Λ A*.
  kRestrictedToZeroLocus,
  /// Λ A* ⊗ R/I_Y.
  kReductionModIdeal,
};

struct FormalitySlice {
  int weight = 0;
  bool chain_map = false;
  bool quasi_isomorphism = false;
  std::vector<std::size_t> source_h;  // dim H^p, p = -m .. 0
  std::vector<std::size_t> target_h;
  std::optional<ChainMap> map;
};

struct FormalityReport {
  std::vector<FormalitySlice> slices;
  std::optional<std::string> first_failure;
  bool ok() const { return !first_failure; }
};

/// The quotient map j*: (K, i_V) -> (T, 0) on every slice in [w_lo, w_hi].
FormalityReport formality_check(const LieRinehartPresentation& l, const SectionV& v, int w_lo, int w_hi,
                                FormalityTarget target = FormalityTarget::kRestrictedToZeroLocus);

// -------------------------------------------------------------- vanishing

struct VanishingEntry {
  int degree = 0;
  int weight = 0;
  std::size_t dim = 0;
};

struct VanishingReport {
  int dim_y = 0;
  std::vector<VanishingEntry> dims;  // every (m, w) computed
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Asserts H^m of every slice vanishes for m > dim_y.
VanishingReport vanishing_check(const LieRinehartPresentation& l, const SectionV& v, int dim_y, int w_lo, int w_hi);

}  // namespace kss
