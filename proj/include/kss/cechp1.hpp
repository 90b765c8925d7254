#pragma once

// The projective line with charts U_0 (coordinate z) and U_1 (w = 1/z).
// A sheaf is given by its transition G: chart-1 frame coefficients are
// f_1 = G f_0 on the overlap. Everything is written as Laurent data in z;
// chart-1 polynomials in w are the Laurent polynomials with exponents <= 0.
//
// Window model of Čech cochains with radius W:
//   C^0 = {f_0 polynomial : G f_0 has exponents in [-W, W]} ⊕ {f_1 : exponents in [-W, 0]}
//   C^1 = overlap vectors with exponents in [-W, W]
//   δ(f_0, f_1) = f_1 - G f_0.
// The window must reach the lowest exponents of G and of G^{-1}: the first
// keeps chart-0 sections in range, the second lets every overlap class be
// written with exponents in [-W, W]. Dimensions are confirmed at W + 1.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kss/complexes.hpp"
#include "kss/laurent.hpp"
#include "kss/specseq.hpp"

namespace kss {

class WindowTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GluingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IrrationalZeroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SheafOnP1 {
 public:
  /// Throws std::invalid_argument unless inverse * transition = I.
  SheafOnP1(LaurentMatrix transition, LaurentMatrix inverse, std::string name = "");
  /// O(d): G = z^{-d}.
  static SheafOnP1 line_bundle(int d);

  std::size_t rank() const { return g_.rows(); }
  const LaurentMatrix& transition() const { return g_; }
  const LaurentMatrix& inverse_transition() const { return ginv_; }
  const std::string& name() const { return name_; }

 private:
  LaurentMatrix g_;
  LaurentMatrix ginv_;
  std::string name_;
};

class CechModel {
 public:
  CechModel(const SheafOnP1& sheaf, int window);

  int window() const { return w_; }
  std::size_t rank() const { return rank_; }
  /// Degree bound for chart-0 polynomials.
  int chart0_degree() const { return b0_; }
  std::size_t c0_dim() const { return chart0_.dim() + rank_ * static_cast<std::size_t>(w_ + 1); }
  std::size_t c1_dim() const { return rank_ * static_cast<std::size_t>(2 * w_ + 1); }
  const Matrix& delta() const { return delta_; }
  CochainComplex complex() const;

  std::pair<LaurentVector, LaurentVector> c0_element(std::size_t i) const;
  LaurentVector c1_element(std::size_t i) const;
  /// Throw WindowTooSmall when the data leave the window.
  Vector c0_coordinates(const LaurentVector& f0, const LaurentVector& f1) const;
  Vector c1_coordinates(const LaurentVector& u) const;

 private:
  std::size_t rank_;
  int w_;
  int b0_;
  LaurentMatrix g_;
  Subspace chart0_;  // inside rank * (b0 + 1) raw coefficients
  Matrix delta_;
};

struct CechDims {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  bool operator==(const CechDims&) const = default;
};

/// Dims at window D, reproduced at D + 1 or WindowTooSmall.
CechDims cech_cohomology(const SheafOnP1& f, int window);

class AlgebroidOnP1 {
 public:
  /// Atiyah algebroid of O(d), frames (1, ∂) per chart: rank 2.
  static AlgebroidOnP1 atiyah(int d);
  /// Tangent sheaf, frame ∂ per chart: rank 1.
  static AlgebroidOnP1 tangent();

  bool twisted() const { return twisted_; }
  int degree() const { return d_; }
  std::size_t rank() const { return g01_.rows(); }
  /// Chart-1 frame coefficients = g01 * chart-0 coefficients.
  const LaurentMatrix& g01() const { return g01_; }
  /// Derived independently from the reverse chart change, written in z.
  const LaurentMatrix& g10() const { return g10_; }
  std::string name() const;

  bool cocycle_holds() const;
  /// σ g01 = g_Θ σ for the vector-field projection σ.
  bool symbol_intertwines() const;

 private:
  AlgebroidOnP1(bool twisted, int d, LaurentMatrix g01, LaurentMatrix g10);
  bool twisted_;
  int d_;
  LaurentMatrix g01_;
  LaurentMatrix g10_;
};

AlgebroidOnP1 atiyah_algebroid(int d);

/// First-order operator transport (a, b) -> (a - e s^{-1} b, -s^{-2} b) under
/// t = 1/s when section coefficients change by f_t = s^e f_s.
LaurentMatrix operator_transport(int e);

/// Λ^p D*: transition Λ^p(g10^T).
SheafOnP1 wedge_dual(const AlgebroidOnP1& a, int p);

class EquivariantSection {
 public:
  /// Vector part (c0 + c1 z + c2 z^2) ∂_z on chart 0. In the twisted case the
  /// chart-0 scalar part defaults to minus the positive part of the gluing
  /// defect; a supplied one must glue.
  static EquivariantSection lift(const AlgebroidOnP1& a, const Rational& c0, const Rational& c1, const Rational& c2,
                                 std::optional<Laurent> scalar0 = std::nullopt);

  /// Components in the chart frames, as Laurent polynomials in z.
  const LaurentVector& chart0() const { return v0_; }
  const LaurentVector& chart1() const { return v1_; }
  const Laurent& vector_part0() const { return v0_.back(); }
  bool is_zero() const;
  std::string describe() const;

 private:
  EquivariantSection(LaurentVector v0, LaurentVector v1) : v0_(std::move(v0)), v1_(std::move(v1)) {}
  LaurentVector v0_;
  LaurentVector v1_;
};

/// K^{p,q} = Č^q(Λ^{-p} D*), p in [-rank, 0], q in {0, 1}; horizontal i_V,
/// vertical δ with the sign of column p twisted by (-1)^p. Column k = -p uses
/// window D + 2 (rank - k).
DoubleComplex cech_koszul(const AlgebroidOnP1& a, const EquivariantSection& v, int window);

/// dim H^k of the total complex, stabilized at window D + 1.
std::map<int, std::size_t> equivariant_h(const AlgebroidOnP1& a, const EquivariantSection& v, int window);

struct ZeroPoint {
  bool at_infinity = false;
  Rational z = 0;
  int multiplicity = 0;  // as a zero of the vector part
  std::string describe() const;
};

struct ZeroLocus {
  bool whole_line = false;
  std::vector<ZeroPoint> points;
};

/// Points where the section vanishes (both parts in the twisted case).
ZeroLocus zero_locus(const AlgebroidOnP1& a, const EquivariantSection& v);
/// Every point of the zero locus is a simple zero of the vector part.
bool assumption_check(const AlgebroidOnP1& a, const EquivariantSection& v);

struct CorollaryReport {
  bool applicable = false;
  std::map<int, std::size_t> predicted;
  std::map<int, std::size_t> observed;
  bool matches = false;
};

CorollaryReport corollary_check(const AlgebroidOnP1& a, const EquivariantSection& v, int window);

struct FirstPage {
  DimGrid grid;     // from cech_cohomology of the wedge duals
  DimGrid specseq;  // page 1 of the column filtration
  bool consistent = false;
};

FirstPage first_page(const AlgebroidOnP1& a, int window);

struct DegenerationReport {
  int degeneration_page = 0;
  int stable_page = 0;
  bool e2_is_limit = false;
  std::map<int, std::size_t> e_inf_totals;
  std::map<int, std::size_t> h;
  std::map<Bidegree, std::size_t> i_d1_ranks;  // observed, no expectation
  bool ok() const;
};

/// Row filtration (i_V first, then Čech) through the spectral sequence engine.
DegenerationReport second_page_degeneration(const AlgebroidOnP1& a, const EquivariantSection& v, int window);

}  // namespace kss
