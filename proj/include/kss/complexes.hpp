#pragma once

// Bounded cochain complexes, chain maps, double complexes and filtered
// complexes. Every type validates itself at construction.

#include <cstddef>
#include <vector>

#include "kss/exactla.hpp"

namespace kss {

class InvalidComplexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// C^a -> C^{a+1} -> ... -> C^b. Degrees outside [a, b] are zero.
class CochainComplex {
 public:
  CochainComplex() = default;
  /// differentials[i] is d from degree lowest+i to lowest+i+1,
  /// so there is one fewer differential than dims.
  CochainComplex(int lowest_degree, std::vector<std::size_t> dims, std::vector<Matrix> differentials);

  int lowest_degree() const { return lowest_; }
  int highest_degree() const { return lowest_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int k) const;
  /// Always well-shaped; a zero matrix outside the support.
  Matrix differential(int k) const;
  std::size_t total_dim() const;

 private:
  int lowest_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> d_;
};

struct Cohomology {
  int lowest_degree = 0;
  std::vector<Subquotient> groups;

  std::size_t dim(int k) const;
  int highest_degree() const { return lowest_degree + static_cast<int>(groups.size()) - 1; }
  const Subquotient& at(int k) const { return groups.at(static_cast<std::size_t>(k - lowest_degree)); }
};

/// H^k = ker d_k / im d_{k-1}.
Cohomology cohomology(const CochainComplex& c);

int euler_characteristic(const CochainComplex& c);
int euler_characteristic(const Cohomology& h);

class ChainMap {
 public:
  /// maps[k - source.lowest_degree()] : source^k -> target^k, for every source degree.
  ChainMap(CochainComplex source, CochainComplex target, std::vector<Matrix> maps);

  const CochainComplex& source() const { return source_; }
  const CochainComplex& target() const { return target_; }
  Matrix at(int k) const;

 private:
  CochainComplex source_;
  CochainComplex target_;
  std::vector<Matrix> maps_;
};

ChainMap identity_map(const CochainComplex& c);
/// g after f.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// Induced map on H^k.
Matrix induced_on_cohomology(const ChainMap& f, const Cohomology& src, const Cohomology& dst, int k);

bool is_quasi_isomorphism(const ChainMap& f);

/// K^{p,q} on [p0, p1] x [q0, q1]; d_h : (p,q) -> (p+1,q), d_v : (p,q) -> (p,q+1).
/// Stored anticommuting: d_h d_v + d_v d_h = 0.
class DoubleComplex {
 public:
  struct Range {
    int p0 = 0, p1 = 0, q0 = 0, q1 = 0;
  };
  /// dims[p - p0][q - q0]; horizontal/vertical indexed the same way, with
  /// maps leaving the rectangle ignored (forced to zero).
  DoubleComplex(Range range, std::vector<std::vector<std::size_t>> dims,
                std::vector<std::vector<Matrix>> horizontal, std::vector<std::vector<Matrix>> vertical);

  /// Same input but with commuting squares; the vertical map of column p is
  /// multiplied by (-1)^p.
  static DoubleComplex from_commuting(Range range, std::vector<std::vector<std::size_t>> dims,
                                      std::vector<std::vector<Matrix>> horizontal,
                                      std::vector<std::vector<Matrix>> vertical);

  const Range& range() const { return range_; }
  std::size_t dim(int p, int q) const;
  Matrix horizontal(int p, int q) const;
  Matrix vertical(int p, int q) const;

  /// Offset of cell (p,q) inside the total-degree summand T^{p+q} (ascending p).
  std::size_t offset(int p, int q) const;

 private:
  bool inside(int p, int q) const;
  Range range_;
  std::vector<std::vector<std::size_t>> dims_;
  std::vector<std::vector<Matrix>> h_;
  std::vector<std::vector<Matrix>> v_;
};

CochainComplex total(const DoubleComplex& d);
/// Swap the roles of p and q.
DoubleComplex transpose(const DoubleComplex& d);

/// A cochain complex with a decreasing, differential-stable filtration.
/// F_p = everything for p <= p_min and F_p = 0 for p > p_max.
class FilteredComplex {
 public:
  /// levels[n - lowest][p - p_min] = F_p C^n for p in [p_min, p_max].
  FilteredComplex(CochainComplex complex, int p_min, int p_max, std::vector<std::vector<Subspace>> levels);

  const CochainComplex& complex() const { return complex_; }
  int p_min() const { return p_min_; }
  int p_max() const { return p_max_; }
  int width() const { return p_max_ - p_min_; }
  Subspace level(int n, int p) const;

 private:
  CochainComplex complex_;
  int p_min_;
  int p_max_;
  std::vector<std::vector<Subspace>> levels_;
};

/// F_0 = C, F_1 = 0.
FilteredComplex trivial_filtration(const CochainComplex& c);

/// F_p T^n = sum over p' >= p of K^{p', n-p'}.
FilteredComplex column_filtration(const DoubleComplex& d);
/// F_p T^n = sum over q' >= p of K^{n-q', q'}.
FilteredComplex row_filtration(const DoubleComplex& d);

}  // namespace kss
