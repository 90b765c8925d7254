#pragma once

// Spectral sequence of a bounded filtered complex, page by page.
//
// Cohomological Serre indexing: E_r^{p,q} lives in total degree n = p + q
// and d_r : E_r^{p,q} -> E_r^{p+r, q-r+1}. With
//   Z_r^{p,n} = F_p C^n  ∩  d^{-1}(F_{p+r} C^{n+1})
// every page entry is the subquotient
//   E_r^{p,n} = Z_r^{p,n} / (Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1})
// and d_r is induced by d. Pages are recomputed from scratch for every r.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "kss/complexes.hpp"

namespace kss {

struct Bidegree {
  int p = 0;
  int q = 0;
  auto operator<=>(const Bidegree&) const = default;
};

using DimGrid = std::map<Bidegree, std::size_t>;

class SpectralSequencePage {
 public:
  SpectralSequencePage(int r, std::map<Bidegree, Subquotient> entries, std::map<Bidegree, Matrix> differentials);

  int page() const { return r_; }
  std::size_t dim(Bidegree b) const;
  const Subquotient* entry(Bidegree b) const;
  /// d_r leaving b (zero-size when the target is zero or outside the support).
  const Matrix* differential(Bidegree b) const;
  const std::map<Bidegree, Subquotient>& entries() const { return entries_; }
  const std::map<Bidegree, Matrix>& differentials() const { return d_; }

  bool differentials_vanish() const;
  /// Nonzero entries only.
  DimGrid dims() const;
  /// Sum of dims on each antidiagonal p + q = n.
  std::map<int, std::size_t> totals() const;

 private:
  int r_;
  std::map<Bidegree, Subquotient> entries_;
  std::map<Bidegree, Matrix> d_;
};

SpectralSequencePage compute_page(const FilteredComplex& f, int r);

struct SpectralSequenceRun {
  std::vector<SpectralSequencePage> pages;  // pages[r] = E_r
  int stable_page = 0;                      // first r with dims(E_r) = dims(E_inf)
  int degeneration_page = 0;                // smallest r0 with d_r = 0 for all r >= r0

  const SpectralSequencePage& limit() const { return pages.back(); }
};

/// Pages 0 .. width+1; past width + 1 every d_r leaves the support.
/// max_page truncates the run (the limit is then the last computed page).
SpectralSequenceRun run(const FilteredComplex& f, std::optional<int> max_page = std::nullopt);

/// Sum over p of dim E_inf^{p, n-p} equals dim H^n for every n.
bool check_convergence(const FilteredComplex& f);

/// Ranks of every d_r on a page, nonzero ones only.
std::map<Bidegree, std::size_t> differential_ranks(const SpectralSequencePage& page);

}  // namespace kss
