#include "kss/koszul.hpp"

#include <algorithm>
#include <map>

namespace kss {

namespace {

int subset_shift(const LieRinehartPresentation& l, Mask s) {
  int shift = 0;
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (s & (Mask{1} << i)) shift += l.generator_weight(i);
  return shift;
}

std::string deg(int k) { return std::to_string(k); }

// Span of I_Y Λ^k + (optionally) d_A(I_Y) ∧ Λ^{k-1} inside FormSlice(k, w).
Subspace ideal_forms(const LieRinehartPresentation& l, const std::vector<Polynomial>& gens, const FormSlice& slice,
                     bool with_differentials) {
  const int k = slice.degree();
  const int w = slice.weight();
  const auto& ring = l.ring();
  std::vector<Vector> vecs;
  for (const auto& g : gens) {
    const int wg = *g.homogeneous_weight(ring);
    for (Mask s : subsets_of_size(l.rank(), static_cast<std::size_t>(k)))
      for (const auto& m : ring.monomials(w + subset_shift(l, s) - wg))
        vecs.push_back(form_coordinates({{s, Polynomial::monomial(m) * g}}, slice));
    if (!with_differentials || k == 0) continue;
    const auto dg = differential_of_function(l, g);
    for (Mask s : subsets_of_size(l.rank(), static_cast<std::size_t>(k - 1)))
      for (const auto& m : ring.monomials(w + subset_shift(l, s) - wg))
        vecs.push_back(form_coordinates(wedge_one_form(dg, {{s, Polynomial::monomial(m)}}), slice));
  }
  return Subspace::span(slice.size(), vecs);
}

// Projection onto the non-pivot coordinates of n's echelon basis, a basis of Q^dim / n.
Matrix quotient_map(const Subspace& n) {
  const std::size_t dim = n.ambient_dim();
  std::vector<bool> is_pivot(dim, false);
  for (auto p : n.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < dim; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix q(free_cols.size(), dim);
  for (std::size_t j = 0; j < free_cols.size(); ++j) q(j, free_cols[j]) = 1;
  for (std::size_t r = 0; r < n.dim(); ++r)
    for (std::size_t j = 0; j < free_cols.size(); ++j) q(j, n.pivots()[r]) = -n.basis()[r][free_cols[j]];
  return q;
}

std::vector<std::size_t> cohomology_dims(const CochainComplex& c, int lo, int hi) {
  const Cohomology h = cohomology(c);
  std::vector<std::size_t> out;
  for (int k = lo; k <= hi; ++k) out.push_back(h.dim(k));
  return out;
}

}  // namespace

LieKoszulSlice lie_koszul(const LieRinehartPresentation& l, const SectionV& v, int w) {
  const int m = static_cast<int>(l.rank());
  const int wv = v.weight();
  LieKoszulSlice out;
  out.weight = w;
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int p = -m; p <= 0; ++p) {
    out.slices.emplace_back(l, -p, w + p * wv);
    dims.push_back(out.slices.back().size());
  }
  for (int p = -m; p < 0; ++p) diffs.push_back(contraction(l, v, -p, w + p * wv));
  out.complex = CochainComplex(-m, std::move(dims), std::move(diffs));
  return out;
}

// ------------------------------------------------------------- zero locus

ZeroLocusModel::ZeroLocusModel(const LieRinehartPresentation& l, const SectionV& v) : ring_(l.ring()) {
  for (const auto& c : v.components())
    if (!c.is_zero()) generators_.push_back(c);
}

Subspace ZeroLocusModel::ideal_slice(int w) const {
  const auto basis = ring_.monomials(w);
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  std::vector<Vector> vecs;
  for (const auto& g : generators_) {
    const int wg = *g.homogeneous_weight(ring_);
    for (const auto& m : ring_.monomials(w - wg)) {
      Vector vec = zero_vector(basis.size());
      const Polynomial prod = Polynomial::monomial(m) * g;
      for (const auto& [e, c] : prod.terms()) vec[index.at(e)] = c;
      vecs.push_back(std::move(vec));
    }
  }
  return Subspace::span(basis.size(), vecs);
}

std::size_t ZeroLocusModel::quotient_dim(int w) const { return ring_.monomials(w).size() - ideal_slice(w).dim(); }

bool ZeroLocusModel::is_unit_ideal() const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const Polynomial& g) { return g.homogeneous_weight(ring_) == 0; });
}

ZeroDimVerdict zero_dimensional_verdict(const LieRinehartPresentation& l, const SectionV& v, int w_max) {
  const ZeroLocusModel y(l, v);
  const int window = l.ring().max_weight();
  int run = 0;
  for (int w = 0; w <= w_max; ++w) {
    run = y.quotient_dim(w) == 0 ? run + 1 : 0;
    if (run >= window) return ZeroDimVerdict::kZeroDimensional;
  }
  const std::size_t n = l.ring().variables();
  for (std::size_t j = 0; j < n; ++j) {
    const bool axis_in_y = std::none_of(y.generators().begin(), y.generators().end(), [&](const Polynomial& g) {
      return std::any_of(g.terms().begin(), g.terms().end(), [&](const auto& kv) {
        for (std::size_t t = 0; t < n; ++t)
          if (t != j && kv.first[t] != 0) return false;
        return true;
      });
    });
    if (axis_in_y) return ZeroDimVerdict::kPositiveDimensional;
  }
  return ZeroDimVerdict::kInconclusive;
}

bool is_zero_dimensional(const LieRinehartPresentation& l, const SectionV& v, int w_max) {
  switch (zero_dimensional_verdict(l, v, w_max)) {
    case ZeroDimVerdict::kZeroDimensional:
      return true;
    case ZeroDimVerdict::kPositiveDimensional:
      return false;
    case ZeroDimVerdict::kInconclusive:
      break;
  }
  throw InconclusiveError("zero-dimensionality inconclusive up to weight " + deg(w_max));
}

// -------------------------------------------------------------- formality

FormalityReport formality_check(const LieRinehartPresentation& l, const SectionV& v, int w_lo, int w_hi,
                                FormalityTarget target) {
  const ZeroLocusModel y(l, v);
  const bool with_d = target == FormalityTarget::kRestrictedToZeroLocus;
  const int m = static_cast<int>(l.rank());
  FormalityReport report;
  for (int w = w_lo; w <= w_hi; ++w) {
    const LieKoszulSlice k = lie_koszul(l, v, w);
    FormalitySlice fs;
    fs.weight = w;
    std::vector<Matrix> maps;
    std::vector<std::size_t> tdims;
    for (const auto& slice : k.slices) {
      maps.push_back(quotient_map(ideal_forms(l, y.generators(), slice, with_d)));
      tdims.push_back(maps.back().rows());
    }
    std::vector<Matrix> zero_d;
    for (std::size_t i = 0; i + 1 < tdims.size(); ++i) zero_d.emplace_back(tdims[i + 1], tdims[i]);
    const CochainComplex t(-m, std::move(tdims), std::move(zero_d));
    fs.source_h = cohomology_dims(k.complex, -m, 0);
    fs.target_h = cohomology_dims(t, -m, 0);

    fs.chain_map = true;
    for (int p = -m; p < 0; ++p) {
      const auto i = static_cast<std::size_t>(p + m);
      if (!(maps[i + 1] * k.complex.differential(p)).is_zero()) {
        fs.chain_map = false;
        if (!report.first_failure)
          report.first_failure = "weight " + deg(w) + ": reduction after i_V is nonzero in degree " + deg(p + 1);
        break;
      }
    }
    if (fs.chain_map) {
      fs.map.emplace(k.complex, t, std::move(maps));
      fs.quasi_isomorphism = is_quasi_isomorphism(*fs.map);
      if (!fs.quasi_isomorphism && !report.first_failure) {
        std::string detail;
        for (int p = -m; p <= 0; ++p) {
          const auto i = static_cast<std::size_t>(p + m);
          if (fs.source_h[i] != fs.target_h[i])
            detail += " H^" + deg(p) + ": " + std::to_string(fs.source_h[i]) + " vs " + std::to_string(fs.target_h[i]);
        }
        if (detail.empty()) detail = " induced map not invertible";
        report.first_failure = "weight " + deg(w) + ": not a quasi-isomorphism;" + detail;
      }
    }
    report.slices.push_back(std::move(fs));
  }
  return report;
}

// -------------------------------------------------------------- vanishing

VanishingReport vanishing_check(const LieRinehartPresentation& l, const SectionV& v, int dim_y, int w_lo,
                                int w_hi) {
  VanishingReport report;
  report.dim_y = dim_y;
  const int m = static_cast<int>(l.rank());
  for (int w = w_lo; w <= w_hi; ++w) {
    const Cohomology h = cohomology(lie_koszul(l, v, w).complex);
    for (int p = -m; p <= 0; ++p) {
      report.dims.push_back({p, w, h.dim(p)});
      if (p > dim_y && h.dim(p) != 0)
        report.violations.push_back("H^" + deg(p) + " has dim " + std::to_string(h.dim(p)) + " at weight " + deg(w) +
                                    " (dim Y = " + deg(dim_y) + ")");
    }
  }
  return report;
}

}  // namespace kss
