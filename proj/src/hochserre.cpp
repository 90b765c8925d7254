#include "kss/hochserre.hpp"

#include <algorithm>
#include <bit>

#include "kss/lierinehart.hpp"

namespace kss {

namespace {

// Value of the basis cochain dual to the sorted subset s on the argument
// list args: ±1 for a permutation of s, 0 otherwise.
int basis_sign(Mask s, const std::vector<std::size_t>& args) {
  Mask seen = 0;
  for (auto a : args) {
    const Mask bit = Mask{1} << a;
    if ((seen & bit) || !(s & bit)) return 0;
    seen |= bit;
  }
  if (seen != s) return 0;
  int sign = 1;
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j)
      if (args[i] > args[j]) sign = -sign;
  return sign;
}

std::vector<std::size_t> members(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1)
    if (m & 1U) out.push_back(i);
  return out;
}

// CE differential Λ^n g* ⊗ M -> Λ^{n+1} g* ⊗ M.
Matrix ce_d(const LieAlgebra& g, const GModule& m, std::size_t n) {
  const std::size_t dm = m.dim();
  const auto src = subsets_of_size(g.dim(), n);
  const auto dst = subsets_of_size(g.dim(), n + 1);
  Matrix d(dst.size() * dm, src.size() * dm);
  for (std::size_t t = 0; t < dst.size(); ++t) {
    const auto j = members(dst[t]);
    for (std::size_t si = 0; si < src.size(); ++si) {
      const Mask s = src[si];
      // Coefficient operator on M of (dω)(e_J) for ω = e^S ⊗ (·).
      Matrix op(dm, dm);
      for (std::size_t i = 0; i < j.size(); ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t u = 0; u < j.size(); ++u)
          if (u != i) rest.push_back(j[u]);
        const int sg = basis_sign(s, rest);
        if (sg == 0) continue;
        op = op + m.actions()[j[i]].scaled((i % 2 == 0 ? 1 : -1) * sg);
      }
      for (std::size_t a = 0; a < j.size(); ++a)
        for (std::size_t b = a + 1; b < j.size(); ++b) {
          std::vector<std::size_t> rest;
          for (std::size_t u = 0; u < j.size(); ++u)
            if (u != a && u != b) rest.push_back(j[u]);
          Rational coeff = 0;
          for (std::size_t l = 0; l < g.dim(); ++l) {
            const Rational& c = g.structure(j[a], j[b], l);
            if (sgn(c) == 0) continue;
            std::vector<std::size_t> args{l};
            args.insert(args.end(), rest.begin(), rest.end());
            coeff += c * basis_sign(s, args);
          }
          if ((a + b) % 2 != 0) coeff = -coeff;
          if (sgn(coeff) != 0) op = op + Matrix::identity(dm).scaled(coeff);
        }
      for (std::size_t r = 0; r < dm; ++r)
        for (std::size_t c = 0; c < dm; ++c) d(t * dm + r, si * dm + c) = op(r, c);
    }
  }
  return d;
}

// Action of g element `x` (given by ad restricted to h and ρ(x)) on C^q(h, M).
// adh(l, t) is the e_l coefficient of [x, f_t] in the basis f of h.
Matrix action_on_cochains(const Matrix& adh, const Matrix& rho, std::size_t dim_h, std::size_t q) {
  const std::size_t dm = rho.rows();
  const auto subsets = subsets_of_size(dim_h, q);
  Matrix out(subsets.size() * dm, subsets.size() * dm);
  for (std::size_t ti = 0; ti < subsets.size(); ++ti) {
    const auto args = members(subsets[ti]);
    for (std::size_t si = 0; si < subsets.size(); ++si) {
      Rational coeff = 0;
      for (std::size_t u = 0; u < args.size(); ++u)
        for (std::size_t l = 0; l < dim_h; ++l) {
          const Rational& c = adh(l, args[u]);
          if (sgn(c) == 0) continue;
          auto replaced = args;
          replaced[u] = l;
          coeff -= c * basis_sign(subsets[si], replaced);
        }
      for (std::size_t r = 0; r < dm; ++r)
        for (std::size_t c = 0; c < dm; ++c) {
          Rational v = (r == c) ? coeff : Rational(0);
          if (ti == si) v += rho(r, c);
          out(ti * dm + r, si * dm + c) = v;
        }
    }
  }
  return out;
}

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

// ------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(std::vector<std::vector<Vector>> structure) : c_(std::move(structure)) {
  const std::size_t n = c_.size();
  if (n > 16) throw InvalidLieAlgebraError("at most 16 basis vectors are supported");
  for (const auto& row : c_) {
    if (row.size() != n) throw InvalidLieAlgebraError("structure constants need n x n x n entries");
    for (const auto& v : row)
      if (v.size() != n) throw InvalidLieAlgebraError("structure constants need n x n x n entries");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c_[i][j][k] != -c_[j][i][k])
          throw InvalidLieAlgebraError("antisymmetry fails: c^" + idx(k) + "_(" + idx(i) + "," + idx(j) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        Vector s = bracket(ei, bracket(ej, ek));
        const Vector t = bracket(ej, bracket(ek, ei));
        const Vector u = bracket(ek, bracket(ei, ej));
        for (std::size_t r = 0; r < n; ++r) s[r] += t[r] + u[r];
        if (!is_zero(s))
          throw InvalidLieAlgebraError("Jacobi fails on (" + idx(i) + "," + idx(j) + "," + idx(k) + ")");
      }
}

LieAlgebra LieAlgebra::abelian(std::size_t n) {
  return LieAlgebra(std::vector<std::vector<Vector>>(n, std::vector<Vector>(n, zero_vector(n))));
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  const std::size_t n = dim();
  Vector out = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(c_[i][j][k]) != 0) out[k] += xy * c_[i][j][k];
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(bracket(x, unit_vector(dim(), j)));
  return Matrix::from_columns(cols, dim());
}

// ---------------------------------------------------------------- GModule

GModule::GModule(const LieAlgebra& g, std::size_t dim, std::vector<Matrix> actions)
    : dim_(dim), actions_(std::move(actions)) {
  if (actions_.size() != g.dim()) throw InvalidLieAlgebraError("module needs one action matrix per basis vector");
  for (const auto& a : actions_)
    if (a.rows() != dim_ || a.cols() != dim_) throw InvalidLieAlgebraError("action matrices must be square, same size");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      const Matrix lhs = action(g.bracket(unit_vector(g.dim(), i), unit_vector(g.dim(), j)));
      const Matrix rhs = actions_[i] * actions_[j] - actions_[j] * actions_[i];
      if (!(lhs == rhs))
        throw InvalidLieAlgebraError("action does not respect the bracket on (" + idx(i) + "," + idx(j) + ")");
    }
}

GModule GModule::trivial(const LieAlgebra& g, std::size_t dim) {
  return GModule(g, dim, std::vector<Matrix>(g.dim(), Matrix(dim, dim)));
}

Matrix GModule::action(const Vector& x) const {
  Matrix out(dim_, dim_);
  for (std::size_t i = 0; i < actions_.size(); ++i)
    if (sgn(x[i]) != 0) out = out + actions_[i].scaled(x[i]);
  return out;
}

LieIdeal::LieIdeal(const LieAlgebra& g, Subspace h) : h_(std::move(h)) {
  if (h_.ambient_dim() != g.dim()) throw InvalidLieAlgebraError("ideal lives in the wrong space");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (const auto& y : h_.basis())
      if (!h_.contains(g.bracket(unit_vector(g.dim(), i), y)))
        throw InvalidLieAlgebraError("[e_" + idx(i) + ", h] is not contained in h");
}

// ---------------------------------------------------------------- complexes

CochainComplex ce_complex(const LieAlgebra& g, const GModule& m) {
  const std::size_t n = g.dim();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k <= n; ++k) dims.push_back(subsets_of_size(n, k).size() * m.dim());
  for (std::size_t k = 0; k < n; ++k) diffs.push_back(ce_d(g, m, k));
  return CochainComplex(0, std::move(dims), std::move(diffs));
}

LieAlgebra change_basis(const LieAlgebra& g, const std::vector<Vector>& basis) {
  const std::size_t n = g.dim();
  const auto inv = inverse(Matrix::from_columns(basis, n));
  if (!inv) throw InvalidLieAlgebraError("change of basis is singular");
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = *inv * g.bracket(basis[i], basis[j]);
  return LieAlgebra(std::move(c));
}

GModule change_basis(const LieAlgebra& rebased, const GModule& m, const std::vector<Vector>& basis) {
  std::vector<Matrix> actions;
  for (const auto& b : basis) actions.push_back(m.action(b));
  return GModule(rebased, m.dim(), std::move(actions));
}

std::vector<Vector> adapted_basis(const LieAlgebra& g, const LieIdeal& h) {
  const std::size_t n = g.dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : h.space().pivots()) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) out.push_back(unit_vector(n, c));
  for (const auto& b : h.space().basis()) out.push_back(b);
  return out;
}

FilteredComplex hs_filtered(const LieAlgebra& g, const LieIdeal& h, const GModule& m) {
  const auto basis = adapted_basis(g, h);
  const LieAlgebra ga = change_basis(g, basis);
  const GModule ma = change_basis(ga, m, basis);
  const CochainComplex c = ce_complex(ga, ma);
  const std::size_t n = g.dim();
  const int k = static_cast<int>(n - h.space().dim());
  const Mask complement = (Mask{1} << k) - 1;
  std::vector<std::vector<Subspace>> levels;
  for (std::size_t deg = 0; deg <= n; ++deg) {
    const auto subsets = subsets_of_size(n, deg);
    std::vector<Subspace> row;
    for (int p = 0; p <= k; ++p) {
      std::vector<Vector> vecs;
      for (std::size_t si = 0; si < subsets.size(); ++si) {
        if (std::popcount(subsets[si] & complement) < p) continue;
        for (std::size_t a = 0; a < m.dim(); ++a) vecs.push_back(unit_vector(c.dim(static_cast<int>(deg)), si * m.dim() + a));
      }
      row.push_back(Subspace::span(c.dim(static_cast<int>(deg)), vecs));
    }
    levels.push_back(std::move(row));
  }
  return FilteredComplex(c, 0, k, std::move(levels));
}

DimGrid expected_e2(const LieAlgebra& g, const LieIdeal& h, const GModule& m) {
  const auto basis = adapted_basis(g, h);
  const LieAlgebra ga = change_basis(g, basis);
  const GModule ma = change_basis(ga, m, basis);
  const std::size_t n = g.dim();
  const std::size_t dh = h.space().dim();
  const std::size_t k = n - dh;

  // h and M|h in the adapted basis (indices k..n-1).
  std::vector<std::vector<Vector>> ch(dh, std::vector<Vector>(dh, zero_vector(dh)));
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = 0; j < dh; ++j)
      for (std::size_t l = 0; l < dh; ++l) ch[i][j][l] = ga.structure(k + i, k + j, k + l);
  const LieAlgebra hh(std::move(ch));
  std::vector<Matrix> hact(ma.actions().begin() + static_cast<std::ptrdiff_t>(k), ma.actions().end());
  const GModule mh(hh, m.dim(), std::move(hact));
  const Cohomology hq = cohomology(ce_complex(hh, mh));

  // g/h on the complement indices.
  std::vector<std::vector<Vector>> cq(k, std::vector<Vector>(k, zero_vector(k)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) cq[i][j][l] = ga.structure(i, j, l);
  const LieAlgebra quotient(std::move(cq));

  DimGrid out;
  for (std::size_t q = 0; q <= dh; ++q) {
    const Subquotient& hqq = hq.at(static_cast<int>(q));
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < k; ++i) {
      Matrix adh(dh, dh);
      for (std::size_t t = 0; t < dh; ++t)
        for (std::size_t l = 0; l < dh; ++l) adh(l, t) = ga.structure(i, k + t, k + l);
      acts.push_back(induced_map(action_on_cochains(adh, ma.actions()[i], dh, q), hqq, hqq));
    }
    if (hqq.dim() == 0) continue;
    const GModule coeff(quotient, hqq.dim(), std::move(acts));
    const Cohomology hp = cohomology(ce_complex(quotient, coeff));
    for (std::size_t p = 0; p <= k; ++p) {
      const std::size_t d = hp.dim(static_cast<int>(p));
      if (d > 0) out[{static_cast<int>(p), static_cast<int>(q)}] = d;
    }
  }
  return out;
}

HsReport hs_report(const LieAlgebra& g, const LieIdeal& h, const GModule& m) {
  HsReport r;
  const FilteredComplex f = hs_filtered(g, h, m);
  r.e2 = compute_page(f, 2).dims();
  r.expected = expected_e2(g, h, m);
  r.e_inf_totals = run(f).limit().totals();
  const Cohomology betti = cohomology(ce_complex(g, m));
  for (std::size_t n = 0; n <= g.dim(); ++n) r.betti.push_back(betti.dim(static_cast<int>(n)));
  r.e2_matches = r.e2 == r.expected;
  r.totals_match = true;
  for (std::size_t n = 0; n <= g.dim(); ++n) {
    const auto it = r.e_inf_totals.find(static_cast<int>(n));
    if ((it == r.e_inf_totals.end() ? 0 : it->second) != r.betti[n]) r.totals_match = false;
  }
  return r;
}

bool verify(const LieAlgebra& g, const LieIdeal& h, const GModule& m) { return hs_report(g, h, m).ok(); }

}  // namespace kss
