#include "kss/cechp1.hpp"

#include <algorithm>

#include "kss/lierinehart.hpp"

namespace kss {

namespace {

std::string num(int k) { return std::to_string(k); }

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& m) {
  std::map<int, std::size_t> out;
  for (const auto& [k, v] : m)
    if (v != 0) out[k] = v;
  return out;
}

// i_V : Λ^k -> Λ^{k-1} in the frame basis (lexicographic subsets).
LaurentMatrix contraction_matrix(const LaurentVector& v, std::size_t k) {
  const std::size_t r = v.size();
  const auto src = subsets_of_size(r, k);
  const auto dst = subsets_of_size(r, k - 1);
  LaurentMatrix out(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    std::size_t t = 0;
    for (std::size_t i = 0; i < r; ++i) {
      const Mask bit = Mask{1} << i;
      if (!(src[j] & bit)) continue;
      const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), src[j] & ~bit) - dst.begin());
      out(row, j) += (t % 2 == 0) ? v[i] : -v[i];
      ++t;
    }
  }
  return out;
}

bool has_positive_exponents(const LaurentVector& v) {
  return std::any_of(v.begin(), v.end(), [](const Laurent& l) { return !l.positive_part().is_zero(); });
}

bool is_perfect_square(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  const mpz_class n = q.get_num();
  const mpz_class d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

// Rational roots with multiplicity of a polynomial of degree <= 2 (nonzero).
std::vector<std::pair<Rational, int>> rational_roots(const Laurent& p) {
  const Rational c0 = p.coefficient(0), c1 = p.coefficient(1), c2 = p.coefficient(2);
  if (p.max_exponent() > 2 || p.min_exponent() < 0) throw std::invalid_argument("expected a polynomial of degree <= 2");
  if (sgn(c2) == 0) {
    if (sgn(c1) == 0) return {};
    return {{Rational(-c0 / c1), 1}};
  }
  const Rational disc = c1 * c1 - 4 * c2 * c0;
  Rational s;
  if (!is_perfect_square(disc, s)) throw IrrationalZeroError("vector part " + p.format() + " has irrational zeros");
  if (sgn(s) == 0) return {{Rational(-c1 / (2 * c2)), 2}};
  Rational r1 = (-c1 - s) / (2 * c2);
  Rational r2 = (-c1 + s) / (2 * c2);
  if (r2 < r1) std::swap(r1, r2);
  return {{r1, 1}, {r2, 1}};
}

CochainComplex total_at(const AlgebroidOnP1& a, const EquivariantSection& v, int window) {
  return total(cech_koszul(a, v, window));
}

std::map<int, std::size_t> h_dims(const CochainComplex& c) {
  const Cohomology h = cohomology(c);
  std::map<int, std::size_t> out;
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k) out[k] = h.dim(k);
  return out;
}

}  // namespace

// ------------------------------------------------------------- SheafOnP1

SheafOnP1::SheafOnP1(LaurentMatrix transition, LaurentMatrix inverse, std::string name)
    : g_(std::move(transition)), ginv_(std::move(inverse)), name_(std::move(name)) {
  if (g_.rows() != g_.cols() || ginv_.rows() != g_.rows() || ginv_.cols() != g_.cols())
    throw std::invalid_argument("transition matrices must be square of equal size");
  if (!(ginv_ * g_ == LaurentMatrix::identity(g_.rows())))
    throw std::invalid_argument("inverse transition does not invert the transition of " + name_);
}

SheafOnP1 SheafOnP1::line_bundle(int d) {
  LaurentMatrix g(1, 1), gi(1, 1);
  g(0, 0) = Laurent::monomial(-d);
  gi(0, 0) = Laurent::monomial(d);
  return SheafOnP1(g, gi, "O(" + num(d) + ")");
}

// -------------------------------------------------------------- CechModel

CechModel::CechModel(const SheafOnP1& sheaf, int window)
    : rank_(sheaf.rank()), w_(window), g_(sheaf.transition()) {
  if (w_ < 1) throw WindowTooSmall("window radius must be >= 1");
  if (w_ < -g_.min_exponent() || w_ < -sheaf.inverse_transition().min_exponent())
    throw WindowTooSmall("window " + num(w_) + " is below the lowest exponent of the transition or its inverse for " +
                         sheaf.name());
  b0_ = w_ + std::max(0, sheaf.inverse_transition().max_exponent());
  const std::size_t per = static_cast<std::size_t>(b0_ + 1);
  const std::size_t raw = rank_ * per;

  std::map<std::pair<std::size_t, int>, std::size_t> outside;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries(raw);
  for (std::size_t c = 0; c < rank_; ++c)
    for (int j = 0; j <= b0_; ++j) {
      const std::size_t col = c * per + static_cast<std::size_t>(j);
      for (std::size_t r = 0; r < rank_; ++r)
        for (const auto& [e, coef] : g_(r, c).terms()) {
          const int ex = e + j;
          if (ex >= -w_ && ex <= w_) continue;
          const auto [it, fresh] = outside.emplace(std::make_pair(r, ex), outside.size());
          entries[col].emplace_back(it->second, coef);
        }
    }
  Matrix out(outside.size(), raw);
  for (std::size_t col = 0; col < raw; ++col)
    for (const auto& [row, coef] : entries[col]) out(row, col) += coef;
  chart0_ = kernel_basis(out);

  delta_ = Matrix(c1_dim(), c0_dim());
  for (std::size_t i = 0; i < c0_dim(); ++i) {
    const auto [f0, f1] = c0_element(i);
    LaurentVector u = g_ * f0;
    for (std::size_t r = 0; r < rank_; ++r) u[r] = f1[r] - u[r];
    const Vector col = c1_coordinates(u);
    for (std::size_t r = 0; r < col.size(); ++r) delta_(r, i) = col[r];
  }
}

CochainComplex CechModel::complex() const { return CochainComplex(0, {c0_dim(), c1_dim()}, {delta_}); }

std::pair<LaurentVector, LaurentVector> CechModel::c0_element(std::size_t i) const {
  LaurentVector f0(rank_), f1(rank_);
  const std::size_t per = static_cast<std::size_t>(b0_ + 1);
  if (i < chart0_.dim()) {
    const Vector& v = chart0_.basis()[i];
    for (std::size_t c = 0; c < rank_; ++c)
      for (std::size_t j = 0; j < per; ++j) f0[c].add_term(static_cast<int>(j), v[c * per + j]);
  } else {
    const std::size_t k = i - chart0_.dim();
    const std::size_t len = static_cast<std::size_t>(w_ + 1);
    f1[k / len] = Laurent::monomial(-static_cast<int>(k % len));
  }
  return {f0, f1};
}

LaurentVector CechModel::c1_element(std::size_t i) const {
  const std::size_t len = static_cast<std::size_t>(2 * w_ + 1);
  LaurentVector u(rank_);
  u[i / len] = Laurent::monomial(static_cast<int>(i % len) - w_);
  return u;
}

Vector CechModel::c0_coordinates(const LaurentVector& f0, const LaurentVector& f1) const {
  const std::size_t per = static_cast<std::size_t>(b0_ + 1);
  const std::size_t len = static_cast<std::size_t>(w_ + 1);
  Vector raw = zero_vector(rank_ * per);
  for (std::size_t c = 0; c < rank_; ++c)
    for (const auto& [e, coef] : f0[c].terms()) {
      if (e < 0 || e > b0_) throw WindowTooSmall("chart-0 term z^" + num(e) + " leaves the window");
      raw[c * per + static_cast<std::size_t>(e)] = coef;
    }
  const auto coords = chart0_.coordinates(raw);
  if (!coords) throw WindowTooSmall("chart-0 section leaves the window after transition");
  Vector out = *coords;
  out.resize(c0_dim());
  for (std::size_t c = 0; c < rank_; ++c)
    for (const auto& [e, coef] : f1[c].terms()) {
      if (e > 0 || e < -w_) throw WindowTooSmall("chart-1 term w^" + num(-e) + " leaves the window");
      out[chart0_.dim() + c * len + static_cast<std::size_t>(-e)] = coef;
    }
  return out;
}

Vector CechModel::c1_coordinates(const LaurentVector& u) const {
  const std::size_t len = static_cast<std::size_t>(2 * w_ + 1);
  Vector out = zero_vector(c1_dim());
  for (std::size_t c = 0; c < rank_; ++c)
    for (const auto& [e, coef] : u[c].terms()) {
      if (e < -w_ || e > w_) throw WindowTooSmall("overlap term z^" + num(e) + " leaves the window");
      out[c * len + static_cast<std::size_t>(e + w_)] = coef;
    }
  return out;
}

CechDims cech_cohomology(const SheafOnP1& f, int window) {
  auto at = [&](int w) {
    const CechModel m(f, w);
    const std::size_t rk = rank(m.delta());
    return CechDims{m.c0_dim() - rk, m.c1_dim() - rk};
  };
  const CechDims d = at(window);
  const CechDims next = at(window + 1);
  if (!(d == next))
    throw WindowTooSmall("cohomology of " + f.name() + " changes between windows " + num(window) + " and " +
                         num(window + 1));
  return d;
}

// ------------------------------------------------------------- algebroids

LaurentMatrix operator_transport(int e) {
  LaurentMatrix m(2, 2);
  m(0, 0) = Laurent(1);
  m(0, 1) = Laurent::monomial(-1, -e);
  m(1, 1) = Laurent::monomial(-2, -1);
  return m;
}

AlgebroidOnP1::AlgebroidOnP1(bool twisted, int d, LaurentMatrix g01, LaurentMatrix g10)
    : twisted_(twisted), d_(d), g01_(std::move(g01)), g10_(std::move(g10)) {}

AlgebroidOnP1 AlgebroidOnP1::atiyah(int d) {
  // f_1 = z^{-d} f_0 and f_0 = w^{-d} f_1: the same exponent in both directions.
  const LaurentMatrix g01 = operator_transport(-d);
  const LaurentMatrix g10 = operator_transport(-d).inverted_variable();
  return AlgebroidOnP1(true, d, g01, g10);
}

AlgebroidOnP1 AlgebroidOnP1::tangent() {
  LaurentMatrix g01(1, 1), g10(1, 1);
  g01(0, 0) = operator_transport(0)(1, 1);
  g10(0, 0) = operator_transport(0)(1, 1).inverted();
  return AlgebroidOnP1(false, 0, g01, g10);
}

AlgebroidOnP1 atiyah_algebroid(int d) { return AlgebroidOnP1::atiyah(d); }

std::string AlgebroidOnP1::name() const { return twisted_ ? "D_O(" + num(d_) + ")" : "T_P1"; }

bool AlgebroidOnP1::cocycle_holds() const {
  const auto id = LaurentMatrix::identity(rank());
  return g10_ * g01_ == id && g01_ * g10_ == id;
}

bool AlgebroidOnP1::symbol_intertwines() const {
  const LaurentMatrix theta = tangent().g01();
  LaurentMatrix sigma(1, rank());
  sigma(0, rank() - 1) = Laurent(1);
  return sigma * g01_ == theta * sigma;
}

SheafOnP1 wedge_dual(const AlgebroidOnP1& a, int p) {
  if (p < 0 || p > static_cast<int>(a.rank())) throw std::invalid_argument("wedge degree out of range");
  const auto k = static_cast<std::size_t>(p);
  return SheafOnP1(exterior_power(a.g10().transpose(), k), exterior_power(a.g01().transpose(), k),
                   "L^" + num(p) + " " + a.name() + "*");
}

// ------------------------------------------------------ equivariant section

EquivariantSection EquivariantSection::lift(const AlgebroidOnP1& a, const Rational& c0, const Rational& c1,
                                            const Rational& c2, std::optional<Laurent> scalar0) {
  Laurent b;
  b.add_term(0, c0);
  b.add_term(1, c1);
  b.add_term(2, c2);
  LaurentVector v0;
  if (a.twisted()) {
    Laurent s;
    if (scalar0) {
      if (!scalar0->negative_part().is_zero())
        throw GluingError("chart-0 scalar part " + scalar0->format() + " is not a polynomial in z");
      s = *scalar0;
    } else {
      s = -(a.g01()(0, 1) * b).positive_part();
    }
    v0 = {s, b};
  } else {
    if (scalar0) throw GluingError("the tangent algebroid has no scalar part");
    v0 = {b};
  }
  const LaurentVector v1 = a.g01() * v0;
  if (has_positive_exponents(v1)) {
    std::string bad;
    for (std::size_t i = 0; i < v1.size(); ++i)
      if (!v1[i].positive_part().is_zero())
        bad += " component " + std::to_string(i) + ": " + v1[i].positive_part().format();
    throw GluingError("section does not glue on the overlap; chart-1 terms with positive z-exponent:" + bad);
  }
  return EquivariantSection(v0, v1);
}

bool EquivariantSection::is_zero() const {
  return std::all_of(v0_.begin(), v0_.end(), [](const Laurent& l) { return l.is_zero(); });
}

std::string EquivariantSection::describe() const {
  std::string s = "(" + v0_.back().format() + ") d_z";
  if (v0_.size() == 2) s = "(" + v0_[0].format() + ") + " + s;
  return s;
}

std::string ZeroPoint::describe() const { return at_infinity ? "inf" : to_string(z); }

// ------------------------------------------------------------ zero locus

ZeroLocus zero_locus(const AlgebroidOnP1& a, const EquivariantSection& v) {
  ZeroLocus y;
  if (v.is_zero()) {
    y.whole_line = true;
    return y;
  }
  const Laurent& b0 = v.vector_part0();
  const Laurent& b1 = v.chart1().back();
  std::vector<std::pair<Rational, int>> candidates;
  if (!b0.is_zero()) {
    candidates = rational_roots(b0);
  } else if (a.twisted() && !v.chart0()[0].is_zero()) {
    for (const auto& [r, m] : rational_roots(v.chart0()[0])) candidates.emplace_back(r, 0);
  }
  for (const auto& [r, m] : candidates) {
    bool vanishes = true;
    for (const auto& comp : v.chart0())
      if (sgn(comp.evaluate(r)) != 0) vanishes = false;
    if (vanishes) y.points.push_back({false, r, b0.is_zero() ? 0 : m});
  }
  bool at_inf = true;
  for (const auto& comp : v.chart1())
    if (sgn(comp.coefficient(0)) != 0) at_inf = false;
  if (at_inf) y.points.push_back({true, 0, b1.is_zero() ? 0 : -b1.max_exponent()});
  return y;
}

bool assumption_check(const AlgebroidOnP1& a, const EquivariantSection& v) {
  const ZeroLocus y = zero_locus(a, v);
  if (y.whole_line) return true;
  return std::all_of(y.points.begin(), y.points.end(), [](const ZeroPoint& p) { return p.multiplicity == 1; });
}

// ------------------------------------------------------- double complexes

DoubleComplex cech_koszul(const AlgebroidOnP1& a, const EquivariantSection& v, int window) {
  const int r = static_cast<int>(a.rank());
  std::vector<CechModel> models;  // models[k] for Λ^k D*
  for (int k = 0; k <= r; ++k) models.emplace_back(wedge_dual(a, k), window + 2 * (r - k));

  const auto n = static_cast<std::size_t>(r + 1);
  std::vector<std::vector<std::size_t>> dims(n, std::vector<std::size_t>(2));
  std::vector<std::vector<Matrix>> horiz(n, std::vector<Matrix>(2));
  std::vector<std::vector<Matrix>> vert(n, std::vector<Matrix>(2));
  for (int k = 0; k <= r; ++k) {
    const auto ip = static_cast<std::size_t>(r - k);
    const CechModel& m = models[static_cast<std::size_t>(k)];
    dims[ip] = {m.c0_dim(), m.c1_dim()};
    vert[ip][0] = m.delta();
    vert[ip][1] = Matrix(0, m.c1_dim());
    if (k == 0) {
      horiz[ip] = {Matrix(0, m.c0_dim()), Matrix(0, m.c1_dim())};
      continue;
    }
    const CechModel& t = models[static_cast<std::size_t>(k - 1)];
    const LaurentMatrix i0 = contraction_matrix(v.chart0(), static_cast<std::size_t>(k));
    const LaurentMatrix i1 = contraction_matrix(v.chart1(), static_cast<std::size_t>(k));
    Matrix h0(t.c0_dim(), m.c0_dim());
    for (std::size_t i = 0; i < m.c0_dim(); ++i) {
      const auto [f0, f1] = m.c0_element(i);
      const Vector col = t.c0_coordinates(i0 * f0, i1 * f1);
      for (std::size_t row = 0; row < col.size(); ++row) h0(row, i) = col[row];
    }
    Matrix h1(t.c1_dim(), m.c1_dim());
    for (std::size_t i = 0; i < m.c1_dim(); ++i) {
      const Vector col = t.c1_coordinates(i1 * m.c1_element(i));
      for (std::size_t row = 0; row < col.size(); ++row) h1(row, i) = col[row];
    }
    horiz[ip] = {std::move(h0), std::move(h1)};
  }
  return DoubleComplex::from_commuting({-r, 0, 0, 1}, std::move(dims), std::move(horiz), std::move(vert));
}

std::map<int, std::size_t> equivariant_h(const AlgebroidOnP1& a, const EquivariantSection& v, int window) {
  const auto h = h_dims(total_at(a, v, window));
  const auto next = h_dims(total_at(a, v, window + 1));
  if (h != next)
    throw WindowTooSmall("equivariant cohomology of " + a.name() + " changes between windows " + num(window) +
                         " and " + num(window + 1));
  return h;
}

CorollaryReport corollary_check(const AlgebroidOnP1& a, const EquivariantSection& v, int window) {
  CorollaryReport rep;
  rep.observed = equivariant_h(a, v, window);
  rep.applicable = assumption_check(a, v);
  if (!rep.applicable) return rep;
  const ZeroLocus y = zero_locus(a, v);
  if (y.whole_line) {
    for (const auto& [b, d] : first_page(a, window).grid) rep.predicted[b.p + b.q] += d;
  } else if (!y.points.empty()) {
    rep.predicted[0] = y.points.size();
    if (a.twisted()) rep.predicted[-1] = y.points.size();
  }
  rep.matches = nonzero(rep.predicted) == nonzero(rep.observed);
  return rep;
}

FirstPage first_page(const AlgebroidOnP1& a, int window) {
  FirstPage fp;
  const int r = static_cast<int>(a.rank());
  for (int k = 0; k <= r; ++k) {
    const CechDims c = cech_cohomology(wedge_dual(a, k), window);
    if (c.h0) fp.grid[{-k, 0}] = c.h0;
    if (c.h1) fp.grid[{-k, 1}] = c.h1;
  }
  const EquivariantSection zero = EquivariantSection::lift(a, 0, 0, 0);
  fp.specseq = compute_page(column_filtration(cech_koszul(a, zero, window)), 1).dims();
  fp.consistent = fp.grid == fp.specseq;
  return fp;
}

bool DegenerationReport::ok() const {
  return degeneration_page <= 2 && e2_is_limit && nonzero(e_inf_totals) == nonzero(h);
}

DegenerationReport second_page_degeneration(const AlgebroidOnP1& a, const EquivariantSection& v, int window) {
  DegenerationReport rep;
  const DoubleComplex dc = cech_koszul(a, v, window);
  const FilteredComplex rows = row_filtration(dc);
  const SpectralSequenceRun rr = run(rows);
  rep.degeneration_page = rr.degeneration_page;
  rep.stable_page = rr.stable_page;
  const std::size_t e2 = std::min<std::size_t>(2, rr.pages.size() - 1);
  rep.e2_is_limit = rr.pages[e2].dims() == rr.limit().dims();
  rep.e_inf_totals = rr.limit().totals();
  rep.h = h_dims(rows.complex());
  rep.i_d1_ranks = differential_ranks(compute_page(column_filtration(dc), 1));
  return rep;
}

}  // namespace kss
