// Acceptance run: one PASS/FAIL line per criterion, exit 0 only when all pass.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "kss/cli.hpp"
#include "oracles.hpp"

using namespace kss;

namespace {

const std::string corpus_dir = KSS_CORPUS_DIR;

std::vector<Json> corpus_of_kind(const std::string& kind) {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir))
    if (e.path().extension() == ".example") paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<Json> out;
  for (const auto& p : paths) {
    Json j = read_json_file(p);
    if (example_kind(j) == kind) out.push_back(std::move(j));
  }
  return out;
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& h) {
  std::map<int, std::size_t> out;
  for (const auto& [k, d] : h)
    if (d) out[k] = d;
  return out;
}

long chi(const std::map<int, std::size_t>& h) {
  long c = 0;
  for (const auto& [k, d] : h) c += (k % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return c;
}

std::size_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct P1Case {
  std::string file;
  AlgebroidOnP1 algebroid;
  std::vector<EquivariantSection> sections;
};

std::vector<P1Case> p1_corpus() {
  std::vector<P1Case> out;
  for (const auto& j : corpus_of_kind("p1_bundle")) {
    P1Example ex = parse_p1(j);
    std::vector<EquivariantSection> s{ex.section};
    s.insert(s.end(), ex.others.begin(), ex.others.end());
    out.push_back({ex.name, ex.algebroid, s});
  }
  return out;
}

// ------------------------------------------------------------- criteria

Outcome engine_soundness() {
  Outcome o;
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    const auto planted = oracle::planted_filtered(seed);
    const auto& f = planted.complex;
    if (f.complex().total_dim() > 12 || f.width() > 4) o.fail("seed " + std::to_string(seed) + " out of range");
    if (!check_convergence(f)) o.fail("convergence fails for seed " + std::to_string(seed));
    const auto r = run(f);
    if (r.limit().dims() != planted.e_inf) o.fail("E_inf differs from the planted answer, seed " + std::to_string(seed));
    const auto betti = oracle::betti_by_ranks(f.complex());
    if (r.limit().totals() != nonzero(betti)) o.fail("totals differ from rank-count H, seed " + std::to_string(seed));
  }
  o.detail = o.pass ? "100 planted complexes" : o.detail;
  return o;
}

Outcome hochschild_serre() {
  Outcome o;
  std::size_t n = 0, nontrivial_module = 0;
  for (const auto& j : corpus_of_kind("lie_algebra")) {
    const LieAlgebraExample ex = parse_lie_algebra(j);
    ++n;
    if (ex.m.dim() > 1 || std::any_of(ex.m.actions().begin(), ex.m.actions().end(), [](const Matrix& a) { return !a.is_zero(); }))
      ++nontrivial_module;
    const HsReport r = hs_report(ex.g, ex.h, ex.m);
    if (!r.e2_matches) o.fail(ex.name + ": E_2 differs from expected");
    if (!r.totals_match) o.fail(ex.name + ": E_inf totals differ from Betti numbers");
    const auto betti = oracle::ce_betti(ex.g, ex.m);
    std::map<int, std::size_t> ref;
    for (std::size_t k = 0; k < betti.size(); ++k) ref[static_cast<int>(k)] = betti[k];
    if (r.e_inf_totals != nonzero(ref)) o.fail(ex.name + ": E_inf totals differ from the by-hand oracle");
    if (!verify(ex.g, ex.h, ex.m)) o.fail(ex.name + ": verify false");
    if (ex.name == "heisenberg-center" && r.e_inf_totals != std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 2}, {3, 1}})
      o.fail("Heisenberg totals are not 1,2,2,1");
  }
  if (n < 6) o.fail("only " + std::to_string(n) + " instances");
  if (nontrivial_module == 0) o.fail("no nontrivial module in the corpus");
  if (o.pass) o.detail = std::to_string(n) + " instances, " + std::to_string(nontrivial_module) + " with nontrivial modules";
  return o;
}

Outcome degeneration() {
  Outcome o;
  std::size_t cech = 0, slices = 0;
  for (const auto& c : p1_corpus())
    for (const auto& v : c.sections) {
      ++cech;
      const auto dr = second_page_degeneration(c.algebroid, v, 4);
      if (!dr.ok() || !dr.e2_is_limit) o.fail(c.file + ", V = " + v.describe() + ": page " + std::to_string(dr.degeneration_page));
    }
  for (const auto& j : corpus_of_kind("lie_rinehart")) {
    const LieRinehartExample ex = parse_lie_rinehart(j);
    const int m = static_cast<int>(ex.algebroid.rank());
    for (int w = ex.w_lo; w <= ex.w_hi; ++w) {
      ++slices;
      const auto k = lie_koszul(ex.algebroid, ex.section, w);
      std::vector<std::vector<std::size_t>> dims;
      std::vector<std::vector<Matrix>> h, vert;
      for (int p = -m; p <= 0; ++p) {
        dims.push_back({k.complex.dim(p)});
        h.push_back({k.complex.differential(p)});
        vert.push_back({Matrix(0, k.complex.dim(p))});
      }
      const auto r = run(row_filtration(DoubleComplex({-m, 0, 0, 0}, dims, h, vert)));
      bool vanish = true;
      for (const auto& page : r.pages)
        if (page.page() >= 2 && !page.differentials_vanish()) vanish = false;
      if (!vanish || r.degeneration_page > 2)
        o.fail(ex.name + " weight " + std::to_string(w) + ": d_r != 0 for some r >= 2");
    }
  }
  if (o.pass) o.detail = std::to_string(cech) + " Čech-Koszul examples, " + std::to_string(slices) + " affine slices";
  return o;
}

Outcome formality() {
  Outcome o;
  for (int n = 2; n <= 3; ++n) {
    const auto l = LieRinehartPresentation::tangent(WeightedPolyRing(std::vector<int>(static_cast<std::size_t>(n), 1)));
    const auto fr = formality_check(l, euler_field(l), 0, 5);
    if (!fr.ok()) o.fail("n = " + std::to_string(n) + ": " + *fr.first_failure);
    for (const auto& s : fr.slices) {
      if (!s.chain_map || !s.quasi_isomorphism || !s.map) {
        o.fail("n = " + std::to_string(n) + " weight " + std::to_string(s.weight));
        continue;
      }
      for (int p = -n; p < 0; ++p)
        if (!(s.map->at(p + 1) * s.map->source().differential(p)).is_zero()) o.fail("chain-map identity fails");
    }
  }
  if (o.pass) o.detail = "Euler n = 2, 3, weights 0..5 onto K restricted to the zero locus";
  return o;
}

Outcome vanishing() {
  Outcome o;
  std::size_t examples = 0;
  for (const auto& j : corpus_of_kind("lie_rinehart")) {
    const LieRinehartExample ex = parse_lie_rinehart(j);
    if (ex.dim_y != 0) continue;
    ++examples;
    const auto vr = vanishing_check(ex.algebroid, ex.section, 0, ex.w_lo, ex.w_hi);
    if (!vr.ok()) o.fail(ex.name + ": " + vr.violations.front());
    for (const auto& e : vr.dims)
      if (e.degree > 0 && e.dim) o.fail(ex.name + ": positive-degree class");
  }
  // Closed form for the Euler field on affine n-space, n = 1 is the line.
  for (int n = 1; n <= 3; ++n) {
    const auto l = LieRinehartPresentation::tangent(WeightedPolyRing(std::vector<int>(static_cast<std::size_t>(n), 1)));
    for (int w = 0; w <= 5; ++w) {
      const auto k = lie_koszul(l, euler_field(l), w);
      const auto h = oracle::betti_by_ranks(k.complex);
      for (int p = -n; p <= 0; ++p) {
        if (k.complex.dim(p) != binom(n, -p) * binom(w + p + n - 1, n - 1))
          o.fail("n = " + std::to_string(n) + " weight " + std::to_string(w) + ": slice dims");
        if (h.at(p) != (w == 0 && p == 0 ? 1u : 0u))
          o.fail("n = " + std::to_string(n) + " weight " + std::to_string(w) + ": cohomology dims");
      }
    }
  }
  if (examples == 0) o.fail("no dim Y = 0 examples");
  if (o.pass) o.detail = std::to_string(examples) + " examples with dim Y = 0, closed forms n = 1..3";
  return o;
}

Outcome remark_v_zero() {
  Outcome o;
  for (int d = -2; d <= 3; ++d) {
    const auto a = atiyah_algebroid(d);
    const FirstPage fp = first_page(a, 4);
    if (!fp.consistent) o.fail("d = " + std::to_string(d) + ": first page inconsistent");
    std::map<int, std::size_t> expected;
    for (const auto& [b, dim] : fp.grid) expected[b.p + b.q] += dim;
    const auto h = nonzero(equivariant_h(a, EquivariantSection::lift(a, 0, 0, 0), 4));
    if (h != nonzero(expected)) o.fail("d = " + std::to_string(d) + ": H differs from the first page");
  }
  if (o.pass) o.detail = "d = -2..3";
  return o;
}

Outcome corollary() {
  Outcome o;
  const auto a0 = atiyah_algebroid(0);
  for (int c : {0, 1, -2}) {
    const auto v = EquivariantSection::lift(a0, 0, 1, 0, Laurent(c));
    const auto cr = corollary_check(a0, v, 4);
    const auto h = nonzero(equivariant_h(a0, v, 4));
    const std::map<int, std::size_t> fixed =
        c == 0 ? std::map<int, std::size_t>{{-1, 2}, {0, 2}} : std::map<int, std::size_t>{};
    if (!cr.applicable || !cr.matches) o.fail("scalar part " + std::to_string(c) + ": prediction mismatch");
    if (h != fixed) o.fail("scalar part " + std::to_string(c) + ": H differs from the fixed-point count");
  }
  const auto t = AlgebroidOnP1::tangent();
  const auto vt = EquivariantSection::lift(t, 0, 1, 0);
  if (nonzero(equivariant_h(t, vt, 4)) != std::map<int, std::size_t>{{0, 2}} || !corollary_check(t, vt, 4).matches)
    o.fail("untwisted z d/dz");
  if (o.pass) o.detail = "z d/dz on O(0): H^-1 = H^0 = 2; untwisted H^0 = 2";
  return o;
}

Outcome structural() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& j : corpus_of_kind("lie_rinehart")) {
    const LieRinehartExample ex = parse_lie_rinehart(j);
    const auto& l = ex.algebroid;
    const auto& v = ex.section;
    const auto val = validate(l, ex.validate_up_to);
    ++checks;
    if (!val.ok()) o.fail(ex.name + ": " + val.failures.front());
    const int m = static_cast<int>(l.rank());
    for (int w = l.lowest_form_weight(); w <= ex.w_hi; ++w)
      for (int p = 0; p <= m; ++p) {
        checks += 3;
        if (p + 2 <= m && !(ce_d(l, p + 1, w) * ce_d(l, p, w)).is_zero()) o.fail(ex.name + ": d^2 != 0");
        if (p >= 2 && !(contraction(l, v, p - 1, w + v.weight()) * contraction(l, v, p, w)).is_zero())
          o.fail(ex.name + ": i_V^2 != 0");
        const FormSlice src(l, p, w), dst(l, p, w + v.weight());
        const Matrix lv = lie_derivative(l, v, p, w);
        for (std::size_t c = 0; c < src.size(); ++c)
          if (lv.column(c) != form_coordinates(oracle::lie_derivative_by_definition(l, v, basis_form(src.basis()[c]),
                                                                                    static_cast<std::size_t>(p)),
                                               dst))
            o.fail(ex.name + ": Cartan formula fails at weight " + std::to_string(w));
      }
  }
  for (const auto& j : corpus_of_kind("lie_algebra")) {
    const auto ex = parse_lie_algebra(j);
    ++checks;
    (void)ce_complex(ex.g, ex.m);
  }
  for (const auto& c : p1_corpus()) {
    checks += 2;
    if (!c.algebroid.cocycle_holds()) o.fail(c.file + ": cocycle");
    if (!c.algebroid.symbol_intertwines()) o.fail(c.file + ": symbol");
    for (int k = 0; k <= static_cast<int>(c.algebroid.rank()); ++k) {
      ++checks;
      if (cech_cohomology(wedge_dual(c.algebroid, k), 4) != cech_cohomology(wedge_dual(c.algebroid, k), 7))
        o.fail(c.file + ": wedge dual not window-stable");
    }
    for (const auto& v : c.sections) {
      checks += 2;
      const DoubleComplex dc = cech_koszul(c.algebroid, v, 4);
      const auto& r = dc.range();
      for (int p = r.p0; p + 2 <= r.p1; ++p)
        for (int q = r.q0; q <= r.q1; ++q)
          if (!(dc.horizontal(p + 1, q) * dc.horizontal(p, q)).is_zero()) o.fail(c.file + ": i_V^2 != 0 on cochains");
      if (equivariant_h(c.algebroid, v, 4) != equivariant_h(c.algebroid, v, 7)) o.fail(c.file + ": H not window-stable");
    }
  }
  for (const auto& j : corpus_of_kind("raw_complex")) {
    ++checks;
    (void)parse_raw(j);
  }
  if (o.pass) o.detail = std::to_string(checks) + " identity groups over the corpus";
  return o;
}

Outcome euler_invariance() {
  Outcome o;
  std::map<std::string, std::vector<EquivariantSection>> by_algebroid;
  std::map<std::string, AlgebroidOnP1> algebroids;
  for (const auto& c : p1_corpus()) {
    algebroids.emplace(c.algebroid.name(), c.algebroid);
    auto& s = by_algebroid[c.algebroid.name()];
    s.insert(s.end(), c.sections.begin(), c.sections.end());
  }
  std::size_t sections = 0;
  for (const auto& [name, secs] : by_algebroid) {
    const auto& a = algebroids.at(name);
    const long chi0 = chi(equivariant_h(a, EquivariantSection::lift(a, 0, 0, 0), 4));
    for (const auto& v : secs) {
      ++sections;
      if (chi(equivariant_h(a, v, 4)) != chi0) o.fail(name + ", V = " + v.describe());
    }
  }
  if (o.pass) o.detail = std::to_string(by_algebroid.size()) + " algebroids, " + std::to_string(sections) + " sections";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> check;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {1, "engine soundness", engine_soundness, 10},
      {2, "Hochschild-Serre E_2 and E_inf", hochschild_serre, 5},
      {3, "second-page degeneration", degeneration, 10},
      {4, "formality quasi-isomorphism", formality, 5},
      {5, "vanishing above dim Y", vanishing, 1e9},
      {6, "V = 0 equals the first page", remark_v_zero, 10},
      {7, "fixed-point prediction for z d/dz", corollary, 1e9},
      {8, "structural identities", structural, 1e9},
      {9, "Euler characteristic invariance", euler_invariance, 1e9},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > c.budget_s) o.fail("over the time budget");
    all = all && o.pass;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << s;
    std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail << " ("
              << t.str() << " s)\n";
  }
  return all ? 0 : 1;
}
