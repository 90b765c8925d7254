#include <doctest.h>

#include "kss/cechp1.hpp"
#include "oracles.hpp"

using namespace kss;

namespace {

CechDims riemann_roch(int d) {
  return {static_cast<std::size_t>(std::max(d + 1, 0)), static_cast<std::size_t>(std::max(-d - 1, 0))};
}

// h^q(Λ^k D*) for the Atiyah algebroid of O(d): Λ^0 = O, Λ^2 = O(-2), and
// 0 -> O(-2) -> D* -> O -> 0 with connecting map multiplication by d.
CechDims atiyah_dual(int d, int k) {
  if (k == 0) return {1, 0};
  if (k == 2) return {0, 1};
  return d == 0 ? CechDims{1, 1} : CechDims{0, 0};
}

std::vector<AlgebroidOnP1> algebroids() {
  std::vector<AlgebroidOnP1> out;
  for (int d = -2; d <= 3; ++d) out.push_back(atiyah_algebroid(d));
  out.push_back(AlgebroidOnP1::tangent());
  return out;
}

std::vector<std::array<int, 3>> vector_fields() {
  return {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {-1, 0, 1}, {2, 1, -1}, {0, 3, 2}};
}

long chi(const std::map<int, std::size_t>& h) {
  long c = 0;
  for (const auto& [k, d] : h) c += (k % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return c;
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& h) {
  std::map<int, std::size_t> out;
  for (const auto& [k, d] : h)
    if (d) out[k] = d;
  return out;
}

}  // namespace

TEST_SUITE("cechp1") {
  TEST_CASE("line bundles: Čech dimensions match Riemann-Roch and Serre duality") {
    for (int d = -5; d <= 5; ++d) {
      CAPTURE(d);
      const SheafOnP1 o = SheafOnP1::line_bundle(d);
      const int window = std::max(1, std::abs(d));
      CHECK(cech_cohomology(o, window) == riemann_roch(d));
      CHECK(cech_cohomology(o, window + 3) == riemann_roch(d));
      const auto c = CechModel(o, window).complex();
      const auto b = oracle::betti_by_ranks(c);
      CHECK(b.at(0) == riemann_roch(d).h0);
      CHECK(b.at(1) == riemann_roch(d).h1);
    }
  }

  TEST_CASE("windows that cannot hold the transition are refused") {
    CHECK_THROWS_AS(cech_cohomology(SheafOnP1::line_bundle(3), 2), WindowTooSmall);
    CHECK_THROWS_AS(cech_cohomology(SheafOnP1::line_bundle(0), 0), WindowTooSmall);
    CHECK_THROWS_AS(cech_cohomology(SheafOnP1::line_bundle(-4), 3), WindowTooSmall);
    CHECK_NOTHROW(cech_cohomology(SheafOnP1::line_bundle(3), 3));
    CHECK_NOTHROW(cech_cohomology(SheafOnP1::line_bundle(-4), 4));
    const LaurentMatrix g = LaurentMatrix::from_rows({{Laurent::monomial(-1)}});
    CHECK_THROWS(SheafOnP1(g, g));
  }

  TEST_CASE("Atiyah and tangent algebroids: cocycle, symbol and wedge duals") {
    for (int d = -2; d <= 3; ++d) {
      CAPTURE(d);
      const AlgebroidOnP1 a = atiyah_algebroid(d);
      CHECK(a.rank() == 2);
      CHECK(a.twisted());
      CHECK(a.cocycle_holds());
      CHECK(a.symbol_intertwines());
      CHECK(a.g10() * a.g01() == LaurentMatrix::identity(2));
      CHECK(determinant(a.g01()) == Laurent::monomial(-2, -1));
      for (int k = 0; k <= 2; ++k) CHECK(cech_cohomology(wedge_dual(a, k), 4) == atiyah_dual(d, k));
    }
    const AlgebroidOnP1 t = AlgebroidOnP1::tangent();
    CHECK(t.cocycle_holds());
    CHECK(t.symbol_intertwines());
    CHECK(cech_cohomology(wedge_dual(t, 1), 4) == riemann_roch(-2));
    CHECK(cech_cohomology(wedge_dual(t, 0), 4) == riemann_roch(0));
  }

  TEST_CASE("exterior powers and determinants of Laurent matrices") {
    const LaurentMatrix m = LaurentMatrix::from_rows({{Laurent(1), Laurent::monomial(-1, 2)}, {Laurent(0), Laurent::monomial(-2, -1)}});
    CHECK(exterior_power(m, 2) == LaurentMatrix::from_rows({{determinant(m)}}));
    CHECK(exterior_power(m, 1) == m);
    CHECK(exterior_power(m, 0) == LaurentMatrix::identity(1));
    CHECK(m.inverted_variable()(0, 1) == Laurent::monomial(1, 2));
  }

  TEST_CASE("lifts glue, and bad scalar parts are refused") {
    const AlgebroidOnP1 a1 = atiyah_algebroid(1);
    CHECK_THROWS_AS(EquivariantSection::lift(a1, 0, 0, 1, Laurent()), GluingError);
    CHECK_NOTHROW(EquivariantSection::lift(a1, 0, 0, 1, Laurent::monomial(1, -1)));
    CHECK_THROWS_AS(EquivariantSection::lift(atiyah_algebroid(0), 0, 1, 0, Laurent::monomial(1)), GluingError);
    CHECK_NOTHROW(EquivariantSection::lift(atiyah_algebroid(0), 0, 1, 0, Laurent(3)));
    for (const auto& a : algebroids())
      for (const auto& c : vector_fields()) {
        const auto v = EquivariantSection::lift(a, c[0], c[1], c[2]);
        CHECK(a.g01() * v.chart0() == v.chart1());
        for (const auto& comp : v.chart1())
          if (!comp.is_zero()) CHECK(comp.max_exponent() <= 0);
        for (const auto& comp : v.chart0())
          if (!comp.is_zero()) CHECK(comp.min_exponent() >= 0);
      }
  }

  TEST_CASE("zero loci") {
    const AlgebroidOnP1 t = AlgebroidOnP1::tangent();
    auto points = [&](const AlgebroidOnP1& a, int c0, int c1, int c2) {
      std::vector<std::pair<std::string, int>> out;
      for (const auto& p : zero_locus(a, EquivariantSection::lift(a, c0, c1, c2)).points)
        out.emplace_back(p.describe(), p.multiplicity);
      std::sort(out.begin(), out.end());
      return out;
    };
    using P = std::vector<std::pair<std::string, int>>;
    CHECK(points(t, 0, 1, 0) == P{{"0/1", 1}, {"inf", 1}});
    CHECK(points(t, -1, 0, 1) == P{{"-1/1", 1}, {"1/1", 1}});
    CHECK(points(t, 1, 0, 0) == P{{"inf", 2}});
    CHECK(points(t, 0, 0, 1) == P{{"0/1", 2}});
    CHECK(points(t, 0, 2, -1) == P{{"0/1", 1}, {"2/1", 1}});
    CHECK_THROWS_AS(zero_locus(t, EquivariantSection::lift(t, 1, 0, 1)), IrrationalZeroError);
    CHECK(zero_locus(t, EquivariantSection::lift(t, 0, 0, 0)).whole_line);
    CHECK(assumption_check(t, EquivariantSection::lift(t, 0, 1, 0)));
    CHECK_FALSE(assumption_check(t, EquivariantSection::lift(t, 1, 0, 0)));
    // A nowhere-vanishing scalar part on the zeros of the vector part empties Y.
    const AlgebroidOnP1 a1 = atiyah_algebroid(1);
    CHECK(zero_locus(a1, EquivariantSection::lift(a1, -1, 0, 1)).points.empty());
    const AlgebroidOnP1 a0 = atiyah_algebroid(0);
    CHECK(points(a0, 0, 1, 0) == P{{"0/1", 1}, {"inf", 1}});
    CHECK(zero_locus(a0, EquivariantSection::lift(a0, 0, 1, 0, Laurent(2))).points.empty());
  }

  TEST_CASE("Čech-Koszul double complexes: identities and window stability") {
    for (const auto& a : algebroids())
      for (const auto& c : vector_fields()) {
        const auto v = EquivariantSection::lift(a, c[0], c[1], c[2]);
        const DoubleComplex dc = cech_koszul(a, v, 4);
        const auto& r = dc.range();
        CHECK(r.p0 == -static_cast<int>(a.rank()));
        for (int p = r.p0; p + 2 <= r.p1; ++p)
          for (int q = r.q0; q <= r.q1; ++q) CHECK((dc.horizontal(p + 1, q) * dc.horizontal(p, q)).is_zero());
        for (int p = r.p0; p < r.p1; ++p)
          CHECK((dc.horizontal(p, 1) * dc.vertical(p, 0) + dc.vertical(p + 1, 0) * dc.horizontal(p, 0)).is_zero());
        const auto h = equivariant_h(a, v, 4);
        CHECK(h == equivariant_h(a, v, 6));
        CHECK(nonzero(h) == nonzero(oracle::betti_by_ranks(total(cech_koszul(a, v, 5)))));
      }
  }

  TEST_CASE("V = 0: H equals the sum of the first page along q - k") {
    for (int d = -2; d <= 3; ++d) {
      CAPTURE(d);
      const AlgebroidOnP1 a = atiyah_algebroid(d);
      const FirstPage fp = first_page(a, 4);
      CHECK(fp.consistent);
      std::map<int, std::size_t> expected;
      for (int k = 0; k <= 2; ++k) {
        const CechDims h = atiyah_dual(d, k);
        if (h.h0) expected[-k] += h.h0;
        if (h.h1) expected[1 - k] += h.h1;
        CHECK(fp.grid.count({-k, 0}) == (h.h0 ? 1u : 0u));
      }
      CHECK(nonzero(equivariant_h(a, EquivariantSection::lift(a, 0, 0, 0), 4)) == expected);
    }
  }

  TEST_CASE("z d/dz: fixed-point prediction") {
    const AlgebroidOnP1 a0 = atiyah_algebroid(0);
    const auto v = EquivariantSection::lift(a0, 0, 1, 0);
    CHECK(nonzero(equivariant_h(a0, v, 4)) == std::map<int, std::size_t>{{-1, 2}, {0, 2}});
    const CorollaryReport cr = corollary_check(a0, v, 4);
    CHECK(cr.applicable);
    CHECK(cr.matches);
    const AlgebroidOnP1 t = AlgebroidOnP1::tangent();
    CHECK(nonzero(equivariant_h(t, EquivariantSection::lift(t, 0, 1, 0), 4)) == std::map<int, std::size_t>{{0, 2}});
    CHECK(corollary_check(t, EquivariantSection::lift(t, 0, 1, 0), 4).matches);
    CHECK(nonzero(equivariant_h(t, EquivariantSection::lift(t, -1, 0, 1), 4)) == std::map<int, std::size_t>{{0, 2}});
  }

  TEST_CASE("corollary holds whenever the assumption does") {
    for (const auto& a : algebroids())
      for (const auto& c : vector_fields()) {
        const auto v = EquivariantSection::lift(a, c[0], c[1], c[2]);
        if (!assumption_check(a, v)) continue;
        const CorollaryReport cr = corollary_check(a, v, 4);
        CAPTURE(a.name());
        CAPTURE(v.describe());
        CHECK(cr.applicable);
        CHECK(cr.matches);
      }
  }

  TEST_CASE("second page degeneration and Euler characteristic invariance") {
    for (const auto& a : algebroids()) {
      const long chi0 = chi(equivariant_h(a, EquivariantSection::lift(a, 0, 0, 0), 4));
      for (const auto& c : vector_fields()) {
        const auto v = EquivariantSection::lift(a, c[0], c[1], c[2]);
        const DegenerationReport dr = second_page_degeneration(a, v, 4);
        CAPTURE(a.name());
        CAPTURE(v.describe());
        CHECK(dr.ok());
        CHECK(dr.e2_is_limit);
        CHECK(dr.degeneration_page <= 2);
        CHECK(nonzero(dr.e_inf_totals) == nonzero(dr.h));
        CHECK(chi(equivariant_h(a, v, 4)) == chi0);
      }
    }
  }
}
