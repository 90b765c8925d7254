#include <doctest.h>

#include "kss/complexes.hpp"
#include "oracles.hpp"

using namespace kss;

namespace {

Matrix mat(std::vector<std::vector<int>> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

// Koszul complex of (x, y) on the weight-w slice, built from monomials.
CochainComplex koszul_xy(int w) {
  auto mons = [](int d) {
    std::vector<std::pair<int, int>> out;
    if (d < 0) return out;
    for (int a = d; a >= 0; --a) out.emplace_back(a, d - a);
    return out;
  };
  const auto m2 = mons(w - 2), m1 = mons(w - 1), m0 = mons(w);
  auto index = [](const std::vector<std::pair<int, int>>& v, std::pair<int, int> e) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == e) return i;
    return v.size();
  };
  // K^{-2} = f e1e2, K^{-1} = f e1 ⊕ f e2, K^0 = f; d(e1e2) = x e2 - y e1, d e1 = x, d e2 = y.
  Matrix d2(2 * m1.size(), m2.size());
  for (std::size_t c = 0; c < m2.size(); ++c) {
    const auto [a, b] = m2[c];
    d2(index(m1, {a, b + 1}), c) = -1;
    d2(m1.size() + index(m1, {a + 1, b}), c) = 1;
  }
  Matrix d1(m0.size(), 2 * m1.size());
  for (std::size_t c = 0; c < m1.size(); ++c) {
    const auto [a, b] = m1[c];
    d1(index(m0, {a + 1, b}), c) = 1;
    d1(index(m0, {a, b + 1}), m1.size() + c) = 1;
  }
  return CochainComplex(-2, {m2.size(), 2 * m1.size(), m0.size()}, {d2, d1});
}

}  // namespace

TEST_SUITE("complexes") {
  TEST_CASE("d^2 = 0 is enforced") {
    CHECK_THROWS_AS(CochainComplex(0, {1, 1, 1}, {mat({{1}}, 1), mat({{1}}, 1)}), InvalidComplexError);
    CHECK_THROWS_AS(CochainComplex(0, {2, 1}, {mat({{1}}, 1)}), InvalidComplexError);
  }

  TEST_CASE("Koszul complex of (x, y) matches rank counts; only the constants survive") {
    for (int w = 0; w <= 6; ++w) {
      const CochainComplex k = koszul_xy(w);
      const Cohomology h = cohomology(k);
      const auto ref = oracle::betti_by_ranks(k);
      for (int p = -2; p <= 0; ++p) CHECK(h.dim(p) == ref.at(p));
      CHECK(h.dim(0) == (w == 0 ? 1u : 0u));
      CHECK(h.dim(-1) == 0);
      CHECK(h.dim(-2) == 0);
      CHECK(euler_characteristic(k) == euler_characteristic(h));
    }
  }

  TEST_CASE("cohomology representatives are cycles and independent modulo boundaries") {
    const CochainComplex k = koszul_xy(0);
    const Cohomology h = cohomology(k);
    CHECK(h.at(0).representatives().size() == 1);
  }

  TEST_CASE("cone strip with an isomorphism is acyclic") {
    const DoubleComplex dc({0, 1, 0, 0}, {{2}, {2}}, {{Matrix::identity(2)}, {Matrix(0, 2)}},
                           {{Matrix(0, 2)}, {Matrix(0, 2)}});
    const Cohomology h = cohomology(total(dc));
    for (int k = 0; k <= 1; ++k) CHECK(h.dim(k) == 0);
  }

  TEST_CASE("from_commuting produces an anticommuting double complex") {
    // Square of identities: K^{0,0} -> K^{1,0}, K^{0,1} -> K^{1,1}, both vertical identities.
    const auto id = Matrix::identity(1);
    const DoubleComplex dc = DoubleComplex::from_commuting({0, 1, 0, 1}, {{1, 1}, {1, 1}}, {{id, id}, {Matrix(0, 1), Matrix(0, 1)}},
                                                           {{id, Matrix(0, 1)}, {id, Matrix(0, 1)}});
    CHECK(dc.vertical(1, 0)(0, 0) == -1);
    CHECK((dc.horizontal(0, 1) * dc.vertical(0, 0) + dc.vertical(1, 0) * dc.horizontal(0, 0)).is_zero());
    const auto h = cohomology(total(dc));
    for (int k = 0; k <= 2; ++k) CHECK(h.dim(k) == 0);
    CHECK_THROWS_AS(DoubleComplex({0, 1, 0, 1}, {{1, 1}, {1, 1}}, {{id, id}, {Matrix(0, 1), Matrix(0, 1)}},
                                  {{id, Matrix(0, 1)}, {id, Matrix(0, 1)}}),
                    InvalidComplexError);
  }

  TEST_CASE("quasi-isomorphisms") {
    // Two-term acyclic complex onto zero.
    const CochainComplex acyc(0, {1, 1}, {Matrix::identity(1)});
    const CochainComplex zero(0, {0, 0}, {Matrix(0, 0)});
    CHECK(is_quasi_isomorphism(ChainMap(acyc, zero, {Matrix(0, 1), Matrix(0, 1)})));
    CHECK(is_quasi_isomorphism(identity_map(koszul_xy(3))));
    // The zero map on a complex with cohomology is not one.
    const CochainComplex point(0, {1}, {});
    CHECK_FALSE(is_quasi_isomorphism(ChainMap(point, point, {Matrix(1, 1)})));
    // Not a chain map.
    CHECK_THROWS(ChainMap(CochainComplex(0, {1, 1}, {Matrix(1, 1)}), acyc, {Matrix::identity(1), Matrix(1, 1)}));
  }

  TEST_CASE("induced maps on cohomology compose") {
    const CochainComplex c(0, {2, 1}, {mat({{1, -1}}, 2)});
    const ChainMap f(c, c, {mat({{2, 1}, {1, 2}}, 2), Matrix::identity(1)});
    const Cohomology h = cohomology(c);
    const ChainMap ff = compose(f, f);
    CHECK(induced_on_cohomology(ff, h, h, 0) == induced_on_cohomology(f, h, h, 0) * induced_on_cohomology(f, h, h, 0));
    CHECK(induced_on_cohomology(f, h, h, 0)(0, 0) == 3);
  }

  TEST_CASE("total complex degree layout and transpose") {
    const DoubleComplex dc({0, 1, 0, 1}, {{1, 2}, {3, 4}},
                           {{Matrix(3, 1), Matrix(4, 2)}, {Matrix(0, 3), Matrix(0, 4)}},
                           {{Matrix(2, 1), Matrix(0, 2)}, {Matrix(4, 3), Matrix(0, 4)}});
    const CochainComplex t = total(dc);
    CHECK(t.dim(0) == 1);
    CHECK(t.dim(1) == 5);
    CHECK(t.dim(2) == 4);
    CHECK(dc.offset(0, 1) == 0);
    CHECK(dc.offset(1, 0) == 2);
    const DoubleComplex tr = transpose(dc);
    CHECK(tr.dim(1, 0) == 2);
    CHECK(oracle::betti_by_ranks(total(tr)) == oracle::betti_by_ranks(t));
  }

  TEST_CASE("filtrations must be decreasing and d-stable") {
    const CochainComplex c(0, {1, 1}, {Matrix::identity(1)});
    const Subspace all = Subspace::full(1), none(1);
    CHECK_THROWS_AS(FilteredComplex(c, 0, 1, {{none, all}, {all, all}}), InvalidComplexError);
    CHECK_THROWS_AS(FilteredComplex(c, 0, 1, {{all, all}, {all, none}}), InvalidComplexError);
    CHECK_NOTHROW(FilteredComplex(c, 0, 1, {{all, none}, {all, all}}));
  }
}
