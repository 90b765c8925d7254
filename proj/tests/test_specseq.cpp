#include <doctest.h>

#include "kss/specseq.hpp"
#include "oracles.hpp"

using namespace kss;

namespace {

// a in F_0 only, b = d a in F_2: the only differential is d_2.
FilteredComplex d2_example() {
  const CochainComplex c(0, {1, 1}, {Matrix::identity(1)});
  const Subspace all = Subspace::full(1), none(1);
  return FilteredComplex(c, 0, 2, {{all, none, none}, {all, all, all}});
}

}  // namespace

TEST_SUITE("specseq") {
  TEST_CASE("planted filtered complexes: limit, convergence and degeneration page") {
    for (std::uint32_t seed = 0; seed < 100; ++seed) {
      CAPTURE(seed);
      const auto planted = oracle::planted_filtered(seed);
      const FilteredComplex& f = planted.complex;
      CHECK(f.width() <= 4);
      CHECK(f.complex().total_dim() <= 12);
      CHECK(check_convergence(f));
      const SpectralSequenceRun r = run(f);
      CHECK(r.limit().dims() == planted.e_inf);
      CHECK(r.degeneration_page == planted.degeneration_page);
      const auto betti = oracle::betti_by_ranks(f.complex());
      for (const auto& [n, d] : planted.betti) CHECK(betti.at(n) == d);
      std::map<int, std::size_t> totals;
      for (const auto& [n, d] : betti)
        if (d) totals[n] = d;
      CHECK(r.limit().totals() == totals);
    }
  }

  TEST_CASE("pages: E_{r+1} is the cohomology of d_r") {
    for (std::uint32_t seed = 100; seed < 140; ++seed) {
      const auto planted = oracle::planted_filtered(seed);
      const SpectralSequenceRun r = run(planted.complex);
      for (std::size_t k = 0; k + 1 < r.pages.size(); ++k) {
        const auto ranks = differential_ranks(r.pages[k]);
        const int page = r.pages[k].page();
        for (const auto& [b, dim] : r.pages[k + 1].dims()) {
          std::size_t out = ranks.count(b) ? ranks.at(b) : 0;
          const Bidegree from{b.p - page, b.q + page - 1};
          std::size_t in = ranks.count(from) ? ranks.at(from) : 0;
          CHECK(dim == r.pages[k].dim(b) - out - in);
        }
        for (const auto& [b, dim] : r.pages[k].dims()) {
          std::size_t out = ranks.count(b) ? ranks.at(b) : 0;
          const Bidegree from{b.p - page, b.q + page - 1};
          std::size_t in = ranks.count(from) ? ranks.at(from) : 0;
          CHECK(r.pages[k + 1].dim(b) == dim - out - in);
        }
      }
    }
  }

  TEST_CASE("hand-built d_2") {
    const FilteredComplex f = d2_example();
    const SpectralSequenceRun r = run(f);
    REQUIRE(r.pages.size() >= 4);
    CHECK(r.pages[2].dims() == DimGrid{{{0, 0}, 1}, {{2, -1}, 1}});
    REQUIRE(r.pages[2].differential({0, 0}) != nullptr);
    CHECK(rank(*r.pages[2].differential({0, 0})) == 1);
    CHECK(r.pages[1].differentials_vanish());
    CHECK(r.pages[3].dims().empty());
    CHECK(r.degeneration_page == 3);
    CHECK(r.stable_page == 3);
    CHECK(check_convergence(f));
  }

  TEST_CASE("max_page truncates the run") {
    const SpectralSequenceRun r = run(d2_example(), 1);
    CHECK(r.pages.size() == 2);
    CHECK(r.limit().page() == 1);
  }

  TEST_CASE("trivial filtration degenerates at page 1 with E_1 = H") {
    const CochainComplex c(0, {2, 1}, {Matrix::from_rows({{1, 1}}, 2)});
    const SpectralSequenceRun r = run(trivial_filtration(c));
    CHECK(r.pages[1].dims() == DimGrid{{{0, 0}, 1}});
    CHECK(r.degeneration_page == 1);
  }

  TEST_CASE("row and column filtrations of a double complex both converge to H(Tot)") {
    const auto id = Matrix::identity(1);
    const DoubleComplex dc = DoubleComplex::from_commuting({0, 1, 0, 1}, {{1, 1}, {1, 1}},
                                                           {{id, Matrix(1, 1)}, {Matrix(0, 1), Matrix(0, 1)}},
                                                           {{id, Matrix(0, 1)}, {Matrix(1, 1), Matrix(0, 1)}});
    CHECK(check_convergence(column_filtration(dc)));
    CHECK(check_convergence(row_filtration(dc)));
    const auto h = oracle::betti_by_ranks(total(dc));
    std::map<int, std::size_t> totals;
    for (const auto& [n, d] : h)
      if (d) totals[n] = d;
    CHECK(run(column_filtration(dc)).limit().totals() == totals);
    CHECK(run(row_filtration(dc)).limit().totals() == totals);
  }
}
