#include "kss/specseq.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

namespace kss {

SpectralSequencePage::SpectralSequencePage(int r, std::map<Bidegree, Subquotient> entries,
                                           std::map<Bidegree, Matrix> differentials)
    : r_(r), entries_(std::move(entries)), d_(std::move(differentials)) {}

std::size_t SpectralSequencePage::dim(Bidegree b) const {
  const auto it = entries_.find(b);
  return it == entries_.end() ? 0 : it->second.dim();
}

const Subquotient* SpectralSequencePage::entry(Bidegree b) const {
  const auto it = entries_.find(b);
  return it == entries_.end() ? nullptr : &it->second;
}

const Matrix* SpectralSequencePage::differential(Bidegree b) const {
  const auto it = d_.find(b);
  return it == d_.end() ? nullptr : &it->second;
}

bool SpectralSequencePage::differentials_vanish() const {
  return std::all_of(d_.begin(), d_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

DimGrid SpectralSequencePage::dims() const {
  DimGrid g;
  for (const auto& [b, e] : entries_)
    if (e.dim() > 0) g[b] = e.dim();
  return g;
}

std::map<int, std::size_t> SpectralSequencePage::totals() const {
  std::map<int, std::size_t> t;
  for (const auto& [b, e] : entries_)
    if (e.dim() > 0) t[b.p + b.q] += e.dim();
  return t;
}

namespace {

// Z_r^{p,n} = F_p C^n ∩ d^{-1} F_{p+r} C^{n+1}, memoized per page.
class ZSpaces {
 public:
  explicit ZSpaces(const FilteredComplex& f) : f_(f) {}

  const Subspace& at(int p, int n, int r) {
    const auto key = std::make_tuple(p, n, std::max(r, 0));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Subspace fp = f_.level(n, p);
    if (r > 0) fp = preimage(f_.complex().differential(n), f_.level(n + 1, p + r), fp);
    return cache_.emplace(key, std::move(fp)).first->second;
  }

 private:
  const FilteredComplex& f_;
  std::map<std::tuple<int, int, int>, Subspace> cache_;
};

Subquotient page_entry(const FilteredComplex& f, ZSpaces& z, int p, int n, int r) {
  const Subspace& numerator = z.at(p, n, r);
  const Subspace& lower = z.at(p + 1, n, r - 1);
  const Subspace boundaries = image(f.complex().differential(n - 1), z.at(p - r + 1, n - 1, r - 1));
  return Subquotient(numerator, sum(lower, boundaries));
}

}  // namespace

SpectralSequencePage compute_page(const FilteredComplex& f, int r) {
  const CochainComplex& c = f.complex();
  std::map<Bidegree, Subquotient> entries;
  ZSpaces z(f);
  for (int n = c.lowest_degree(); n <= c.highest_degree(); ++n)
    for (int p = f.p_min(); p <= f.p_max(); ++p) entries.emplace(Bidegree{p, n - p}, page_entry(f, z, p, n, r));

  std::map<Bidegree, Matrix> diffs;
  for (const auto& [b, src] : entries) {
    const Bidegree target{b.p + r, b.q - r + 1};
    const auto it = entries.find(target);
    if (it == entries.end() || src.dim() == 0 || it->second.dim() == 0) continue;
    diffs.emplace(b, induced_map(c.differential(b.p + b.q), src, it->second));
  }
  return SpectralSequencePage(r, std::move(entries), std::move(diffs));
}

SpectralSequenceRun run(const FilteredComplex& f, std::optional<int> max_page) {
  SpectralSequenceRun out;
  int last = f.width() + 1;
  if (max_page) last = std::min(last, std::max(0, *max_page));
  for (int r = 0; r <= last; ++r) out.pages.push_back(compute_page(f, r));

  const DimGrid limit = out.pages.back().dims();
  out.stable_page = last;
  for (int r = 0; r <= last; ++r) {
    if (out.pages[static_cast<std::size_t>(r)].dims() == limit) {
      out.stable_page = r;
      break;
    }
  }
  out.degeneration_page = last;
  for (int r = last; r >= 0; --r) {
    if (!out.pages[static_cast<std::size_t>(r)].differentials_vanish()) break;
    out.degeneration_page = r;
  }
  return out;
}

bool check_convergence(const FilteredComplex& f) {
  const SpectralSequenceRun rr = run(f);
  const auto totals = rr.limit().totals();
  const Cohomology h = cohomology(f.complex());
  for (int n = h.lowest_degree; n <= h.highest_degree(); ++n) {
    const auto it = totals.find(n);
    const std::size_t e = it == totals.end() ? 0 : it->second;
    if (e != h.dim(n)) return false;
  }
  for (const auto& [n, t] : totals)
    if (t != h.dim(n)) return false;
  return true;
}

std::map<Bidegree, std::size_t> differential_ranks(const SpectralSequencePage& page) {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [b, m] : page.differentials()) {
    const std::size_t rk = rank(m);
    if (rk > 0) out[b] = rk;
  }
  return out;
}

}  // namespace kss
