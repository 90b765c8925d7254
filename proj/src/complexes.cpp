#include "kss/complexes.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace kss {

namespace {

std::string deg(int k) { return std::to_string(k); }

Subquotient zero_group(std::size_t ambient) { return Subquotient(Subspace(ambient), Subspace(ambient)); }

Subquotient group_or_zero(const Cohomology& h, int k, std::size_t ambient) {
  if (k < h.lowest_degree || k > h.highest_degree()) return zero_group(ambient);
  return h.at(k);
}

}  // namespace

// ---------------------------------------------------------- CochainComplex

CochainComplex::CochainComplex(int lowest_degree, std::vector<std::size_t> dims, std::vector<Matrix> differentials)
    : lowest_(lowest_degree), dims_(std::move(dims)), d_(std::move(differentials)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (d_.size() != expected)
    throw InvalidComplexError("complex needs " + std::to_string(expected) + " differentials, got " +
                              std::to_string(d_.size()));
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i].rows() != dims_[i + 1] || d_[i].cols() != dims_[i])
      throw InvalidComplexError("differential in degree " + deg(lowest_ + static_cast<int>(i)) + " has wrong shape");
  }
  for (std::size_t i = 0; i + 1 < d_.size(); ++i) {
    if (!(d_[i + 1] * d_[i]).is_zero())
      throw InvalidComplexError("d^2 != 0 starting in degree " + deg(lowest_ + static_cast<int>(i)));
  }
}

std::size_t CochainComplex::dim(int k) const {
  if (k < lowest_ || k > highest_degree()) return 0;
  return dims_[static_cast<std::size_t>(k - lowest_)];
}

Matrix CochainComplex::differential(int k) const {
  if (k >= lowest_ && k < highest_degree()) return d_[static_cast<std::size_t>(k - lowest_)];
  return Matrix(dim(k + 1), dim(k));
}

std::size_t CochainComplex::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

std::size_t Cohomology::dim(int k) const {
  if (k < lowest_degree || k > highest_degree()) return 0;
  return at(k).dim();
}

Cohomology cohomology(const CochainComplex& c) {
  Cohomology h;
  h.lowest_degree = c.lowest_degree();
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k) {
    h.groups.emplace_back(kernel_basis(c.differential(k)), image_basis(c.differential(k - 1)));
  }
  return h;
}

int euler_characteristic(const CochainComplex& c) {
  int chi = 0;
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<int>(c.dim(k));
  return chi;
}

int euler_characteristic(const Cohomology& h) {
  int chi = 0;
  for (int k = h.lowest_degree; k <= h.highest_degree(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<int>(h.dim(k));
  return chi;
}

// --------------------------------------------------------------- ChainMap

ChainMap::ChainMap(CochainComplex source, CochainComplex target, std::vector<Matrix> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
  const int lo = source_.lowest_degree();
  const int hi = source_.highest_degree();
  if (static_cast<int>(maps_.size()) != std::max(0, hi - lo + 1))
    throw InvalidComplexError("chain map needs one matrix per source degree");
  for (int k = lo; k <= hi; ++k) {
    const Matrix& f = maps_[static_cast<std::size_t>(k - lo)];
    if (f.rows() != target_.dim(k) || f.cols() != source_.dim(k))
      throw InvalidComplexError("chain map component in degree " + deg(k) + " has wrong shape");
  }
  const int from = std::min(lo, target_.lowest_degree()) - 1;
  const int to = std::max(hi, target_.highest_degree());
  for (int k = from; k <= to; ++k) {
    if (!(at(k + 1) * source_.differential(k) == target_.differential(k) * at(k)))
      throw InvalidComplexError("chain map does not commute with d in degree " + deg(k));
  }
}

Matrix ChainMap::at(int k) const {
  if (k >= source_.lowest_degree() && k <= source_.highest_degree())
    return maps_[static_cast<std::size_t>(k - source_.lowest_degree())];
  return Matrix(target_.dim(k), source_.dim(k));
}

ChainMap identity_map(const CochainComplex& c) {
  std::vector<Matrix> maps;
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k) maps.push_back(Matrix::identity(c.dim(k)));
  return ChainMap(c, c, std::move(maps));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  std::vector<Matrix> maps;
  for (int k = f.source().lowest_degree(); k <= f.source().highest_degree(); ++k) {
    if (g.source().dim(k) != f.target().dim(k)) throw InvalidComplexError("chain maps are not composable");
    maps.push_back(g.at(k) * f.at(k));
  }
  return ChainMap(f.source(), g.target(), std::move(maps));
}

Matrix induced_on_cohomology(const ChainMap& f, const Cohomology& src, const Cohomology& dst, int k) {
  return induced_map(f.at(k), group_or_zero(src, k, f.source().dim(k)), group_or_zero(dst, k, f.target().dim(k)));
}

bool is_quasi_isomorphism(const ChainMap& f) {
  const Cohomology hs = cohomology(f.source());
  const Cohomology ht = cohomology(f.target());
  const int from = std::min(f.source().lowest_degree(), f.target().lowest_degree());
  const int to = std::max(f.source().highest_degree(), f.target().highest_degree());
  for (int k = from; k <= to; ++k) {
    if (hs.dim(k) != ht.dim(k)) return false;
    if (rank(induced_on_cohomology(f, hs, ht, k)) != hs.dim(k)) return false;
  }
  return true;
}

// ---------------------------------------------------------- DoubleComplex

bool DoubleComplex::inside(int p, int q) const {
  return p >= range_.p0 && p <= range_.p1 && q >= range_.q0 && q <= range_.q1;
}

std::size_t DoubleComplex::dim(int p, int q) const {
  if (!inside(p, q)) return 0;
  return dims_[static_cast<std::size_t>(p - range_.p0)][static_cast<std::size_t>(q - range_.q0)];
}

Matrix DoubleComplex::horizontal(int p, int q) const {
  if (inside(p, q) && inside(p + 1, q))
    return h_[static_cast<std::size_t>(p - range_.p0)][static_cast<std::size_t>(q - range_.q0)];
  return Matrix(dim(p + 1, q), dim(p, q));
}

Matrix DoubleComplex::vertical(int p, int q) const {
  if (inside(p, q) && inside(p, q + 1))
    return v_[static_cast<std::size_t>(p - range_.p0)][static_cast<std::size_t>(q - range_.q0)];
  return Matrix(dim(p, q + 1), dim(p, q));
}

DoubleComplex::DoubleComplex(Range range, std::vector<std::vector<std::size_t>> dims,
                             std::vector<std::vector<Matrix>> horizontal, std::vector<std::vector<Matrix>> vertical)
    : range_(range), dims_(std::move(dims)), h_(std::move(horizontal)), v_(std::move(vertical)) {
  if (range_.p1 < range_.p0 || range_.q1 < range_.q0) throw InvalidComplexError("empty double complex range");
  const auto np = static_cast<std::size_t>(range_.p1 - range_.p0 + 1);
  const auto nq = static_cast<std::size_t>(range_.q1 - range_.q0 + 1);
  auto grid_ok = [&](const auto& grid) {
    return grid.size() == np && std::all_of(grid.begin(), grid.end(), [&](const auto& col) { return col.size() == nq; });
  };
  if (!grid_ok(dims_) || !grid_ok(h_) || !grid_ok(v_)) throw InvalidComplexError("double complex grid has wrong shape");
  for (int p = range_.p0; p <= range_.p1; ++p) {
    for (int q = range_.q0; q <= range_.q1; ++q) {
      const auto ip = static_cast<std::size_t>(p - range_.p0);
      const auto iq = static_cast<std::size_t>(q - range_.q0);
      const std::string cell = "(" + deg(p) + "," + deg(q) + ")";
      if (inside(p + 1, q)) {
        if (h_[ip][iq].rows() != dim(p + 1, q) || h_[ip][iq].cols() != dim(p, q))
          throw InvalidComplexError("horizontal map at " + cell + " has wrong shape");
      } else {
        h_[ip][iq] = Matrix(0, dim(p, q));
      }
      if (inside(p, q + 1)) {
        if (v_[ip][iq].rows() != dim(p, q + 1) || v_[ip][iq].cols() != dim(p, q))
          throw InvalidComplexError("vertical map at " + cell + " has wrong shape");
      } else {
        v_[ip][iq] = Matrix(0, dim(p, q));
      }
    }
  }
  for (int p = range_.p0; p <= range_.p1; ++p) {
    for (int q = range_.q0; q <= range_.q1; ++q) {
      const std::string cell = "(" + deg(p) + "," + deg(q) + ")";
      if (!(this->horizontal(p + 1, q) * this->horizontal(p, q)).is_zero())
        throw InvalidComplexError("d_h^2 != 0 at " + cell);
      if (!(this->vertical(p, q + 1) * this->vertical(p, q)).is_zero())
        throw InvalidComplexError("d_v^2 != 0 at " + cell);
      if (!(this->horizontal(p, q + 1) * this->vertical(p, q) + this->vertical(p + 1, q) * this->horizontal(p, q))
               .is_zero())
        throw InvalidComplexError("d_h and d_v do not anticommute at " + cell);
    }
  }
}

DoubleComplex DoubleComplex::from_commuting(Range range, std::vector<std::vector<std::size_t>> dims,
                                            std::vector<std::vector<Matrix>> horizontal,
                                            std::vector<std::vector<Matrix>> vertical) {
  for (std::size_t ip = 0; ip < vertical.size(); ++ip) {
    const int p = range.p0 + static_cast<int>(ip);
    if (p % 2 != 0)
      for (auto& m : vertical[ip]) m = -m;
  }
  return DoubleComplex(range, std::move(dims), std::move(horizontal), std::move(vertical));
}

std::size_t DoubleComplex::offset(int p, int q) const {
  const int n = p + q;
  std::size_t off = 0;
  for (int pp = range_.p0; pp < p; ++pp) off += dim(pp, n - pp);
  return off;
}

CochainComplex total(const DoubleComplex& d) {
  const auto& r = d.range();
  const int lo = r.p0 + r.q0;
  const int hi = r.p1 + r.q1;
  auto total_dim = [&](int n) {
    std::size_t s = 0;
    for (int p = r.p0; p <= r.p1; ++p) s += d.dim(p, n - p);
    return s;
  };
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(total_dim(n));
  std::vector<Matrix> diffs;
  for (int n = lo; n < hi; ++n) {
    Matrix m(total_dim(n + 1), total_dim(n));
    for (int p = r.p0; p <= r.p1; ++p) {
      const int q = n - p;
      if (d.dim(p, q) == 0) continue;
      const std::size_t col0 = d.offset(p, q);
      auto place = [&](const Matrix& block, int tp, int tq) {
        if (block.rows() == 0) return;
        const std::size_t row0 = d.offset(tp, tq);
        for (std::size_t i = 0; i < block.rows(); ++i)
          for (std::size_t j = 0; j < block.cols(); ++j) m(row0 + i, col0 + j) += block(i, j);
      };
      place(d.horizontal(p, q), p + 1, q);
      place(d.vertical(p, q), p, q + 1);
    }
    diffs.push_back(std::move(m));
  }
  return CochainComplex(lo, std::move(dims), std::move(diffs));
}

DoubleComplex transpose(const DoubleComplex& d) {
  const auto& r = d.range();
  DoubleComplex::Range t{r.q0, r.q1, r.p0, r.p1};
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<Matrix>> h, v;
  for (int q = r.q0; q <= r.q1; ++q) {
    dims.emplace_back();
    h.emplace_back();
    v.emplace_back();
    for (int p = r.p0; p <= r.p1; ++p) {
      dims.back().push_back(d.dim(p, q));
      h.back().push_back(d.vertical(p, q));
      v.back().push_back(d.horizontal(p, q));
    }
  }
  return DoubleComplex(t, std::move(dims), std::move(h), std::move(v));
}

// -------------------------------------------------------- FilteredComplex

FilteredComplex::FilteredComplex(CochainComplex complex, int p_min, int p_max, std::vector<std::vector<Subspace>> levels)
    : complex_(std::move(complex)), p_min_(p_min), p_max_(p_max), levels_(std::move(levels)) {
  if (p_max_ < p_min_) throw InvalidComplexError("filtration range is empty");
  const int lo = complex_.lowest_degree();
  const int hi = complex_.highest_degree();
  if (static_cast<int>(levels_.size()) != std::max(0, hi - lo + 1))
    throw InvalidComplexError("filtration needs one level list per degree");
  const auto width = static_cast<std::size_t>(p_max_ - p_min_ + 1);
  for (int n = lo; n <= hi; ++n) {
    const auto& lv = levels_[static_cast<std::size_t>(n - lo)];
    if (lv.size() != width) throw InvalidComplexError("filtration of degree " + deg(n) + " has wrong number of levels");
    for (const auto& s : lv)
      if (s.ambient_dim() != complex_.dim(n)) throw InvalidComplexError("filtration level in wrong ambient space");
    if (lv.front().dim() != complex_.dim(n))
      throw InvalidComplexError("F_pmin must be the whole space in degree " + deg(n));
    for (std::size_t i = 0; i + 1 < lv.size(); ++i)
      if (!lv[i].contains(lv[i + 1]))
        throw InvalidComplexError("filtration not decreasing in degree " + deg(n));
  }
  for (int n = lo; n <= hi; ++n) {
    const Matrix d = complex_.differential(n);
    for (int p = p_min_; p <= p_max_; ++p) {
      if (!level(n + 1, p).contains(image(d, level(n, p))))
        throw InvalidComplexError("d does not preserve F_" + deg(p) + " in degree " + deg(n));
    }
  }
}

Subspace FilteredComplex::level(int n, int p) const {
  const std::size_t ambient = complex_.dim(n);
  if (n < complex_.lowest_degree() || n > complex_.highest_degree()) return Subspace(0);
  if (p <= p_min_) return Subspace::full(ambient);
  if (p > p_max_) return Subspace(ambient);
  return levels_[static_cast<std::size_t>(n - complex_.lowest_degree())][static_cast<std::size_t>(p - p_min_)];
}

FilteredComplex trivial_filtration(const CochainComplex& c) {
  std::vector<std::vector<Subspace>> levels;
  for (int n = c.lowest_degree(); n <= c.highest_degree(); ++n) levels.push_back({Subspace::full(c.dim(n))});
  return FilteredComplex(c, 0, 0, std::move(levels));
}

namespace {

// Filtration by cells of the double complex; selector(p, q) gives the filtration index of a cell.
template <typename Index>
FilteredComplex cell_filtration(const DoubleComplex& d, int p_min, int p_max, Index index) {
  CochainComplex t = total(d);
  const auto& r = d.range();
  std::vector<std::vector<Subspace>> levels;
  for (int n = t.lowest_degree(); n <= t.highest_degree(); ++n) {
    std::vector<Subspace> lv;
    for (int s = p_min; s <= p_max; ++s) {
      std::vector<Vector> gens;
      for (int p = r.p0; p <= r.p1; ++p) {
        const int q = n - p;
        if (index(p, q) < s) continue;
        const std::size_t off = d.offset(p, q);
        for (std::size_t i = 0; i < d.dim(p, q); ++i) gens.push_back(unit_vector(t.dim(n), off + i));
      }
      lv.push_back(Subspace::span(t.dim(n), gens));
    }
    levels.push_back(std::move(lv));
  }
  return FilteredComplex(std::move(t), p_min, p_max, std::move(levels));
}

}  // namespace

FilteredComplex column_filtration(const DoubleComplex& d) {
  return cell_filtration(d, d.range().p0, d.range().p1, [](int p, int) { return p; });
}

FilteredComplex row_filtration(const DoubleComplex& d) {
  return cell_filtration(d, d.range().q0, d.range().q1, [](int, int q) { return q; });
}

}  // namespace kss
