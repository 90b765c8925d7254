#include "kss/lierinehart.hpp"

#include <algorithm>
#include <bit>

namespace kss {

namespace {

std::vector<std::size_t> indices_of(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1)
    if (m & 1U) out.push_back(i);
  return out;
}

Mask mask_of(const std::vector<std::size_t>& idx) {
  Mask m = 0;
  for (auto i : idx) m |= Mask{1} << i;
  return m;
}

// ω(e_{a_1}, ..., e_{a_p}) for arbitrary (possibly unsorted) generator indices.
Polynomial evaluate(const Form& omega, std::vector<std::size_t> args) {
  int sign = 1;
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j) {
      if (args[i] == args[j]) return {};
      if (args[i] > args[j]) sign = -sign;
    }
  std::sort(args.begin(), args.end());
  const auto it = omega.find(mask_of(args));
  if (it == omega.end()) return {};
  return sign > 0 ? it->second : -it->second;
}

std::string gen_name(const LieRinehartPresentation& l, std::size_t i) { return l.generators()[i].name; }

// [e_a, Σ_l f_l e_l] with the Leibniz rule.
std::vector<Polynomial> bracket_with(const LieRinehartPresentation& l, std::size_t a, const std::vector<Polynomial>& f) {
  const std::size_t m = l.rank();
  std::vector<Polynomial> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (f[k].is_zero()) continue;
    out[k] += l.apply_anchor(a, f[k]);
    for (std::size_t r = 0; r < m; ++r) out[r] += f[k] * l.bracket(a, k, r);
  }
  return out;
}

std::vector<Polynomial> bracket_of_generators(const LieRinehartPresentation& l, std::size_t i, std::size_t j) {
  std::vector<Polynomial> out(l.rank());
  for (std::size_t k = 0; k < l.rank(); ++k) out[k] = l.bracket(i, j, k);
  return out;
}

}  // namespace

// ----------------------------------------------------------- presentation

LieRinehartPresentation::LieRinehartPresentation(WeightedPolyRing ring, std::vector<Generator> generators, Anchor anchor,
                                                 Bracket bracket)
    : ring_(std::move(ring)), generators_(std::move(generators)), anchor_(std::move(anchor)), bracket_(std::move(bracket)) {
  const std::size_t m = generators_.size();
  const std::size_t n = ring_.variables();
  if (m > 16) throw InvalidStructureError("at most 16 generators are supported");
  if (anchor_.size() != m) throw InvalidStructureError("anchor needs one row per generator");
  for (const auto& row : anchor_)
    if (row.size() != n) throw InvalidStructureError("anchor row needs one entry per variable");
  if (bracket_.size() != m) throw InvalidStructureError("bracket needs m x m x m entries");
  for (const auto& plane : bracket_) {
    if (plane.size() != m) throw InvalidStructureError("bracket needs m x m x m entries");
    for (const auto& row : plane)
      if (row.size() != m) throw InvalidStructureError("bracket needs m x m x m entries");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int w = generators_[i].weight + ring_.weights()[j];
      if (!anchor_[i][j].is_homogeneous_of(ring_, w))
        throw InvalidStructureError("anchor coefficient rho(" + generators_[i].name + ")[" + ring_.names()[j] +
                                    "] is not homogeneous of weight " + std::to_string(w));
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const int w = generators_[i].weight + generators_[j].weight - generators_[k].weight;
        if (!bracket_[i][j][k].is_homogeneous_of(ring_, w))
          throw InvalidStructureError("bracket coefficient c^" + generators_[k].name + "_(" + generators_[i].name + "," +
                                      generators_[j].name + ") is not homogeneous of weight " + std::to_string(w));
      }
}

LieRinehartPresentation LieRinehartPresentation::tangent(const WeightedPolyRing& ring) {
  const std::size_t n = ring.variables();
  std::vector<Generator> gens;
  Anchor anchor(n, std::vector<Polynomial>(n));
  for (std::size_t j = 0; j < n; ++j) {
    gens.push_back({"d_" + ring.names()[j], -ring.weights()[j]});
    anchor[j][j] = Polynomial::constant(n, 1);
  }
  Bracket bracket(n, std::vector<std::vector<Polynomial>>(n, std::vector<Polynomial>(n)));
  return LieRinehartPresentation(ring, std::move(gens), std::move(anchor), std::move(bracket));
}

Polynomial LieRinehartPresentation::apply_anchor(std::size_t i, const Polynomial& f) const {
  Polynomial out;
  for (std::size_t j = 0; j < ring_.variables(); ++j) {
    if (anchor_[i][j].is_zero()) continue;
    out += anchor_[i][j] * f.derivative(j);
  }
  return out;
}

int LieRinehartPresentation::lowest_form_weight() const {
  int w = 0;
  for (const auto& g : generators_)
    if (g.weight > 0) w -= g.weight;
  return w;
}

SectionV::SectionV(const LieRinehartPresentation& l, std::vector<Polynomial> components, std::optional<int> weight)
    : components_(std::move(components)) {
  if (components_.size() != l.rank()) throw InvalidStructureError("section needs one component per generator");
  std::optional<int> found;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    const auto w = components_[i].homogeneous_weight(l.ring());
    if (!w) throw InvalidStructureError("section component " + std::to_string(i) + " is not homogeneous");
    const int total = *w + l.generator_weight(i);
    if (found && *found != total)
      throw InvalidStructureError("section components have inconsistent weights (" + std::to_string(*found) + " vs " +
                                  std::to_string(total) + ")");
    found = total;
  }
  if (found && weight && *weight != *found)
    throw InvalidStructureError("declared section weight does not match its components");
  weight_ = found ? *found : weight.value_or(0);
}

bool SectionV::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

SectionV euler_field(const LieRinehartPresentation& tangent) {
  const auto& ring = tangent.ring();
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < ring.variables(); ++j)
    comps.push_back(Polynomial::variable(ring.variables(), j).scaled(ring.weights()[j]));
  return SectionV(tangent, std::move(comps));
}

// ------------------------------------------------------------------ forms

std::vector<Mask> subsets_of_size(std::size_t m, std::size_t p) {
  std::vector<Mask> out;
  if (p > m) return out;
  std::vector<std::size_t> idx(p);
  for (std::size_t i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    out.push_back(mask_of(idx));
    std::size_t i = p;
    while (i > 0 && idx[i - 1] == m - p + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

FormSlice::FormSlice(const LieRinehartPresentation& l, int p, int w) : p_(p), w_(w) {
  if (p < 0 || p > static_cast<int>(l.rank())) return;
  for (Mask s : subsets_of_size(l.rank(), static_cast<std::size_t>(p))) {
    int shift = 0;
    for (auto i : indices_of(s)) shift += l.generator_weight(i);
    for (auto& mono : l.ring().monomials(w + shift)) {
      index_.emplace(std::make_pair(s, mono), basis_.size());
      basis_.push_back({s, std::move(mono)});
    }
  }
}

std::optional<std::size_t> FormSlice::index(Mask subset, const Exponent& monomial) const {
  const auto it = index_.find({subset, monomial});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Form basis_form(const FormSlice::Element& e) { return {{e.subset, Polynomial::monomial(e.monomial)}}; }

void add_to_form(Form& form, Mask subset, const Polynomial& f) {
  if (f.is_zero()) return;
  auto& slot = form[subset];
  slot += f;
  if (slot.is_zero()) form.erase(subset);
}

Vector form_coordinates(const Form& form, const FormSlice& slice) {
  Vector v = zero_vector(slice.size());
  for (const auto& [s, f] : form) {
    for (const auto& [e, c] : f.terms()) {
      const auto idx = slice.index(s, e);
      if (!idx)
        throw InvalidStructureError("form term leaves the slice (degree " + std::to_string(slice.degree()) +
                                    ", weight " + std::to_string(slice.weight()) + ")");
      v[*idx] += c;
    }
  }
  return v;
}

Form exterior_derivative(const LieRinehartPresentation& l, const Form& omega, std::size_t degree) {
  const std::size_t m = l.rank();
  Form out;
  for (Mask jm : subsets_of_size(m, degree + 1)) {
    const auto j = indices_of(jm);
    Polynomial value;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < j.size(); ++t)
        if (t != i) rest.push_back(j[t]);
      const Polynomial inner = evaluate(omega, rest);
      if (inner.is_zero()) continue;
      const Polynomial term = l.apply_anchor(j[i], inner);
      value += (i % 2 == 0) ? term : -term;
    }
    for (std::size_t a = 0; a < j.size(); ++a)
      for (std::size_t b = a + 1; b < j.size(); ++b) {
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < j.size(); ++t)
          if (t != a && t != b) rest.push_back(j[t]);
        Polynomial term;
        for (std::size_t k = 0; k < m; ++k) {
          const Polynomial& c = l.bracket(j[a], j[b], k);
          if (c.is_zero()) continue;
          std::vector<std::size_t> args{k};
          args.insert(args.end(), rest.begin(), rest.end());
          const Polynomial w = evaluate(omega, args);
          if (!w.is_zero()) term += c * w;
        }
        value += ((a + b) % 2 == 0) ? term : -term;
      }
    add_to_form(out, jm, value);
  }
  return out;
}

Form contract(const SectionV& v, const Form& omega) {
  Form out;
  for (const auto& [s, f] : omega) {
    const auto idx = indices_of(s);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const Polynomial& vi = v.component(idx[r]);
      if (vi.is_zero()) continue;
      const Polynomial term = f * vi;
      add_to_form(out, s & ~(Mask{1} << idx[r]), (r % 2 == 0) ? term : -term);
    }
  }
  return out;
}

Form wedge_one_form(const std::vector<Polynomial>& one_form, const Form& omega) {
  Form out;
  for (std::size_t j = 0; j < one_form.size(); ++j) {
    if (one_form[j].is_zero()) continue;
    for (const auto& [s, f] : omega) {
      if (s & (Mask{1} << j)) continue;
      const int below = std::popcount(s & ((Mask{1} << j) - 1));
      const Polynomial term = one_form[j] * f;
      add_to_form(out, s | (Mask{1} << j), (below % 2 == 0) ? term : -term);
    }
  }
  return out;
}

std::vector<Polynomial> differential_of_function(const LieRinehartPresentation& l, const Polynomial& f) {
  std::vector<Polynomial> out(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) out[i] = l.apply_anchor(i, f);
  return out;
}

// ------------------------------------------------------------- matrices

Matrix ce_d(const LieRinehartPresentation& l, int p, int w) {
  const FormSlice src(l, p, w);
  const FormSlice dst(l, p + 1, w);
  Matrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const Vector col =
        form_coordinates(exterior_derivative(l, basis_form(src.basis()[c]), static_cast<std::size_t>(p)), dst);
    for (std::size_t r = 0; r < dst.size(); ++r) m(r, c) = col[r];
  }
  return m;
}

Matrix contraction(const LieRinehartPresentation& l, const SectionV& v, int p, int w) {
  const FormSlice src(l, p, w);
  const FormSlice dst(l, p - 1, w + v.weight());
  Matrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const Vector col = form_coordinates(contract(v, basis_form(src.basis()[c])), dst);
    for (std::size_t r = 0; r < dst.size(); ++r) m(r, c) = col[r];
  }
  return m;
}

Matrix lie_derivative(const LieRinehartPresentation& l, const SectionV& v, int p, int w) {
  const int wv = v.weight();
  return ce_d(l, p - 1, w + wv) * contraction(l, v, p, w) + contraction(l, v, p + 1, w) * ce_d(l, p, w);
}

CochainComplex omega_slice_complex(const LieRinehartPresentation& l, int w) {
  const int m = static_cast<int>(l.rank());
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int p = 0; p <= m; ++p) dims.push_back(FormSlice(l, p, w).size());
  for (int p = 0; p < m; ++p) diffs.push_back(ce_d(l, p, w));
  return CochainComplex(0, std::move(dims), std::move(diffs));
}

// ------------------------------------------------------------- validate

ValidationReport validate(const LieRinehartPresentation& l, int w_max) {
  ValidationReport report;
  const std::size_t m = l.rank();
  const std::size_t n = l.ring().variables();
  const auto& ring = l.ring();

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        ++report.checks;
        const Polynomial s = l.bracket(i, j, k) + l.bracket(j, i, k);
        const bool ok = (i == j) ? l.bracket(i, i, k).is_zero() : s.is_zero();
        if (!ok)
          report.failures.push_back("antisymmetry fails: c^" + gen_name(l, k) + "_(" + gen_name(l, i) + "," +
                                    gen_name(l, j) + ") + c^" + gen_name(l, k) + "_(" + gen_name(l, j) + "," +
                                    gen_name(l, i) + ") = " + s.format(ring));
      }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t t = 0; t < n; ++t) {
        ++report.checks;
        Polynomial lhs;
        for (std::size_t k = 0; k < m; ++k) lhs += l.bracket(i, j, k) * l.anchor(k, t);
        const Polynomial rhs = l.apply_anchor(i, l.anchor(j, t)) - l.apply_anchor(j, l.anchor(i, t));
        if (!(lhs == rhs))
          report.failures.push_back("anchor is not a Lie morphism on (" + gen_name(l, i) + "," + gen_name(l, j) +
                                    "), component d_" + ring.names()[t] + ": rho([a,b]) = " + lhs.format(ring) +
                                    ", [rho a, rho b] = " + rhs.format(ring));
      }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        ++report.checks;
        std::vector<Polynomial> total(m);
        const std::size_t triple[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (const auto& t : triple) {
          const auto inner = bracket_of_generators(l, t[1], t[2]);
          const auto outer = bracket_with(l, t[0], inner);
          for (std::size_t r = 0; r < m; ++r) total[r] += outer[r];
        }
        for (std::size_t r = 0; r < m; ++r) {
          if (total[r].is_zero()) continue;
          report.failures.push_back("Jacobi fails on (" + gen_name(l, i) + "," + gen_name(l, j) + "," +
                                    gen_name(l, k) + "): component " + gen_name(l, r) + " = " + total[r].format(ring));
        }
      }

  for (int w = l.lowest_form_weight(); w <= w_max; ++w)
    for (int p = 0; p + 1 < static_cast<int>(m); ++p) {
      ++report.checks;
      const Matrix dd = ce_d(l, p + 1, w) * ce_d(l, p, w);
      if (!dd.is_zero())
        report.failures.push_back("d^2 != 0 on the form slice of degree " + std::to_string(p) + ", weight " +
                                  std::to_string(w));
    }
  return report;
}

}  // namespace kss
