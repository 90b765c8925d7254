#include "kss/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace kss {

namespace {

// ------------------------------------------------------------ json helpers

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  if (size && j.size() != *size)
    throw SchemaError(where + ": expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

Rational as_rational(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": rationals are written as \"num/den\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw SchemaError(where + ": cannot parse rational '" + j.get<std::string>() + "'");
  }
}

Vector as_vector(const Json& j, std::size_t n, const std::string& where) {
  as_array(j, where, n);
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(as_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

std::string name_of(const Json& j) { return j.contains("name") ? as_string(j["name"], "name") : "unnamed"; }

std::string idx(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Polynomial polynomial_at(const Json& j, std::size_t variables, const std::string& where) {
  as_array(j, where);
  Polynomial p;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string w = idx(where, t);
    as_array(j[t], w, 2);
    const Rational c = as_rational(j[t][0], w + "[0]");
    as_array(j[t][1], w + "[1]", variables);
    Exponent e;
    for (std::size_t v = 0; v < variables; ++v) {
      const int x = as_int(j[t][1][v], w + "[1]");
      if (x < 0) throw SchemaError(w + ": negative exponent");
      e.push_back(x);
    }
    p.add_term(e, c);
  }
  return p;
}

Matrix matrix_at(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  as_array(j, where, rows);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Vector row = as_vector(j[r], cols, idx(where, r));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

Laurent laurent_at(const Json& j, const std::string& where) {
  as_array(j, where);
  Laurent l;
  for (std::size_t t = 0; t < j.size(); ++t) {
    as_array(j[t], idx(where, t), 2);
    l.add_term(as_int(j[t][1], idx(where, t) + "[1]"), as_rational(j[t][0], idx(where, t) + "[0]"));
  }
  return l;
}

EquivariantSection section_at(const AlgebroidOnP1& a, const Json& j, const std::string& where) {
  const Vector c = as_vector(field(j, "vector_field", where), 3, where + ".vector_field");
  std::optional<Laurent> scalar;
  if (j.contains("scalar_part")) scalar = laurent_at(j["scalar_part"], where + ".scalar_part");
  return EquivariantSection::lift(a, c[0], c[1], c[2], scalar);
}

// ------------------------------------------------------------ text helpers

std::string grid_text(const DimGrid& g) {
  if (g.empty()) return "  (all zero)\n";
  std::ostringstream s;
  for (const auto& [b, d] : g) s << "  (" << b.p << "," << b.q << ") " << d << "\n";
  return s.str();
}

std::string degrees_text(const std::map<int, std::size_t>& m) {
  if (m.empty()) return " none";
  std::ostringstream s;
  for (const auto& [k, d] : m) s << " H^" << k << "=" << d;
  return s.str();
}

std::map<int, std::size_t> cohomology_map(const CochainComplex& c) {
  const Cohomology h = cohomology(c);
  std::map<int, std::size_t> out;
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k) out[k] = h.dim(k);
  return out;
}

long euler_of(const std::map<int, std::size_t>& m) {
  long chi = 0;
  for (const auto& [k, d] : m) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return chi;
}

std::pair<int, int> weight_window(const LieRinehartExample& ex, const CliFlags& flags) {
  return flags.weights.value_or(std::make_pair(ex.w_lo, ex.w_hi));
}

// Lie-Koszul slice as a one-row double complex (single affine chart).
DoubleComplex slice_double_complex(const LieKoszulSlice& k) {
  const int lo = k.complex.lowest_degree();
  const int hi = k.complex.highest_degree();
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<Matrix>> horiz, vert;
  for (int p = lo; p <= hi; ++p) {
    dims.push_back({k.complex.dim(p)});
    horiz.push_back({k.complex.differential(p)});
    vert.push_back({Matrix(0, k.complex.dim(p))});
  }
  return DoubleComplex({lo, hi, 0, 0}, dims, horiz, vert);
}

// ---------------------------------------------------------------- commands

void cmd_validate_lr(const LieRinehartExample& ex, Report& rep, std::ostream& out) {
  const ValidationReport v = validate(ex.algebroid, ex.validate_up_to);
  std::string witness;
  for (const auto& f : v.failures) witness += (witness.empty() ? "" : "; ") + f;
  rep.add("identities", v.ok(), witness);
  rep.results["checks"] = v.checks;
  rep.results["failures"] = v.failures;
  if (v.ok())
    out << "all identities hold (" << v.checks << " checks, weights <= " << ex.validate_up_to << ")\n";
  else
    for (const auto& f : v.failures) out << "FAIL " << f << "\n";
}

void cmd_koszul(const LieRinehartExample& ex, const CliFlags& flags, Report& rep, std::ostream& out) {
  const auto [lo, hi] = weight_window(ex, flags);
  const auto& l = ex.algebroid;
  const auto& v = ex.section;
  rep.results["weights"] = {lo, hi};

  Json slices = Json::array();
  bool euler_ok = true, degen_ok = true;
  std::string euler_w, degen_w;
  out << "Lie-Koszul slices (degrees -" << l.rank() << "..0)\n";
  for (int w = lo; w <= hi; ++w) {
    const LieKoszulSlice k = lie_koszul(l, v, w);
    const auto h = cohomology_map(k.complex);
    long chi_terms = 0;
    for (int p = k.complex.lowest_degree(); p <= 0; ++p)
      chi_terms += (p % 2 == 0 ? 1 : -1) * static_cast<long>(k.complex.dim(p));
    if (euler_of(h) != chi_terms) {
      euler_ok = false;
      euler_w = "weight " + std::to_string(w);
    }
    const SpectralSequenceRun rr = run(row_filtration(slice_double_complex(k)));
    if (rr.degeneration_page > 2) {
      degen_ok = false;
      degen_w = "weight " + std::to_string(w) + " degenerates at page " + std::to_string(rr.degeneration_page);
    }
    Json s;
    s["weight"] = w;
    std::vector<std::size_t> dims;
    for (int p = k.complex.lowest_degree(); p <= 0; ++p) dims.push_back(k.complex.dim(p));
    s["term_dims"] = dims;
    s["h"] = degree_map_json(h);
    s["row_degeneration_page"] = rr.degeneration_page;
    slices.push_back(std::move(s));
    out << "  w=" << w << degrees_text(h) << "\n";
  }
  rep.results["slices"] = std::move(slices);
  rep.add("euler_characteristic", euler_ok, euler_w);
  rep.add("row_filtration_degenerates_by_page_2", degen_ok, degen_w);

  const ZeroDimVerdict zd = zero_dimensional_verdict(l, v, std::max(hi, 2 * l.ring().max_weight()));
  const ZeroLocusModel y(l, v);
  const char* zd_text = zd == ZeroDimVerdict::kZeroDimensional     ? "zero-dimensional"
                        : zd == ZeroDimVerdict::kPositiveDimensional ? "positive-dimensional"
                                                                     : "inconclusive";
  rep.results["zero_locus"] = zd_text;
  rep.results["unit_ideal"] = y.is_unit_ideal();
  out << "zero locus: " << zd_text << (y.is_unit_ideal() ? " (empty)" : "") << "\n";

  const FormalityReport fr = formality_check(l, v, lo, hi);
  Json fj = Json::array();
  for (const auto& s : fr.slices)
    fj.push_back({{"weight", s.weight},
                  {"chain_map", s.chain_map},
                  {"quasi_isomorphism", s.quasi_isomorphism},
                  {"source_h", s.source_h},
                  {"target_h", s.target_h}});
  rep.results["formality"] = std::move(fj);
  rep.add("formality", fr.ok(), fr.first_failure.value_or(""));
  out << "formality (restriction to the zero locus): " << (fr.ok() ? "quasi-isomorphism on every slice" : *fr.first_failure)
      << "\n";

  std::optional<int> dim_y = ex.dim_y;
  if (!dim_y && zd == ZeroDimVerdict::kZeroDimensional) dim_y = y.is_unit_ideal() ? -1 : 0;
  if (dim_y) {
    const VanishingReport vr = vanishing_check(l, v, *dim_y, lo, hi);
    std::string witness;
    for (const auto& s : vr.violations) witness += (witness.empty() ? "" : "; ") + s;
    rep.add("vanishing", vr.ok(), witness);
    rep.results["dim_y"] = *dim_y;
    out << "vanishing above dim Y = " << *dim_y << ": " << (vr.ok() ? "holds" : witness) << "\n";
  } else {
    rep.results["dim_y"] = nullptr;
    out << "vanishing: dim Y not certified and not asserted, skipped\n";
  }
}

void cmd_hs(const LieAlgebraExample& ex, Report& rep, std::ostream& out) {
  const HsReport r = hs_report(ex.g, ex.h, ex.m);
  rep.results["e2"] = grid_json(r.e2);
  rep.results["expected_e2"] = grid_json(r.expected);
  rep.results["e_inf_totals"] = degree_map_json(r.e_inf_totals);
  rep.results["betti"] = r.betti;
  std::ostringstream w1, w2;
  w1 << "E_2 vs expected differ";
  w2 << "E_inf totals differ from Betti numbers";
  rep.add("e2_matches_expected", r.e2_matches, w1.str());
  rep.add("e_inf_totals_match_betti", r.totals_match, w2.str());
  out << "E_2 page:\n" << grid_text(r.e2) << "expected H^p(g/h, H^q(h, M)):\n" << grid_text(r.expected);
  out << "E_inf totals:";
  for (const auto& [n, d] : r.e_inf_totals) out << " " << n << ":" << d;
  out << "\nBetti:";
  for (auto b : r.betti) out << " " << b;
  out << "\n";
}

void cmd_p1(const P1Example& ex, const CliFlags& flags, Report& rep, std::ostream& out) {
  const int window = flags.window.value_or(ex.window);
  const auto& a = ex.algebroid;
  rep.results["algebroid"] = a.name();
  rep.results["section"] = ex.section.describe();
  rep.results["window"] = window;
  out << a.name() << ", V = " << ex.section.describe() << ", window " << window << "\n";

  rep.add("cocycle", a.cocycle_holds(), "g10 g01 != I");
  rep.add("symbol", a.symbol_intertwines(), "symbol does not intertwine the transitions");

  const FirstPage fp = first_page(a, window);
  rep.results["first_page"] = grid_json(fp.grid);
  rep.add("first_page_matches_column_page_1", fp.consistent, "Čech grid and spectral sequence page 1 differ");
  out << "I_1 = H^q(Λ^{-p} D*):\n" << grid_text(fp.grid);

  const auto h = equivariant_h(a, ex.section, window);
  rep.results["h_v"] = degree_map_json(h);
  out << "H_V:" << degrees_text(h) << "\n";

  const ZeroLocus y = zero_locus(a, ex.section);
  Json yl = Json::array();
  for (const auto& pt : y.points) yl.push_back({{"point", pt.describe()}, {"multiplicity", pt.multiplicity}});
  rep.results["zero_locus"] = y.whole_line ? Json("P1") : yl;
  const bool assumption = assumption_check(a, ex.section);
  rep.results["assumption"] = assumption;
  out << "zero locus: ";
  if (y.whole_line) out << "all of P1";
  if (!y.whole_line && y.points.empty()) out << "empty";
  for (const auto& pt : y.points) out << pt.describe() << "(mult " << pt.multiplicity << ") ";
  out << "\nassumption (simple zeros): " << (assumption ? "holds" : "fails") << "\n";

  const CorollaryReport cr = corollary_check(a, ex.section, window);
  rep.results["corollary"] = {{"applicable", cr.applicable},
                              {"predicted", degree_map_json(cr.predicted)},
                              {"observed", degree_map_json(cr.observed)}};
  if (cr.applicable) {
    rep.add("corollary", cr.matches,
            "predicted" + degrees_text(cr.predicted) + " observed" + degrees_text(cr.observed));
    out << "fixed-point prediction:" << degrees_text(cr.predicted) << (cr.matches ? "  (matches)" : "  (MISMATCH)")
        << "\n";
  } else {
    out << "fixed-point prediction: not applicable\n";
  }

  const DegenerationReport dr = second_page_degeneration(a, ex.section, window);
  rep.results["row_filtration"] = {{"degeneration_page", dr.degeneration_page},
                                   {"stable_page", dr.stable_page},
                                   {"e_inf_totals", degree_map_json(dr.e_inf_totals)}};
  Json d1 = Json::array();
  for (const auto& [b, r] : dr.i_d1_ranks) d1.push_back({{"p", b.p}, {"q", b.q}, {"rank", r}});
  rep.results["observed_i_d1_ranks"] = std::move(d1);
  rep.add("second_page_degeneration", dr.ok(),
          "degeneration page " + std::to_string(dr.degeneration_page) + ", E_2 = E_inf: " +
              (dr.e2_is_limit ? "yes" : "no"));
  out << "II degenerates at page " << dr.degeneration_page << "; observed d_1 ranks on I:";
  if (dr.i_d1_ranks.empty()) out << " none";
  for (const auto& [b, r] : dr.i_d1_ranks) out << " (" << b.p << "," << b.q << ")=" << r;
  out << "\n";

  const long chi0 = euler_of(equivariant_h(a, EquivariantSection::lift(a, 0, 0, 0), window));
  bool chi_ok = euler_of(h) == chi0;
  std::string chi_w;
  if (!chi_ok) chi_w = "main section";
  for (std::size_t i = 0; i < ex.others.size(); ++i)
    if (euler_of(equivariant_h(a, ex.others[i], window)) != chi0) {
      chi_ok = false;
      chi_w = "others[" + std::to_string(i) + "]";
    }
  rep.results["euler_characteristic"] = chi0;
  rep.add("euler_characteristic_invariant", chi_ok, chi_w);
  out << "Euler characteristic " << chi0 << " (V = 0 value) " << (chi_ok ? "shared by every section" : "VIOLATED")
      << "\n";
}

void cmd_specseq_filtered(const FilteredComplex& f, const CliFlags& flags, Report& rep, Json& block, std::ostream& out,
                          const std::string& label) {
  const SpectralSequenceRun rr = run(f, flags.max_page);
  block["pages"] = page_grid_json(rr);
  block["stable_page"] = rr.stable_page;
  block["degeneration_page"] = rr.degeneration_page;
  block["e_inf_totals"] = degree_map_json(rr.limit().totals());
  const bool conv = check_convergence(f);
  rep.add("convergence" + (label.empty() ? "" : " " + label), conv, "E_inf totals differ from H " + label);
  out << label << (label.empty() ? "" : ": ") << "pages 0.." << rr.pages.size() - 1 << ", stable at "
      << rr.stable_page << ", degenerates at " << rr.degeneration_page << "\n";
  out << "  limit page:\n" << grid_text(rr.limit().dims());
}

FilteredComplex choose_filtration(const DoubleComplex& dc, const CliFlags& flags) {
  if (flags.filtration == "row") return row_filtration(dc);
  if (flags.filtration == "column") return column_filtration(dc);
  throw SchemaError("--filtration must be 'row' or 'column'");
}

int exit_code_for(const Report& r) { return r.ok() ? 0 : 1; }

}  // namespace

// ---------------------------------------------------------------- parsing

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::string example_kind(const Json& j) { return as_string(field(j, "kind", "example"), "kind"); }

Polynomial parse_polynomial(const Json& j, std::size_t variables) { return polynomial_at(j, variables, "polynomial"); }

Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols) { return matrix_at(j, rows, cols, "matrix"); }

LieRinehartExample parse_lie_rinehart(const Json& j) {
  const auto& vars = as_array(field(j, "variables", "example"), "variables");
  const auto& wts = as_array(field(j, "weights", "example"), "weights", vars.size());
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    names.push_back(as_string(vars[i], idx("variables", i)));
    weights.push_back(as_int(wts[i], idx("weights", i)));
    if (weights.back() < 1) throw SchemaError(idx("weights", i) + ": variable weights must be >= 1");
  }
  const WeightedPolyRing ring(weights, names);
  const std::size_t n = ring.variables();

  std::optional<LieRinehartPresentation> l;
  const std::string kind = j.contains("algebroid") ? as_string(j["algebroid"], "algebroid") : "explicit";
  if (kind == "tangent") {
    l = LieRinehartPresentation::tangent(ring);
  } else if (kind == "explicit") {
    const auto& gens = as_array(field(j, "generators", "example"), "generators");
    std::vector<Generator> g;
    for (std::size_t i = 0; i < gens.size(); ++i)
      g.push_back({as_string(field(gens[i], "name", idx("generators", i)), idx("generators", i) + ".name"),
                   as_int(field(gens[i], "weight", idx("generators", i)), idx("generators", i) + ".weight")});
    const std::size_t m = g.size();
    const auto& anc = as_array(field(j, "anchor", "example"), "anchor", m);
    LieRinehartPresentation::Anchor anchor(m);
    for (std::size_t i = 0; i < m; ++i) {
      as_array(anc[i], idx("anchor", i), n);
      for (std::size_t v = 0; v < n; ++v) anchor[i].push_back(polynomial_at(anc[i][v], n, idx(idx("anchor", i), v)));
    }
    LieRinehartPresentation::Bracket bracket(m, std::vector<std::vector<Polynomial>>(m, std::vector<Polynomial>(m)));
    if (j.contains("bracket")) {
      const auto& br = as_array(j["bracket"], "bracket");
      for (std::size_t t = 0; t < br.size(); ++t) {
        const std::string w = idx("bracket", t);
        const int a = as_int(field(br[t], "i", w), w + ".i");
        const int b = as_int(field(br[t], "j", w), w + ".j");
        if (a < 0 || b < 0 || a >= b || static_cast<std::size_t>(b) >= m)
          throw SchemaError(w + ": need 0 <= i < j < rank");
        const auto& cs = as_array(field(br[t], "coefficients", w), w + ".coefficients", m);
        for (std::size_t k = 0; k < m; ++k) {
          const Polynomial c = polynomial_at(cs[k], n, idx(w + ".coefficients", k));
          bracket[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][k] = c;
          bracket[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)][k] = -c;
        }
      }
    }
    l.emplace(ring, std::move(g), std::move(anchor), std::move(bracket));
  } else {
    throw SchemaError("algebroid: expected 'tangent' or 'explicit'");
  }

  std::optional<int> sw;
  if (j.contains("section_weight")) sw = as_int(j["section_weight"], "section_weight");
  const Json& sec = field(j, "section", "example");
  std::optional<SectionV> v;
  if (sec.is_string()) {
    if (sec.get<std::string>() != "euler" || kind != "tangent")
      throw SchemaError("section: the only named section is 'euler' on the tangent algebroid");
    v = euler_field(*l);
  } else {
    as_array(sec, "section", l->rank());
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < l->rank(); ++i) comps.push_back(polynomial_at(sec[i], n, idx("section", i)));
    v.emplace(*l, std::move(comps), sw);
  }
  const auto& range = as_array(field(j, "weight_range", "example"), "weight_range", 2);
  const int lo = as_int(range[0], "weight_range[0]");
  const int hi = as_int(range[1], "weight_range[1]");
  if (hi < lo) throw SchemaError("weight_range: empty");
  std::optional<int> dim_y;
  if (j.contains("dim_y")) dim_y = as_int(j["dim_y"], "dim_y");
  const int vmax = j.contains("validate_up_to") ? as_int(j["validate_up_to"], "validate_up_to") : hi;
  return LieRinehartExample{name_of(j), *l, *v, lo, hi, dim_y, vmax};
}

LieAlgebraExample parse_lie_algebra(const Json& j) {
  const int n = as_int(field(j, "dim", "example"), "dim");
  if (n < 0 || n > 16) throw SchemaError("dim: expected 0..16");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<Vector>> c(un, std::vector<Vector>(un, zero_vector(un)));
  if (j.contains("brackets")) {
    const auto& br = as_array(j["brackets"], "brackets");
    for (std::size_t t = 0; t < br.size(); ++t) {
      const std::string w = idx("brackets", t);
      const int a = as_int(field(br[t], "i", w), w + ".i");
      const int b = as_int(field(br[t], "j", w), w + ".j");
      if (a < 0 || b < 0 || a >= b || b >= n) throw SchemaError(w + ": need 0 <= i < j < dim");
      const Vector val = as_vector(field(br[t], "value", w), un, w + ".value");
      c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = val;
      Vector neg = val;
      for (auto& x : neg) x = -x;
      c[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = neg;
    }
  }
  LieAlgebra g(std::move(c));
  std::vector<Vector> span;
  if (j.contains("ideal")) {
    const auto& id = as_array(j["ideal"], "ideal");
    for (std::size_t t = 0; t < id.size(); ++t) span.push_back(as_vector(id[t], un, idx("ideal", t)));
  }
  LieIdeal h(g, Subspace::span(un, span));
  std::optional<GModule> m;
  if (j.contains("module")) {
    const Json& mj = j["module"];
    const int dm = as_int(field(mj, "dim", "module"), "module.dim");
    if (dm < 0) throw SchemaError("module.dim: negative");
    const auto udm = static_cast<std::size_t>(dm);
    const auto& acts = as_array(field(mj, "actions", "module"), "module.actions", un);
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < un; ++i) mats.push_back(matrix_at(acts[i], udm, udm, idx("module.actions", i)));
    m.emplace(g, udm, std::move(mats));
  } else {
    m = GModule::trivial(g);
  }
  return LieAlgebraExample{name_of(j), g, h, *m};
}

P1Example parse_p1(const Json& j) {
  const std::string alg = as_string(field(j, "algebroid", "example"), "algebroid");
  std::optional<AlgebroidOnP1> a;
  if (alg == "atiyah")
    a = atiyah_algebroid(as_int(field(j, "degree", "example"), "degree"));
  else if (alg == "tangent")
    a = AlgebroidOnP1::tangent();
  else
    throw SchemaError("algebroid: expected 'atiyah' or 'tangent'");
  const EquivariantSection v = section_at(*a, j, "example");
  std::vector<EquivariantSection> others;
  if (j.contains("others")) {
    const auto& os = as_array(j["others"], "others");
    for (std::size_t i = 0; i < os.size(); ++i) others.push_back(section_at(*a, os[i], idx("others", i)));
  }
  const int window = j.contains("window") ? as_int(j["window"], "window") : 4;
  return P1Example{name_of(j), *a, v, others, window};
}

RawExample parse_raw(const Json& j) {
  RawExample ex{name_of(j), CochainComplex(), std::nullopt, std::nullopt};
  if (j.contains("double_complex")) {
    const Json& d = j["double_complex"];
    const auto& r = as_array(field(d, "range", "double_complex"), "double_complex.range", 4);
    const DoubleComplex::Range range{as_int(r[0], "range[0]"), as_int(r[1], "range[1]"), as_int(r[2], "range[2]"),
                                     as_int(r[3], "range[3]")};
    if (range.p1 < range.p0 || range.q1 < range.q0) throw SchemaError("double_complex.range: empty");
    const auto np = static_cast<std::size_t>(range.p1 - range.p0 + 1);
    const auto nq = static_cast<std::size_t>(range.q1 - range.q0 + 1);
    const auto& dj = as_array(field(d, "dims", "double_complex"), "double_complex.dims", np);
    std::vector<std::vector<std::size_t>> dims(np);
    for (std::size_t p = 0; p < np; ++p) {
      as_array(dj[p], idx("dims", p), nq);
      for (std::size_t q = 0; q < nq; ++q) {
        const int x = as_int(dj[p][q], idx(idx("dims", p), q));
        if (x < 0) throw SchemaError("double_complex.dims: negative");
        dims[p].push_back(static_cast<std::size_t>(x));
      }
    }
    auto maps = [&](const std::string& key, bool horizontal) {
      const auto& mj = as_array(field(d, key, "double_complex"), "double_complex." + key, np);
      std::vector<std::vector<Matrix>> out(np);
      for (std::size_t p = 0; p < np; ++p) {
        as_array(mj[p], idx(key, p), nq);
        for (std::size_t q = 0; q < nq; ++q) {
          const bool inside = horizontal ? p + 1 < np : q + 1 < nq;
          if (!inside) {
            out[p].emplace_back(0, dims[p][q]);
            continue;
          }
          const std::size_t rows = horizontal ? dims[p + 1][q] : dims[p][q + 1];
          out[p].push_back(matrix_at(mj[p][q], rows, dims[p][q], idx(idx(key, p), q)));
        }
      }
      return out;
    };
    const bool commuting = d.contains("commuting") && d["commuting"].get<bool>();
    auto h = maps("horizontal", true);
    auto v = maps("vertical", false);
    ex.double_complex = commuting ? DoubleComplex::from_commuting(range, dims, h, v) : DoubleComplex(range, dims, h, v);
    ex.complex = total(*ex.double_complex);
    return ex;
  }
  const int lowest = as_int(field(j, "lowest_degree", "example"), "lowest_degree");
  const auto& dj = as_array(field(j, "dims", "example"), "dims");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) {
    const int x = as_int(dj[i], idx("dims", i));
    if (x < 0) throw SchemaError(idx("dims", i) + ": negative");
    dims.push_back(static_cast<std::size_t>(x));
  }
  if (dims.empty()) throw SchemaError("dims: empty complex");
  const auto& diffs = as_array(field(j, "differentials", "example"), "differentials", dims.size() - 1);
  std::vector<Matrix> ds;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i)
    ds.push_back(matrix_at(diffs[i], dims[i + 1], dims[i], idx("differentials", i)));
  ex.complex = CochainComplex(lowest, dims, ds);
  if (j.contains("filtration")) {
    const Json& f = j["filtration"];
    const int p0 = as_int(field(f, "p_min", "filtration"), "filtration.p_min");
    const int p1 = as_int(field(f, "p_max", "filtration"), "filtration.p_max");
    if (p1 < p0) throw SchemaError("filtration: empty range");
    const auto& lv = as_array(field(f, "levels", "filtration"), "filtration.levels", dims.size());
    std::vector<std::vector<Subspace>> levels(dims.size());
    for (std::size_t n = 0; n < dims.size(); ++n) {
      as_array(lv[n], idx("levels", n), static_cast<std::size_t>(p1 - p0 + 1));
      for (std::size_t p = 0; p < lv[n].size(); ++p) {
        const auto& vecs = as_array(lv[n][p], idx(idx("levels", n), p));
        std::vector<Vector> span;
        for (std::size_t t = 0; t < vecs.size(); ++t)
          span.push_back(as_vector(vecs[t], dims[n], idx(idx(idx("levels", n), p), t)));
        levels[n].push_back(Subspace::span(dims[n], span));
      }
    }
    ex.filtration.emplace(ex.complex, p0, p1, std::move(levels));
  }
  return ex;
}

std::pair<int, int> parse_weight_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw SchemaError("weights: expected a..b");
  try {
    std::size_t used = 0;
    const int a = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw SchemaError("weights: expected a..b");
    const std::string rest = text.substr(dots + 2);
    const int b = std::stoi(rest, &used);
    if (used != rest.size() || b < a) throw SchemaError("weights: expected a..b with a <= b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw SchemaError("weights: expected a..b");
  }
}

// -------------------------------------------------------------------- run

CliResult run(const std::string& command, const std::string& file, const CliFlags& flags, std::ostream& out) {
  CliResult res;
  Report& rep = res.report;
  rep.command = command;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Json j = read_json_file(file);
    rep.kind = example_kind(j);
    rep.example = name_of(j);
    auto unsupported = [&] { throw SchemaError("command '" + command + "' does not apply to kind '" + rep.kind + "'"); };

    if (rep.kind == "lie_rinehart") {
      const LieRinehartExample ex = parse_lie_rinehart(j);
      if (command == "validate") {
        cmd_validate_lr(ex, rep, out);
      } else if (command == "koszul") {
        cmd_koszul(ex, flags, rep, out);
      } else if (command == "cohomology") {
        const auto [lo, hi] = weight_window(ex, flags);
        Json sl = Json::array();
        for (int w = lo; w <= hi; ++w) {
          const auto h = cohomology_map(lie_koszul(ex.algebroid, ex.section, w).complex);
          const auto omega = cohomology_map(omega_slice_complex(ex.algebroid, w));
          sl.push_back({{"weight", w}, {"lie_koszul_h", degree_map_json(h)}, {"omega_h", degree_map_json(omega)}});
          out << "w=" << w << " Lie-Koszul" << degrees_text(h) << " | algebroid de Rham" << degrees_text(omega) << "\n";
        }
        rep.results["slices"] = std::move(sl);
      } else if (command == "specseq") {
        const auto [lo, hi] = weight_window(ex, flags);
        Json sl = Json::array();
        for (int w = lo; w <= hi; ++w) {
          const DoubleComplex dc = slice_double_complex(lie_koszul(ex.algebroid, ex.section, w));
          Json block;
          block["weight"] = w;
          cmd_specseq_filtered(choose_filtration(dc, flags), flags, rep, block, out, "w=" + std::to_string(w));
          sl.push_back(std::move(block));
        }
        rep.results["filtration"] = flags.filtration;
        rep.results["slices"] = std::move(sl);
      } else {
        unsupported();
      }
    } else if (rep.kind == "lie_algebra") {
      const LieAlgebraExample ex = parse_lie_algebra(j);
      if (command == "validate") {
        rep.add("structure_constants", true);
        rep.add("module", true);
        rep.add("ideal", true);
        out << "all identities hold (antisymmetry, Jacobi, module, ideal)\n";
      } else if (command == "cohomology") {
        const auto h = cohomology_map(ce_complex(ex.g, ex.m));
        rep.results["betti"] = degree_map_json(h);
        out << "H(g, M):" << degrees_text(h) << "\n";
      } else if (command == "hs") {
        cmd_hs(ex, rep, out);
      } else if (command == "specseq") {
        Json block;
        cmd_specseq_filtered(hs_filtered(ex.g, ex.h, ex.m), flags, rep, block, out, "Hochschild-Serre");
        rep.results["filtration"] = "hochschild_serre";
        rep.results["run"] = std::move(block);
      } else {
        unsupported();
      }
    } else if (rep.kind == "p1_bundle") {
      const P1Example ex = parse_p1(j);
      const int window = flags.window.value_or(ex.window);
      if (command == "p1") {
        cmd_p1(ex, flags, rep, out);
      } else if (command == "validate") {
        const auto& a = ex.algebroid;
        rep.add("cocycle", a.cocycle_holds(), "g10 g01 != I");
        rep.add("symbol", a.symbol_intertwines(), "symbol does not intertwine the transitions");
        for (int p = 0; p <= static_cast<int>(a.rank()); ++p) cech_cohomology(wedge_dual(a, p), window);
        rep.add("window_stabilization", true);
        (void)cech_koszul(a, ex.section, window);
        rep.add("double_complex_identities", true);
        out << a.name() << ": cocycle " << (a.cocycle_holds() ? "ok" : "FAILS") << ", symbol "
            << (a.symbol_intertwines() ? "ok" : "FAILS") << ", section glues, windows stable, d^2 = 0\n";
      } else if (command == "cohomology") {
        const auto h = equivariant_h(ex.algebroid, ex.section, window);
        rep.results["h_v"] = degree_map_json(h);
        out << "H_V:" << degrees_text(h) << "\n";
      } else if (command == "specseq") {
        Json block;
        cmd_specseq_filtered(choose_filtration(cech_koszul(ex.algebroid, ex.section, window), flags), flags, rep,
                             block, out, flags.filtration + " filtration");
        rep.results["filtration"] = flags.filtration;
        rep.results["run"] = std::move(block);
      } else {
        unsupported();
      }
    } else if (rep.kind == "raw_complex") {
      const RawExample ex = parse_raw(j);
      if (command == "validate") {
        rep.add("complex", true);
        out << "complex valid (d^2 = 0" << (ex.filtration ? ", filtration decreasing and d-stable" : "") << ")\n";
      } else if (command == "cohomology") {
        const auto h = cohomology_map(ex.complex);
        std::vector<std::size_t> dims;
        Json ds = Json::array();
        for (int k = ex.complex.lowest_degree(); k <= ex.complex.highest_degree(); ++k) {
          dims.push_back(ex.complex.dim(k));
          if (k < ex.complex.highest_degree()) ds.push_back(matrix_entries_json(ex.complex.differential(k)));
        }
        rep.results["lowest_degree"] = ex.complex.lowest_degree();
        rep.results["dims"] = dims;
        rep.results["differentials"] = std::move(ds);
        rep.results["h"] = degree_map_json(h);
        out << "H:" << degrees_text(h) << "\n";
      } else if (command == "specseq") {
        Json block;
        if (ex.double_complex) {
          cmd_specseq_filtered(choose_filtration(*ex.double_complex, flags), flags, rep, block, out,
                               flags.filtration + " filtration");
          rep.results["filtration"] = flags.filtration;
        } else {
          const FilteredComplex f = ex.filtration ? *ex.filtration : trivial_filtration(ex.complex);
          cmd_specseq_filtered(f, flags, rep, block, out, "");
          rep.results["filtration"] = ex.filtration ? "file" : "trivial";
        }
        rep.results["run"] = std::move(block);
      } else {
        unsupported();
      }
    } else {
      throw SchemaError("kind: unknown '" + rep.kind + "'");
    }
    res.exit_code = exit_code_for(rep);
  } catch (const SchemaError& e) {
    rep.add("input", false, e.what());
    res.exit_code = 2;
  } catch (const nlohmann::json::exception& e) {
    rep.add("input", false, e.what());
    res.exit_code = 2;
  } catch (const WindowTooSmall& e) {
    rep.add("window", false, e.what());
    res.exit_code = 2;
  } catch (const std::exception& e) {
    // Structure, gluing and complex-validity failures are mathematical verdicts.
    rep.add("structure", false, e.what());
    res.exit_code = 1;
  }
  if (res.exit_code != 0)
    for (const auto& v : rep.verdicts)
      if (!v.pass) out << "FAIL " << v.name << ": " << v.witness << "\n";
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << "elapsed: " << ms << " ms\n";
  if (flags.timings) rep.timings = Json{{"total_ms", ms}};
  return res;
}

}  // namespace kss
