#pragma once

// Example files and the batch front end.
//
// An example file is one JSON object with a "kind" tag:
//   lie_rinehart | lie_algebra | p1_bundle | raw_complex.
// Rationals are "n" or "n/d" strings. A polynomial is a list of
// [coefficient, exponent-list] pairs.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kss/cechp1.hpp"
#include "kss/hochserre.hpp"
#include "kss/koszul.hpp"
#include "kss/lierinehart.hpp"
#include "kss/report.hpp"

namespace kss {

/// Malformed example file; maps to exit code 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LieRinehartExample {
  std::string name;
  LieRinehartPresentation algebroid;
  SectionV section;
  int w_lo = 0;
  int w_hi = 0;
  std::optional<int> dim_y;
  int validate_up_to = 0;
};

struct LieAlgebraExample {
  std::string name;
  LieAlgebra g;
  LieIdeal h;
  GModule m;
};

struct P1Example {
  std::string name;
  AlgebroidOnP1 algebroid;
  EquivariantSection section;
  /// Further sections on the same algebroid, for invariance checks.
  std::vector<EquivariantSection> others;
  int window = 4;
};

struct RawExample {
  std::string name;
  CochainComplex complex;
  std::optional<FilteredComplex> filtration;
  std::optional<DoubleComplex> double_complex;
};

Json read_json_file(const std::string& path);
std::string example_kind(const Json& j);
LieRinehartExample parse_lie_rinehart(const Json& j);
LieAlgebraExample parse_lie_algebra(const Json& j);
P1Example parse_p1(const Json& j);
RawExample parse_raw(const Json& j);

Polynomial parse_polynomial(const Json& j, std::size_t variables);
Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols);

struct CliFlags {
  std::string filtration = "column";  // specseq
  std::optional<int> max_page;        // specseq
  std::optional<std::pair<int, int>> weights;  // koszul
  std::optional<int> window;          // p1
  bool timings = false;
};

struct CliResult {
  int exit_code = 0;
  Report report;
};

/// Loads `file`, runs `command`, writes a text table to `out`.
CliResult run(const std::string& command, const std::string& file, const CliFlags& flags, std::ostream& out);

/// "a..b" -> (a, b); throws SchemaError.
std::pair<int, int> parse_weight_range(const std::string& text);

}  // namespace kss
