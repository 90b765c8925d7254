#pragma once

// Machine-readable reports: named verdicts with witnesses plus a JSON payload.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kss/specseq.hpp"

namespace kss {

using Json = nlohmann::ordered_json;

struct Verdict {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass
  bool operator==(const Verdict&) const = default;
};

struct Report {
  std::string example;
  std::string kind;
  std::string command;
  std::vector<Verdict> verdicts;
  Json results = Json::object();
  std::optional<Json> timings;

  bool ok() const;
  void add(std::string name, bool pass, std::string witness = "");
  bool operator==(const Report&) const = default;
};

Json to_json(const Report& r);
/// Throws std::invalid_argument on a malformed report.
Report report_from_json(const Json& j);

Json grid_json(const DimGrid& g);
Json page_grid_json(const SpectralSequenceRun& run);
Json degree_map_json(const std::map<int, std::size_t>& m);
Json matrix_entries_json(const Matrix& m);

}  // namespace kss
