#include "kss/report.hpp"

#include <algorithm>

namespace kss {

bool Report::ok() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void Report::add(std::string name, bool pass, std::string witness) {
  verdicts.push_back({std::move(name), pass, pass ? std::string() : std::move(witness)});
}

Json to_json(const Report& r) {
  Json j;
  j["example"] = r.example;
  j["kind"] = r.kind;
  j["command"] = r.command;
  j["ok"] = r.ok();
  Json vs = Json::array();
  for (const auto& v : r.verdicts) {
    Json e;
    e["name"] = v.name;
    e["pass"] = v.pass;
    if (!v.pass) e["witness"] = v.witness;
    vs.push_back(std::move(e));
  }
  j["verdicts"] = std::move(vs);
  j["results"] = r.results;
  if (r.timings) j["timings"] = *r.timings;
  return j;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.example = j.at("example").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.command = j.at("command").get<std::string>();
    for (const auto& v : j.at("verdicts")) {
      Verdict vd{v.at("name").get<std::string>(), v.at("pass").get<bool>(), ""};
      if (v.contains("witness")) vd.witness = v.at("witness").get<std::string>();
      r.verdicts.push_back(std::move(vd));
    }
    r.results = j.at("results");
    if (j.contains("timings")) r.timings = j.at("timings");
    if (j.at("ok").get<bool>() != r.ok()) throw std::invalid_argument("report 'ok' disagrees with its verdicts");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

Json grid_json(const DimGrid& g) {
  Json out = Json::array();
  for (const auto& [b, d] : g) out.push_back({{"p", b.p}, {"q", b.q}, {"dim", d}});
  return out;
}

Json page_grid_json(const SpectralSequenceRun& run) {
  Json out = Json::array();
  for (const auto& page : run.pages)
    for (const auto& [b, d] : page.dims()) out.push_back({{"r", page.page()}, {"p", b.p}, {"q", b.q}, {"dim", d}});
  return out;
}

Json degree_map_json(const std::map<int, std::size_t>& m) {
  Json out = Json::array();
  for (const auto& [k, d] : m) out.push_back({{"degree", k}, {"dim", d}});
  return out;
}

Json matrix_entries_json(const Matrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) entries.push_back({i, j, to_string(m(i, j))});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

}  // namespace kss
