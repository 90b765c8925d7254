// Command-line front end: kss <command> <example-file> [options].

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kss/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact spectral sequences for Lie-Rinehart and Lie algebra cohomology"};
  app.require_subcommand(1);

  kss::CliFlags flags;
  std::string file;
  std::string json_out;
  std::string weights;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "example file")->required();
    sub->add_option("--json", json_out, "write the machine-readable report to this file");
    sub->add_flag("--timings", flags.timings, "include timings in the machine-readable report");
  };
  common(app.add_subcommand("validate", "check the structural identities of an example"));
  common(app.add_subcommand("cohomology", "cohomology dimensions"));
  auto* specseq = app.add_subcommand("specseq", "pages of the spectral sequence");
  common(specseq);
  specseq->add_option("--filtration", flags.filtration, "row or column")->check(CLI::IsMember({"row", "column"}));
  specseq->add_option("--max-page", flags.max_page, "last page to compute");
  auto* koszul = app.add_subcommand("koszul", "Lie-Koszul slices, formality and vanishing");
  common(koszul);
  koszul->add_option("--weights", weights, "weight range a..b");
  common(app.add_subcommand("hs", "Hochschild-Serre comparison"));
  auto* p1 = app.add_subcommand("p1", "Čech-Koszul model on the projective line");
  common(p1);
  p1->add_option("--window", flags.window, "Laurent window D");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    if (!weights.empty()) flags.weights = kss::parse_weight_range(weights);
  } catch (const kss::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const kss::CliResult res = kss::run(command, file, flags, std::cout);
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "error: cannot write '" << json_out << "'\n";
      return 2;
    }
    out << kss::to_json(res.report).dump(2) << "\n";
  }
  return res.exit_code;
}
