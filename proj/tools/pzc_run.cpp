// Command-line runner: pzc_run <config.json> [--oracle] [--dump-symbols]
//                              [--out DIR] [--tol X] [--seed N]
#include "pzc/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Inclusion / interfacial crack contact solver"};
  std::string config_path, out_dir;
  bool oracle = false, dump_symbols = false;
  double tol = 0;
  long seed = 0;
  app.add_option("config", config_path, "JSON configuration file")->required();
  app.add_flag("--oracle", oracle, "also run the collocation oracle and compare");
  app.add_flag("--dump-symbols", dump_symbols, "write symbols.csv");
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--tol", tol, "tail tolerance |G0(+-S) - 1| (overrides numerics.tail_tol)");
  app.add_option("--seed", seed, "accepted for compatibility; the solver uses no randomness");
  CLI11_PARSE(app, argc, argv);

  pzc::RunConfig cfg;
  std::vector<pzc::Violation> violations;
  std::ifstream in(config_path);
  nlohmann::json doc;
  if (!in) {
    violations.push_back({"", "cannot open configuration file '" + config_path + "'"});
  } else {
    try {
      in >> doc;
      violations = pzc::parse_config(doc, cfg);
    } catch (const nlohmann::json::parse_error& e) {
      violations.push_back({"", std::string("malformed JSON: ") + e.what()});
    }
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (oracle) cfg.numerics.oracle = true;
  if (dump_symbols) cfg.numerics.dump_symbols = true;
  if (app.count("--tol")) cfg.numerics.symbols.tail_tol = tol;

  const pzc::RunArtifacts result =
      violations.empty() ? pzc::run(cfg) : pzc::config_failure(violations);
  if (!pzc::write_artifacts(result, cfg.output_dir)) {
    std::cerr << "error: cannot write outputs to '" << cfg.output_dir << "'\n";
    return 1;
  }
  if (result.exit_code != 0) std::cerr << result.diagnostics_json;
  return result.exit_code;
}
