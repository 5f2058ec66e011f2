// Configuration, orchestration and output emission for the command-line
// runner.  The pipeline runs
//   material model -> interface solver -> kernel table -> symbols ->
//   Riemann factorization -> field recovery (-> collocation oracle)
// and renders fields.csv, diagnostics.json and the optional symbols.csv and
// oracle.csv as strings, so identical configurations give identical bytes.
#pragma once

#include "pzc/collocation_oracle.hpp"
#include "pzc/material_model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pzc {

/// One half-plane: either a named preset (with optional scaling of the
/// piezoelectric moduli) or explicit constants in SI units.
struct MaterialSpec {
  std::string preset;  ///< empty when the constants are given explicitly
  double piezo_scale = 1.0;
  MaterialConstants<double> constants;
};

struct Numerics {
  SymbolGridConfig<double> symbols;
  InversionConfig<double> inversion;
  double riemann_tail_tol = 1e-6;  ///< decay of the density at the grid ends
  double strip_re_lo = 0.55, strip_re_hi = 1.95, strip_R = 200;
  int plemelj_samples = 50;
  bool oracle = false;
  OracleConfig<double> oracle_cfg;
  bool dump_symbols = false;
  C2Form c2_form = C2Form::Squared;
};

struct RunConfig {
  MaterialSpec material_1, material_2;
  LoadSpec<double> loads;
  Numerics numerics;
  std::string output_dir = "out";
};

/// A configuration problem located by a JSON-pointer-like field path.
struct Violation {
  std::string path;
  std::string message;
};

/// Parse a configuration document.  Structural problems (missing blocks,
/// wrong types, unknown presets) are returned as violations; `cfg` is only
/// meaningful when the list is empty.
std::vector<Violation> parse_config(const nlohmann::json& doc, RunConfig& cfg);

/// Invariants of a parsed configuration: material positivity, positive
/// tolerances and grid parameters, exactly two materials.  Empty iff valid.
std::vector<Violation> validate(const RunConfig& cfg);

/// Rendered outputs of one run.
struct RunArtifacts {
  int exit_code = 0;               ///< 0 ok, 2 invalid configuration, 3 module error
  std::string fields_csv;          ///< empty on failure
  std::string diagnostics_json;
  std::optional<std::string> symbols_csv, oracle_csv;
};

/// Validate and run; never throws for configuration or module errors.
RunArtifacts run(const RunConfig& cfg);

/// Artifacts for a configuration that failed to parse or validate.
RunArtifacts config_failure(const std::vector<Violation>& violations);

/// Write the artifacts into `dir` (created if missing).  Returns false on I/O
/// failure.
bool write_artifacts(const RunArtifacts& a, const std::string& dir);

/// Resolve a MaterialSpec to constants.
MaterialConstants<double> resolve_material(const MaterialSpec& spec);

}  // namespace pzc
