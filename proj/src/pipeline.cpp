#include "pzc/pipeline.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

namespace pzc {

using nlohmann::json;

namespace {

constexpr const char* kMaterialKeys[] = {"s11", "s12", "s13", "s33", "s44",
                                         "d13", "d15", "d33", "eps11", "eps33"};

double* material_field(MaterialConstants<double>& m, const std::string& key) {
  static const std::map<std::string, double MaterialConstants<double>::*> fields = {
      {"s11", &MaterialConstants<double>::s11},     {"s12", &MaterialConstants<double>::s12},
      {"s13", &MaterialConstants<double>::s13},     {"s33", &MaterialConstants<double>::s33},
      {"s44", &MaterialConstants<double>::s44},     {"d13", &MaterialConstants<double>::d13},
      {"d15", &MaterialConstants<double>::d15},     {"d33", &MaterialConstants<double>::d33},
      {"eps11", &MaterialConstants<double>::eps11}, {"eps33", &MaterialConstants<double>::eps33}};
  const auto it = fields.find(key);
  return it == fields.end() ? nullptr : &(m.*(it->second));
}

// Reads optional keys of one JSON object, recording type errors by path.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<Violation>& out)
      : obj_(obj), path_(std::move(path)), out_(out) {}

  void number(const char* key, double& target) {
    if (!obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) return bad(key, "must be a number");
    target = v.get<double>();
  }
  void integer(const char* key, int& target) {
    if (!obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) return bad(key, "must be an integer");
    target = v.get<int>();
  }
  void boolean(const char* key, bool& target) {
    if (!obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) return bad(key, "must be true or false");
    target = v.get<bool>();
  }
  void numbers(const char* key, std::vector<double>& target) {
    if (!obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array()) return bad(key, "must be an array of numbers");
    target.clear();
    for (const auto& e : v) {
      if (!e.is_number()) return bad(key, "must be an array of numbers");
      target.push_back(e.get<double>());
    }
  }
  void bad(const std::string& key, const std::string& msg) { out_.push_back({path_ + "." + key, msg}); }

 private:
  const json& obj_;
  std::string path_;
  std::vector<Violation>& out_;
};

void parse_material(const json& doc, const std::string& name, MaterialSpec& spec,
                    std::vector<Violation>& out) {
  if (!doc.contains(name)) {
    out.push_back({name, "missing material block"});
    return;
  }
  const json& m = doc.at(name);
  if (!m.is_object()) {
    out.push_back({name, "must be an object"});
    return;
  }
  Reader r(m, name, out);
  if (m.contains("preset")) {
    if (!m.at("preset").is_string()) {
      out.push_back({name + ".preset", "must be a string"});
      return;
    }
    spec.preset = m.at("preset").get<std::string>();
    const auto names = material_preset_names();
    if (std::find(names.begin(), names.end(), spec.preset) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      out.push_back({name + ".preset", "unknown preset '" + spec.preset + "' (known: " + list + ")"});
      return;
    }
    r.number("piezo_scale", spec.piezo_scale);
    return;
  }
  for (const char* key : kMaterialKeys) {
    if (!m.contains(key)) {
      out.push_back({name + "." + key, "missing material constant"});
      continue;
    }
    r.number(key, *material_field(spec.constants, key));
  }
}

json violations_json(const std::vector<Violation>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back({{"path", e.path}, {"message", e.message}});
  return a;
}

json fit_json(const ExponentFit& f) {
  return {{"slope", f.slope}, {"stderr", f.stderr_}, {"points", f.n}};
}

std::string g12(double v) { return fmt::format("{:.12g}", v); }

}  // namespace

MaterialConstants<double> resolve_material(const MaterialSpec& spec) {
  if (spec.preset.empty()) return spec.constants;
  return scale_piezo(material_preset(spec.preset), spec.piezo_scale);
}

std::vector<Violation> parse_config(const json& doc, RunConfig& cfg) {
  std::vector<Violation> out;
  if (!doc.is_object()) return {{"", "configuration must be an object"}};
  for (const auto& [key, value] : doc.items()) {
    if (key.rfind("material_", 0) == 0 && key != "material_1" && key != "material_2")
      out.push_back({key, "exactly two materials (material_1, material_2) are supported"});
  }
  parse_material(doc, "material_1", cfg.material_1, out);
  parse_material(doc, "material_2", cfg.material_2, out);

  if (doc.contains("loads")) {
    const json& l = doc.at("loads");
    if (!l.is_object()) {
      out.push_back({"loads", "must be an object"});
    } else {
      Reader r(l, "loads", out);
      r.numbers("p0", cfg.loads.p0);
      r.numbers("q0", cfg.loads.q0);
      r.number("q0_length", cfg.loads.q0_length);
      r.number("h0", cfg.loads.h0);
    }
  }

  if (doc.contains("numerics")) {
    const json& n = doc.at("numerics");
    if (!n.is_object()) {
      out.push_back({"numerics", "must be an object"});
    } else {
      Reader r(n, "numerics", out);
      Numerics& nu = cfg.numerics;
      r.number("contour", nu.symbols.contour);
      r.number("S0", nu.symbols.S0);
      r.number("S_min", nu.symbols.S_min);
      r.number("tail_tol", nu.symbols.tail_tol);
      r.number("panel_du", nu.symbols.du);
      r.integer("panel_nodes", nu.symbols.ng);
      r.number("riemann_tail_tol", nu.riemann_tail_tol);
      r.integer("model_terms", nu.inversion.model_terms);
      r.number("fit_min", nu.inversion.fit_min);
      r.number("fit_max_frac", nu.inversion.fit_max_frac);
      r.number("fine_T", nu.inversion.fine_T);
      r.number("fine_ds", nu.inversion.fine_ds);
      r.number("crack_length", nu.inversion.crack_length);
      r.integer("p_nodes", nu.inversion.p_nodes);
      r.integer("f_nodes", nu.inversion.f_nodes);
      r.number("exponent_fit_lo", nu.inversion.fit_lo);
      r.number("exponent_fit_hi", nu.inversion.fit_hi);
      r.integer("exponent_fit_nodes", nu.inversion.fit_nodes);
      r.number("strip_re_lo", nu.strip_re_lo);
      r.number("strip_re_hi", nu.strip_re_hi);
      r.number("strip_R", nu.strip_R);
      r.integer("plemelj_samples", nu.plemelj_samples);
      r.boolean("oracle", nu.oracle);
      r.number("oracle_h", nu.oracle_cfg.h);
      r.number("oracle_cond_fail", nu.oracle_cfg.cond_fail);
      r.boolean("dump_symbols", nu.dump_symbols);
      if (n.contains("c2_form")) {
        const json& v = n.at("c2_form");
        if (v == "squared")
          nu.c2_form = C2Form::Squared;
        else if (v == "literal")
          nu.c2_form = C2Form::Literal;
        else
          r.bad("c2_form", "must be \"squared\" or \"literal\"");
      }
    }
  }

  if (doc.contains("output_dir")) {
    if (doc.at("output_dir").is_string())
      cfg.output_dir = doc.at("output_dir").get<std::string>();
    else
      out.push_back({"output_dir", "must be a string"});
  }
  return out;
}

std::vector<Violation> validate(const RunConfig& cfg) {
  std::vector<Violation> out;
  auto need = [&out](bool ok, const std::string& path, const std::string& msg) {
    if (!ok) out.push_back({path, msg});
  };
  for (const auto& [spec, name] : {std::pair{&cfg.material_1, "material_1"},
                                   std::pair{&cfg.material_2, "material_2"}}) {
    const std::string base = name;
    need(std::isfinite(spec->piezo_scale), base + ".piezo_scale", "must be finite");
    MaterialConstants<double> m;
    try {
      m = resolve_material(*spec);
    } catch (const Error& e) {
      out.push_back({base + ".preset", e.detail()});
      continue;
    }
    for (const char* key : kMaterialKeys)
      need(std::isfinite(*material_field(m, key)), base + "." + key, "must be finite");
    need(m.s11 > 0, base + ".s11", "must be positive");
    need(m.s33 > 0, base + ".s33", "must be positive");
    need(m.s44 > 0, base + ".s44", "must be positive");
    need(m.s11 * m.s33 - m.s13 * m.s13 > 0, base + ".s13", "requires s11*s33 - s13^2 > 0");
    need(m.eps11 > 0, base + ".eps11", "must be positive");
    need(m.eps33 > 0, base + ".eps33", "must be positive");
  }

  const auto& l = cfg.loads;
  for (size_t i = 0; i < l.p0.size(); ++i)
    need(std::isfinite(l.p0[i]), fmt::format("loads.p0[{}]", i), "must be finite");
  for (size_t i = 0; i < l.q0.size(); ++i)
    need(std::isfinite(l.q0[i]), fmt::format("loads.q0[{}]", i), "must be finite");
  need(l.q0_length > 0, "loads.q0_length", "must be positive");
  need(l.h0 > 0 && std::isfinite(l.h0), "loads.h0", "must be positive");

  const auto& n = cfg.numerics;
  need(n.symbols.contour > 0 && n.symbols.contour < 1, "numerics.contour", "must lie in (0, 1)");
  need(n.symbols.S0 > 0, "numerics.S0", "must be positive");
  need(n.symbols.S_min > 0, "numerics.S_min", "must be positive");
  need(n.symbols.tail_tol > 0, "numerics.tail_tol", "must be positive");
  need(n.symbols.du > 0, "numerics.panel_du", "must be positive");
  need(n.symbols.ng >= 2, "numerics.panel_nodes", "must be at least 2");
  need(n.riemann_tail_tol > 0, "numerics.riemann_tail_tol", "must be positive");
  need(n.inversion.model_terms >= 0, "numerics.model_terms", "must be non-negative");
  need(n.inversion.fit_min > 0, "numerics.fit_min", "must be positive");
  need(n.inversion.fit_max_frac > 0 && n.inversion.fit_max_frac <= 1, "numerics.fit_max_frac",
       "must lie in (0, 1]");
  need(n.inversion.fine_T > 0, "numerics.fine_T", "must be positive");
  need(n.inversion.fine_ds > 0, "numerics.fine_ds", "must be positive");
  need(n.inversion.crack_length > 0, "numerics.crack_length", "must be positive");
  need(n.inversion.p_nodes >= 2, "numerics.p_nodes", "must be at least 2");
  need(n.inversion.f_nodes >= 2, "numerics.f_nodes", "must be at least 2");
  need(n.inversion.fit_lo > 0 && n.inversion.fit_hi > n.inversion.fit_lo &&
           n.inversion.fit_hi < 1,
       "numerics.exponent_fit_lo", "requires 0 < exponent_fit_lo < exponent_fit_hi < 1");
  need(n.inversion.fit_nodes >= 3, "numerics.exponent_fit_nodes", "must be at least 3");
  need(n.strip_re_hi > n.strip_re_lo, "numerics.strip_re_hi", "must exceed strip_re_lo");
  need(n.strip_R > 0, "numerics.strip_R", "must be positive");
  need(n.plemelj_samples >= 1, "numerics.plemelj_samples", "must be at least 1");
  need(n.oracle_cfg.h > 0, "numerics.oracle_h", "must be positive");
  need(n.oracle_cfg.cond_fail > 0, "numerics.oracle_cond_fail", "must be positive");
  need(!cfg.output_dir.empty(), "output_dir", "must not be empty");
  return out;
}

RunArtifacts config_failure(const std::vector<Violation>& violations) {
  RunArtifacts a;
  a.exit_code = 2;
  json d;
  d["status"] = "failed";
  d["module"] = "cli_runner";
  d["category"] = "InvalidConfig";
  d["violations"] = violations_json(violations);
  a.diagnostics_json = d.dump(2) + "\n";
  return a;
}

RunArtifacts run(const RunConfig& cfg) {
  if (auto v = validate(cfg); !v.empty()) return config_failure(v);

  const Numerics& nu = cfg.numerics;
  const LoadSpec<double>& loads = cfg.loads;
  RunArtifacts a;
  json d;
  d["status"] = "ok";
  d["tolerances"] = {{"tail_tol", nu.symbols.tail_tol},
                     {"riemann_tail_tol", nu.riemann_tail_tol},
                     {"interface_singular", InterfaceTolerances<double>{}.singular},
                     {"interface_cond_warn", InterfaceTolerances<double>{}.cond_warn},
                     {"interface_cond_fail", InterfaceTolerances<double>{}.cond_fail},
                     {"oracle_cond_fail", nu.oracle_cfg.cond_fail}};
  json warnings = json::array();
  std::string stage = "material_model";
  try {
    const auto b1 = modal_basis(resolve_material(cfg.material_1), nu.c2_form);
    const auto b2 = modal_basis(resolve_material(cfg.material_2), nu.c2_form);
    d["material"] = {{"beta_1", {b1.beta(0), b1.beta(1), b1.beta(2)}},
                     {"beta_2", {b2.beta(0), b2.beta(1), b2.beta(2)}}};

    stage = "interface_solver";
    const auto jf = compute_jump_factors(b1, b2);
    const auto cs = solve_interface_system(b1, b2);
    d["interface"] = {{"condition", cs.condition},
                      {"path_agreement", cs.path_agreement},
                      {"backsub_residual", cs.backsub_residual},
                      {"cramer_residual", jf.cramer_residual},
                      {"imag_ratio", cs.imag_ratio}};
    if (cs.condition_warning)
      warnings.push_back(fmt::format("interface system condition {:.3g} above the warning threshold",
                                     cs.condition));

    stage = "kernel_assembly";
    const auto k = assemble_kernel_table(b1, b2, jf, cs);
    d["kernel"] = {{"lambda", {k.lambda[0], k.lambda[1], k.lambda[2], k.lambda[3]}}};

    stage = "symbol_transform";
    auto data = build_riemann_data(k, loads, nu.symbols);
    d["index"] = data.index;
    d["symbols"] = {{"contour", data.contour},
                    {"S_tail", data.S_tail},
                    {"S", data.grid.S()},
                    {"nodes", data.grid.size()},
                    {"re_g0_min", data.re_g0_min},
                    {"tail_deviation", data.tail_deviation},
                    {"hermitian_deviation", data.hermitian_deviation}};

    stage = "riemann_solver";
    const auto strip = strip_winding(k, loads.h0, nu.strip_re_lo, nu.strip_re_hi, nu.strip_R);
    d["strip_winding"] = {{"winding", strip.winding},
                          {"re_range", {nu.strip_re_lo, nu.strip_re_hi}},
                          {"R", strip.R},
                          {"min_abs", strip.min_abs}};
    if (strip.winding != 0)
      warnings.push_back(fmt::format(
          "G_Phi has {} zero(s) minus pole(s) in {} < Re w < {}; the index-zero factorization on "
          "Re w = {} may not be the physically admissible one",
          strip.winding, nu.strip_re_lo, nu.strip_re_hi, data.contour));
    const auto rs = solve_riemann(std::move(data), nu.riemann_tail_tol);
    d["riemann"] = {{"boundary_residual", rs.boundary_residual},
                    {"tail_ratio", rs.tail_ratio},
                    {"plemelj_residual", plemelj_check(rs, k, nu.plemelj_samples)}};

    stage = "field_recovery";
    const auto fe = make_field_evaluator(rs, loads, nu.inversion);
    const auto fs = recover_fields(fe, nu.inversion);
    const double scale = loads.p0_l1();
    d["eq_residuals"] = {{"int_p_minus_p0", fs.eq_residual_0},
                         {"int_x_p_minus_p0", fs.eq_residual_1},
                         {"p0_l1", scale}};
    if (fs.exponents_available) {
      d["exponents"] = {{"at0", fit_json(fs.exp_at_0)},
                        {"at1", fit_json(fs.exp_at_1)},
                        {"crack", fit_json(fs.exp_crack)},
                        {"window", {nu.inversion.fit_lo, nu.inversion.fit_hi}}};
    } else {
      d["exponents"] = nullptr;
    }

    std::string csv = "x,p,p0\n";
    for (size_t i = 0; i < fs.x_nodes.size(); ++i)
      csv += g12(fs.x_nodes[i]) + "," + g12(fs.p_vals[i]) + "," + g12(fs.p0_vals[i]) + "\n";
    csv += "\nx,f\n";
    for (size_t i = 0; i < fs.crack_nodes.size(); ++i)
      csv += g12(fs.crack_nodes[i]) + "," + g12(fs.f_vals[i]) + "\n";
    a.fields_csv = std::move(csv);

    if (nu.dump_symbols) {
      const auto& g = rs.data;
      std::string s = "t,re_G0,im_G0,re_GPhi,im_GPhi,re_H,im_H,re_Xplus,im_Xplus\n";
      for (int i = 0; i < g.grid.size(); ++i)
        s += fmt::format("{},{},{},{},{},{},{},{},{}\n", g12(g.grid.t()(i)), g12(g.G0(i).real()),
                         g12(g.G0(i).imag()), g12(g.GPhi(i).real()), g12(g.GPhi(i).imag()),
                         g12(g.H(i).real()), g12(g.H(i).imag()), g12(rs.Xplus(i).real()),
                         g12(rs.Xplus(i).imag()));
      a.symbols_csv = std::move(s);
    }

    d["oracle_l2_diff"] = nullptr;
    if (nu.oracle) {
      stage = "collocation_oracle";
      Rigidity<double> rig;
      rig.h0 = loads.h0;
      const auto cp = assemble_collocation(k, loads, rig, nu.oracle_cfg);
      const auto os = solve_collocation(cp, loads, nu.oracle_cfg.cond_fail);
      const auto cmp = compare_with_fields(os, fe, nu.inversion.crack_length);
      d["oracle_l2_diff"] = std::max(cmp.p_l2, cmp.f_l2);
      d["oracle"] = {{"h", nu.oracle_cfg.h},
                     {"unknowns", cp.Np + cp.Nf + 1},
                     {"condition", os.condition},
                     {"residual", os.residual},
                     {"eq_residuals", {os.eq_residual_0, os.eq_residual_1}},
                     {"p_l2", cmp.p_l2},
                     {"p_max", cmp.p_max},
                     {"f_l2", cmp.f_l2},
                     {"f_max", cmp.f_max}};
      std::string s = "x,p\n";
      for (int i = 0; i < os.P.size(); ++i) s += g12(os.P.t(i)) + "," + g12(os.p(i)) + "\n";
      s += "\nx,f\n";
      for (int i = os.F.size() - 1; i >= 0; --i) s += g12(-os.F.t(i)) + "," + g12(os.psi(i)) + "\n";
      a.oracle_csv = std::move(s);
    }
    d["warnings"] = warnings;
  } catch (const Error& e) {
    json f;
    f["status"] = "failed";
    f["module"] = e.module();
    f["category"] = e.category();
    f["detail"] = e.detail();
    f["warnings"] = warnings;
    a = RunArtifacts{};
    a.exit_code = 3;
    a.diagnostics_json = f.dump(2) + "\n";
    return a;
  } catch (const std::exception& e) {
    json f;
    f["status"] = "failed";
    f["module"] = stage;
    f["category"] = "InternalError";
    f["detail"] = e.what();
    a = RunArtifacts{};
    a.exit_code = 3;
    a.diagnostics_json = f.dump(2) + "\n";
    return a;
  }
  a.diagnostics_json = d.dump(2) + "\n";
  return a;
}

bool write_artifacts(const RunArtifacts& a, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return false;
  auto put = [&dir](const char* name, const std::string& body) {
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    f << body;
    return bool(f);
  };
  bool ok = put("diagnostics.json", a.diagnostics_json);
  if (!a.fields_csv.empty()) ok = put("fields.csv", a.fields_csv) && ok;
  if (a.symbols_csv) ok = put("symbols.csv", *a.symbols_csv) && ok;
  if (a.oracle_csv) ok = put("oracle.csv", *a.oracle_csv) && ok;
  return ok;
}

}  // namespace pzc
