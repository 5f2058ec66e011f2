// Shared reference objects for the tests: the PZT4 / PZT7A pair with the
// piezoelectric moduli scaled by 0.25 and 0.5, h0 = 1e10, p0 = 1.
#pragma once

#include "pzc/collocation_oracle.hpp"

#include <string>

namespace fixture {

using namespace pzc;

struct Reference {
  MaterialConstants<double> m1, m2;
  ModalBasis<double> b1, b2;
  JumpFactors<double> jf;
  CouplingSolution<double> cs;
  KernelTable<double> k;
  LoadSpec<double> loads;
  RiemannSolution<double> rs;
  FieldEvaluator<double> fe;
};

inline const Reference& reference() {
  static const Reference r = [] {
    Reference r;
    r.m1 = scale_piezo(material_preset("PZT4"), 0.25);
    r.m2 = scale_piezo(material_preset("PZT7A"), 0.5);
    r.b1 = modal_basis(r.m1);
    r.b2 = modal_basis(r.m2);
    r.jf = compute_jump_factors(r.b1, r.b2);
    r.cs = solve_interface_system(r.b1, r.b2);
    r.k = assemble_kernel_table(r.b1, r.b2, r.jf, r.cs);
    r.rs = solve_riemann(build_riemann_data(r.k, r.loads));
    r.fe = make_field_evaluator(r.rs, r.loads);
    return r;
  }();
  return r;
}

inline std::string source_path(const std::string& rel) { return std::string(PZC_SOURCE_DIR) + "/" + rel; }

}  // namespace fixture
