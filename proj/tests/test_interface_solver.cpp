#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace pzc;
using Cd = std::complex<double>;

namespace {

ModalBasis<double> identity_basis_1() {
  ModalBasis<double> b;
  b.beta << 1.0, 2.0, 3.0;
  b.r << 1, 0, 0;
  b.gamma << 0, 1, 0;
  b.p << 0, 0, 1;
  b.lambda.setZero();
  b.q.setZero();
  return b;
}

ModalBasis<double> identity_basis_2() {
  ModalBasis<double> b;
  b.beta << 1.0, 2.0, 3.0;
  b.gamma << Cd(0, -1), 0, 0;  // i beta gamma = (1, 0, 0)
  b.lambda << 0, 1, 0;
  b.q << 0, 0, 1;
  b.p.setZero();
  b.r.setZero();
  return b;
}

Cd minor2(const CMat3<double>& a, int skip_row, int skip_col) {
  int r[2], c[2];
  for (int i = 0, n = 0; i < 3; ++i)
    if (i != skip_row) r[n++] = i;
  for (int j = 0, n = 0; j < 3; ++j)
    if (j != skip_col) c[n++] = j;
  const Cd m = a(r[0], c[0]) * a(r[1], c[1]) - a(r[0], c[1]) * a(r[1], c[0]);
  return ((skip_row + skip_col) % 2 ? -1.0 : 1.0) * m;
}

}  // namespace

TEST_SUITE("interface_solver") {

TEST_CASE("Laplace expansion matches LU determinants") {
  std::mt19937 gen(7);
  std::normal_distribution<double> nd;
  for (int n : {1, 2, 3, 5, 6}) {
    CMat<double> a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = Cd(nd(gen), nd(gen));
    const Cd d = laplace_determinant<double>(a);
    const Cd ref = a.partialPivLu().determinant();
    CHECK(std::abs(d - ref) < 1e-12 * std::abs(ref));
  }
  CHECK(std::abs(laplace_determinant<double>(CMat<double>::Identity(4, 4)) - 1.0) < 1e-15);
  CHECK(std::abs(laplace_cofactor<double>(CMat<double>::Identity(3, 3), 1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(laplace_cofactor<double>(CMat<double>::Identity(3, 3), 1, 2)) < 1e-15);
}

TEST_CASE("orthonormal synthetic rows give unit determinants") {
  const auto jf = compute_jump_factors(identity_basis_1(), identity_basis_2());
  CHECK(std::abs(jf.delta0_1 - 1.0) < 1e-15);
  CHECK(std::abs(jf.delta0_2 - Cd(0, 1)) < 1e-15);
  CHECK(std::abs(jf.delta2k_1(0)) < 1e-15);
  CHECK(std::abs(jf.delta2k_1(1) - 1.0) < 1e-15);
  CHECK(std::abs(jf.delta2k_1(2)) < 1e-15);
  CHECK(std::abs(jf.delta3k_2(2) - 1.0) < 1e-15);
  CHECK(jf.cramer_residual < 1e-15);
}

TEST_CASE("mode swap permutes cofactor ratios") {
  const auto& ref = fixture::reference();
  auto b1 = ref.b1;
  auto swap = [](auto& v) { std::swap(v(0), v(2)); };
  swap(b1.beta), swap(b1.gamma), swap(b1.lambda), swap(b1.p), swap(b1.q), swap(b1.r);
  const auto a = compute_jump_factors(ref.b1, ref.b2);
  const auto b = compute_jump_factors(b1, ref.b2);
  CHECK(std::abs(a.delta0_1 + b.delta0_1) < 1e-12 * std::abs(a.delta0_1));
  const int perm[3] = {2, 1, 0};
  for (int k = 0; k < 3; ++k) {
    const Cd ra = a.delta2k_1(k) / a.delta0_1, rb = b.delta2k_1(perm[k]) / b.delta0_1;
    CHECK(std::abs(ra - rb) < 1e-12 * std::abs(ra));
  }
}

TEST_CASE("cofactors equal brute-force minors for PZT7A / PZT4") {
  const auto b1 = modal_basis(scale_piezo(material_preset("PZT7A"), 0.25));
  const auto b2 = modal_basis(scale_piezo(material_preset("PZT4"), 0.25));
  const auto jf = compute_jump_factors(b1, b2);
  for (int k = 0; k < 3; ++k) {
    const Cd m1 = minor2(jf.S1, 1, k), m2 = minor2(jf.S2, 2, k);
    CHECK(std::abs(jf.delta2k_1(k) - m1) <= 1e-13 * std::abs(m1));
    CHECK(std::abs(jf.delta3k_2(k) - m2) <= 1e-13 * std::abs(m2));
  }
  const Cd det1 = jf.S1.determinant(), det2 = jf.S2.determinant();
  CHECK(std::abs(jf.delta0_1 - det1) <= 1e-12 * std::abs(det1));
  CHECK(std::abs(jf.delta0_2 - Cd(0, 1) * det2) <= 1e-12 * std::abs(det2));
  CHECK(jf.cramer_residual < 1e-13);
}

TEST_CASE("interface solution satisfies the interface equations") {
  const auto& ref = fixture::reference();
  const auto& cs = ref.cs;
  CMat6<double> M, C;
  interface_matrices(ref.b1, ref.b2, M, C);
  const CMat6<double> direct = M.fullPivLu().solve(C);
  CHECK((direct - cs.X_lu).cwiseAbs().maxCoeff() < 1e-11 * direct.cwiseAbs().maxCoeff());
  CHECK((M * cs.X.cast<Cd>() - C).cwiseAbs().maxCoeff() < 1e-10 * C.cwiseAbs().maxCoeff());
  CHECK(cs.backsub_residual < 1e-10);
  CHECK(cs.path_agreement < 1e-11);
  CHECK(cs.imag_ratio < 1e-9);
  CHECK(std::abs(cs.delta_tilde - M.determinant()) < 1e-10 * std::abs(cs.delta_tilde));
  CHECK(!cs.condition_warning);
}

TEST_CASE("back-substitution holds for random admissible material pairs") {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> ud(0.99, 1.01);
  auto perturb = [&](MaterialConstants<double> m) {
    for (double* v : {&m.s11, &m.s12, &m.s13, &m.s33, &m.s44, &m.d13, &m.d15, &m.d33, &m.eps11,
                      &m.eps33})
      *v *= ud(gen);
    return m;
  };
  const auto& ref = fixture::reference();
  // Perturbations may push a half-plane out of the real-root class; those
  // samples are rejected by the material model and skipped.  Every admissible
  // pair must solve.
  int admissible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ModalBasis<double> b1, b2;
    try {
      b1 = modal_basis(perturb(ref.m1));
      b2 = modal_basis(perturb(ref.m2));
    } catch (const Error& e) {
      CHECK(e.category() == "ComplexRoots");
      continue;
    }
    ++admissible;
    const auto cs = solve_interface_system(b1, b2);
    CHECK(cs.backsub_residual < 1e-9);
    CHECK(cs.path_agreement < 1e-9);
  }
  CHECK(admissible >= 50);
}

TEST_CASE("interface system of identical half-planes matches dense LU") {
  const auto b = fixture::reference().b1;
  CMat6<double> M, C;
  interface_matrices(b, b, M, C);
  const auto cs = solve_interface_system(b, b);
  const CMat6<double> direct = M.partialPivLu().solve(C);
  CHECK((direct - cs.X_lu).cwiseAbs().maxCoeff() < 1e-10 * direct.cwiseAbs().maxCoeff());
}

}  // TEST_SUITE
