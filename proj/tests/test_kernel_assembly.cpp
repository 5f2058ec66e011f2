#include "fixtures.hpp"

#include <doctest.h>

using namespace pzc;

TEST_SUITE("kernel_assembly") {

TEST_CASE("reference table is real with unused diagonals") {
  const auto& k = fixture::reference().k;
  CHECK(k.max_imag_ratio < 1e-9);
  for (int m = 0; m < 3; ++m) {
    CHECK(k.omega(m, m) == 0.0);
    CHECK(k.alpha(m, m) == 0.0);
    CHECK(k.rr(m, m) == 0.0);
    CHECK(k.qq(m, m) == 0.0);
  }
  CHECK(k.lambda[0] != 0.0);
  CHECK(k.lambda[2] != 0.0);
}

TEST_CASE("Cauchy-only K1 is lambda1 / (t - x)") {
  const auto k = fixture::reference().k.cauchy_only();
  for (double t : {0.1, 0.7, 3.0})
    for (double x : {0.2, 0.5, 2.0})
      CHECK(eval_K1(k, t, x) == doctest::Approx(k.lambda[0] / (t - x)).epsilon(1e-15));
}

TEST_CASE("single table entries recover their coefficient") {
  KernelTable<double> k;
  k.beta1 << 0.9, 1.1, 1.3;
  k.beta2 << 0.7, 1.4, 1.6;
  k.omega(0, 1) = 2.5;
  k.alpha(2, 0) = -1.5;
  k.rr(1, 2) = 0.75;
  k.qq(2, 1) = 4.0;
  const double t = 0.37, x = 1.9;
  CHECK(eval_R1(k, t, x) * (k.beta1(0) * t + k.beta1(1) * x) == doctest::Approx(2.5));
  CHECK(eval_R2(k, t, x) * (k.beta1(2) * t + k.beta2(0) * x) == doctest::Approx(1.5));
  CHECK(eval_R3(k, t, x) * (k.beta2(1) * t + k.beta1(2) * x) == doctest::Approx(0.75));
  CHECK(eval_R4(k, t, x) * (k.beta2(2) * t + k.beta2(1) * x) == doctest::Approx(4.0));
}

TEST_CASE("R4 with swapped indices follows the table transpose") {
  const auto& ref = fixture::reference().k;
  KernelTable<double> a = ref, b = ref;
  b.qq = ref.qq.transpose();
  b.beta2 = ref.beta2;
  // sum_mn q_nm / (b_m t + b_n x) equals sum_mn q_mn / (b_n t + b_m x) = R4(x, t).
  for (double t : {0.3, 1.7})
    for (double x : {0.5, 2.2})
      CHECK(eval_R4(b, t, x) == doctest::Approx(eval_R4(a, x, t)).epsilon(1e-13));
}

TEST_CASE("all kernels are homogeneous of degree -1") {
  const auto& k = fixture::reference().k;
  for (double c : {0.01, 3.0, 250.0})
    for (auto [t, x] : {std::pair{0.3, 0.8}, std::pair{2.0, 0.1}, std::pair{1.0, 5.0}}) {
      CHECK(eval_K1(k, c * t, c * x) * c == doctest::Approx(eval_K1(k, t, x)).epsilon(1e-12));
      CHECK(eval_K2(k, c * t, c * x) * c == doctest::Approx(eval_K2(k, t, x)).epsilon(1e-12));
      CHECK(eval_R1(k, c * t, c * x) * c == doctest::Approx(eval_R1(k, t, x)).epsilon(1e-12));
      CHECK(eval_R2(k, c * t, c * x) * c == doctest::Approx(eval_R2(k, t, x)).epsilon(1e-12));
      CHECK(eval_R3(k, c * t, c * x) * c == doctest::Approx(eval_R3(k, t, x)).epsilon(1e-12));
      CHECK(eval_R4(k, c * t, c * x) * c == doctest::Approx(eval_R4(k, t, x)).epsilon(1e-12));
    }
}

TEST_CASE("singular and out-of-domain points are rejected") {
  const auto& k = fixture::reference().k;
  CHECK_THROWS_WITH_AS(eval_K1(k, 0.5, 0.5), doctest::Contains("SingularPoint"), Error);
  CHECK_THROWS_WITH_AS(eval_K2(k, 2.0, 2.0), doctest::Contains("SingularPoint"), Error);
  CHECK_THROWS_WITH_AS(eval_K1(k, -1.0, 0.5), doctest::Contains("DomainError"), Error);
}

TEST_CASE("numerically transformed kernels match the closed-form symbols") {
  const auto& k = fixture::reference().k;
  for (double s : {-3.0, -0.4, 0.0, 0.9, 5.0}) {
    const std::complex<double> w(0.75, s);
    const auto sym = eval_symbols(k, 1e10, w);
    const auto K1 = numeric_symbol<double>([&](double u) { return eval_K1(k, 1.0, u); },
                                           k.lambda[0], w);
    const auto K2 = numeric_symbol<double>([&](double u) { return eval_K2(k, 1.0, u); },
                                           k.lambda[2], w);
    const auto R2 = numeric_symbol<double>([&](double u) { return eval_R2(k, 1.0, u); }, 0.0, w);
    const auto R3 = numeric_symbol<double>([&](double u) { return eval_R3(k, 1.0, u); }, 0.0, w);
    // The coupling symbols are small; measure them against the dominant ones.
    const double scale = std::max(std::abs(sym.K1s), std::abs(sym.K2s));
    CHECK(std::abs(K1 - sym.K1s) < 1e-8 * std::abs(sym.K1s));
    CHECK(std::abs(K2 - sym.K2s) < 1e-8 * std::abs(sym.K2s));
    CHECK(std::abs(R2 - sym.R2s) < 1e-8 * scale);
    CHECK(std::abs(R3 - sym.R3s) < 1e-8 * scale);
  }
}

}  // TEST_SUITE
