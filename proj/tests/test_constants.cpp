#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sternlab/constants.hpp"
#include "sternlab/reference.hpp"

using namespace sternlab;

TEST_CASE("Monte Carlo drift estimate") {
  SUBCASE("length-1 walks average the two row values") {
    const McEstimate e = lyapunov_mc(1, 50000, 11);
    CHECK(std::abs(e.value - std::log(2.0) / 2.0) < 0.01);
  }
  SUBCASE("deterministic given the seed") {
    const McEstimate a = lyapunov_mc(200, 2000, 5);
    const McEstimate b = lyapunov_mc(200, 2000, 5);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
  }
  SUBCASE("medium run brackets the drift constant") {
    const McEstimate e = lyapunov_mc(1000, 20000, 3);
    CHECK(std::abs(e.value - ref::kAlpha) <= 3 * e.std_error);
  }
}

TEST_CASE("all drift-constant routes agree") {
  const QuadratureRule rule = build_quadrature(16);
  McConfig mc;
  mc.walk_length = 500;
  mc.walks = 20000;
  mc.seed = 1;
  const AlphaReport rep = alpha_all_routes(rule, mc);
  CHECK(rep.spread < 5e-4);
  for (const double v : {rep.alpha_logx, rep.alpha_log1px, rep.alpha_bacher,
                         rep.alpha_entropy, rep.alpha_furstenberg})
    CHECK(std::abs(v - 0.396212) < 5e-4);
  CHECK(std::abs(rep.alpha_spectral - 0.396212) < 1e-5);
  CHECK(std::abs(rep.alpha_lyapunov - rep.alpha_spectral) <=
        3 * rep.alpha_lyapunov_stderr);

  SUBCASE("failure injection trips the cross-validation") {
    CHECK_THROWS_AS(alpha_all_routes(rule, mc, /*perturb=*/1e-3),
                    std::runtime_error);
  }
}

TEST_CASE("first Bacher partial sum") {
  const MomentVector mv = moments(build_quadrature(16), 1);
  CHECK(std::numbers::ln2 - mv.m[1] / 2.0 ==
        doctest::Approx(0.443147).epsilon(1e-4));
}

TEST_CASE("stationary-measure defect is small") {
  CHECK(stationarity_defect(build_quadrature(20)) < 1e-5);
}

TEST_CASE("variance-constant routes agree") {
  const SigmaReport rep = sigma2_all_routes(/*outer_depth=*/14,
                                            /*inner_depth=*/11);
  CHECK(rep.sigma2_quadrature > 0);
  CHECK(rep.sigma2_alt > 0);
  CHECK(rep.sigma2_spectral > 0);
  CHECK(std::abs(rep.sigma2_quadrature - rep.sigma2_alt) < 1e-5);
  CHECK(rep.spread < 1e-3);
  CHECK(std::abs(rep.sigma2_spectral - 0.022173) < 1e-4);

  SUBCASE("failure injection") {
    CHECK_THROWS_AS(sigma2_all_routes(14, 11, /*perturb=*/-0.1),
                    std::runtime_error);
  }
}

TEST_CASE("partition entropy identity and drift") {
  const PartitionEntropy p1 = partition_entropy(1);
  CHECK(p1.rhs == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(p1.lhs == doctest::Approx(p1.rhs).epsilon(1e-14));

  const PartitionEntropy p18 = partition_entropy(18);
  CHECK(std::abs(p18.lhs - p18.rhs) < 1e-12 * std::abs(p18.rhs));
  CHECK(std::abs(p18.rhs / (2.0 * 18) - ref::kAlpha) < 0.01);
  CHECK_THROWS_AS(partition_entropy(23), std::invalid_argument);
}

TEST_CASE("cocycle pieces") {
  const QuadratureRule inner = build_quadrature(14);
  const double alpha = ref::kAlpha;

  SUBCASE("mean-zero potential") {
    const double mean =
        integrate(build_quadrature(18),
                  [&](double x) { return psi_fn(x, alpha); },
                  {.singular_tail = true});
    CHECK(std::abs(mean) < 1e-4);
  }
  SUBCASE("cohomological equation for chi1") {
    for (int i = 1; i <= 20; ++i) {
      const double x = i / 20.0;
      const double lhs =
          h_apply([&](double y) { return chi1(y, inner, alpha); }, x);
      const double rhs =
          chi1(x, inner, alpha) - 2.0 -
          h_apply([&](double y) { return std::log(y) / alpha; }, x);
      CHECK(std::abs(lhs - rhs) < 1e-4);
    }
  }
  SUBCASE("effective potential stays away from zero near 0") {
    for (double x = 0.005; x < 0.1; x += 0.005)
      CHECK(std::abs(psi_hat(x, inner, alpha)) >= 1.0);
  }
}
