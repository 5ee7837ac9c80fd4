#include "doctest.h"

#include <cmath>

#include "sternlab/minkowski.hpp"
#include "sternlab/reference.hpp"
#include "sternlab/stern.hpp"
#include "sternlab/transfer.hpp"

using namespace sternlab;

TEST_CASE("constant function is fixed at (0, 1/2)") {
  for (const unsigned M : {8u, 16u, 32u}) {
    const OperatorMatrix A = build_operator({0, 0}, {0.5, 0}, M);
    const CVector image = A.entries * CVector::Ones(M + 1);
    CHECK((image.array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("constant image is geometric for tau = 0") {
  const OperatorMatrix A = build_operator({0, 0}, {0.25, 0});
  const CVector image = A.entries * CVector::Ones(A.entries.rows());
  CHECK((image.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("matrix action matches direct series summation") {
  const Complex tau{0.1, 0.0}, z{0.5, 0.0};
  const OperatorMatrix A = build_operator(tau, z);
  const CVector image = A.entries * CVector::Ones(A.entries.rows());
  for (std::size_t j = 0; j < A.points.size(); ++j) {
    Complex direct = 0.0;
    for (unsigned n = 1; n <= A.n_max; ++n)
      direct += std::pow(z, static_cast<int>(n)) *
                std::exp(-tau * std::log(n + A.points[j]));
    CHECK(std::abs(image(j) - direct) < 1e-12);
  }
}

TEST_CASE("insufficient branch truncation is refused") {
  CHECK_THROWS_AS(build_operator({0, 0}, {0.5, 0}, 32, /*n_max=*/5),
                  std::invalid_argument);
}

TEST_CASE("dominant eigenvalue at reference points") {
  SUBCASE("(0, 1/2): eigenvalue 1, constant eigenfunction") {
    const SpectralData sd = dominant_eig(build_operator({0, 0}, {0.5, 0}));
    CHECK(std::abs(sd.lambda - 1.0) < 1e-10);
    CHECK((sd.right_eig.array() - 1.0).abs().maxCoeff() < 1e-8);
    CHECK(sd.residual < 1e-10);
    CHECK(sd.gap < 0.6);
  }
  SUBCASE("(0, 1/4): eigenvalue 1/3") {
    const SpectralData sd = dominant_eig(build_operator({0, 0}, {0.25, 0}));
    CHECK(std::abs(sd.lambda - 1.0 / 3.0) < 1e-10);
    CHECK((sd.right_eig.array() - 1.0).abs().maxCoeff() < 1e-8);
  }
  SUBCASE("(0.05, 1/2): real eigenvalue near 1, small residual") {
    const SpectralData sd = dominant_eig(build_operator({0.05, 0}, {0.5, 0}));
    CHECK(std::abs(sd.lambda.imag()) < 1e-10);
    CHECK(sd.lambda.real() > 0.9);
    CHECK(sd.lambda.real() < 1.1);
    CHECK(sd.residual < 1e-10);
  }
}

TEST_CASE("degree robustness of the eigenvalue") {
  const Complex tau{0.05, 0.0}, z{0.45, 0.0};
  const Complex l24 = dominant_eig(build_operator(tau, z, 24)).lambda;
  const Complex l48 = dominant_eig(build_operator(tau, z, 48)).lambda;
  CHECK(std::abs(l24 - l48) < 1e-10);
}

TEST_CASE("left eigenvector reproduces the measure moments") {
  const SpectralData sd = dominant_eig(build_operator({0, 0}, {0.5, 0}));
  const OperatorMatrix A = build_operator({0, 0}, {0.5, 0});
  const MomentVector mv = moments(build_quadrature(18), 4);
  for (unsigned k = 1; k <= 4; ++k) {
    CVector xk(A.points.size());
    for (std::size_t j = 0; j < A.points.size(); ++j)
      xk(j) = std::pow(A.points[j], static_cast<double>(k));
    const Complex mk = sd.left_eig.transpose() * xk;
    CHECK(std::abs(mk - mv.m[k]) < 2e-4);
  }
}

TEST_CASE("eigenvalue derivatives") {
  SUBCASE("at (0, 1/2)") {
    const LambdaDerivatives d = lambda_derivatives({0, 0}, {0.5, 0});
    CHECK(std::abs(d.dlambda_dz - 4.0) < 1e-8);
    CHECK(std::abs(d.dlambda_dtau - (-2.0 * ref::kAlpha)) < 2e-4);
    CHECK(d.fd_discrepancy < 1e-5);
  }
  SUBCASE("at (0, 1/4): closed form d/dz z/(1-z)") {
    const LambdaDerivatives d = lambda_derivatives({0, 0}, {0.25, 0});
    CHECK(std::abs(d.dlambda_dz - 16.0 / 9.0) < 1e-8);
  }
}

TEST_CASE("solving for the eigenvalue-one curve") {
  const RhoPoint r0 = solve_rho({0, 0});
  CHECK(std::abs(r0.rho - 0.5) < 1e-12);
  CHECK(r0.residual < 1e-12);

  SUBCASE("odd-part slope near the drift constant") {
    const double h = 0.01;
    const RhoPoint rp = solve_rho({h, 0});
    const RhoPoint rm = solve_rho({-h, 0});
    const double slope =
        (std::log(rp.rho.real()) - std::log(rm.rho.real())) / (2 * h);
    CHECK(std::abs(slope - ref::kAlpha) < 1e-3);
  }
  SUBCASE("Schwarz reflection for imaginary arguments") {
    const RhoPoint rp = solve_rho({0.0, 0.01});
    const RhoPoint rm = solve_rho({0.0, -0.01});
    CHECK(std::abs(rp.rho - std::conj(rm.rho)) < 1e-10);
  }
}

TEST_CASE("log-rho derivatives reach the reference constants") {
  const LogRhoDerivatives d = log_rho_derivatives();
  CHECK(std::abs(d.alpha - 0.396212564) < 1e-5);
  CHECK(std::abs(d.sigma2 - 0.0221729) < 1e-5);
  CHECK(d.sigma2 > 0.0);
  CHECK(d.ext_error < 1e-6);
}

TEST_CASE("quasi-inverse partial sums") {
  SUBCASE("closed form at tau = 0") {
    const QuasiInverse qi = quasi_inverse_partial_sum({0, 0}, {0.3, 0});
    CHECK(std::abs(qi.value - 2.5) < 1e-10);
  }
  SUBCASE("cross-check against the direct series") {
    for (const auto& [tau, z] :
         std::vector<std::pair<double, double>>{{0.3, 0.4}, {-0.3, 0.3}}) {
      const QuasiInverse qi = quasi_inverse_partial_sum({tau, 0}, {z, 0});
      const SternSeries ds = direct_stern_series(tau, z, 20);
      const double budget = qi.tail_bound + ds.tail_bound() + 1e-10;
      CHECK(std::abs(qi.value - ds.value) < budget);
    }
  }
  SUBCASE("divergence refusal past the pole") {
    CHECK_THROWS_AS(quasi_inverse_partial_sum({0, 0}, {0.55, 0}),
                    std::domain_error);
  }
}
