#include "sternlab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sternlab {
namespace {

std::vector<double> lobatto_points(unsigned M) {
  std::vector<double> t(M + 1);
  for (unsigned j = 0; j <= M; ++j)
    t[j] = (1.0 - std::cos(std::numbers::pi * j / M)) / 2.0;
  return t;
}

/// Row of basis values T_i(2x - 1), i = 0..M, by the three-term recurrence.
Eigen::RowVectorXd cheb_row(double x, unsigned M) {
  Eigen::RowVectorXd row(M + 1);
  const double u = 2.0 * x - 1.0;
  row(0) = 1.0;
  if (M >= 1) row(1) = u;
  for (unsigned i = 2; i <= M; ++i) row(i) = 2.0 * u * row(i - 1) - row(i - 2);
  return row;
}

unsigned required_n_max(Complex tau, Complex z) {
  const double az = std::abs(z);
  if (az >= 1.0) throw std::domain_error("build_operator: need |z| < 1");
  const double rt = std::abs(tau.real());
  unsigned n = 5;
  while (std::pow(az, n + 1) * std::pow(n + 2.0, rt) / (1.0 - az) > kTailEps)
    ++n;
  return n;
}

double tail_bound_at(Complex tau, Complex z, unsigned n_max) {
  const double az = std::abs(z);
  const double rt = std::abs(tau.real());
  return std::pow(az, n_max + 1) * std::pow(n_max + 2.0, rt) / (1.0 - az);
}

}  // namespace

OperatorMatrix build_operator(Complex tau, Complex z, unsigned degree,
                              unsigned n_max, OperatorDeriv deriv) {
  if (degree < 2 || degree > 64)
    throw std::invalid_argument("build_operator: degree in [2, 64]");
  const unsigned needed = required_n_max(tau, z);
  if (n_max == 0) n_max = needed;
  if (n_max < needed) {
    std::ostringstream msg;
    msg << "build_operator: n_max " << n_max << " leaves branch tail "
        << tail_bound_at(tau, z, n_max) << " above target " << kTailEps
        << "; need n_max >= " << needed;
    throw std::invalid_argument(msg.str());
  }
  OperatorMatrix op;
  op.tau = tau;
  op.z = z;
  op.degree = degree;
  op.n_max = n_max;
  op.tail_bound = tail_bound_at(tau, z, n_max);
  op.points = lobatto_points(degree);

  const unsigned M = degree;
  Eigen::MatrixXd V(M + 1, M + 1);
  for (unsigned j = 0; j <= M; ++j) V.row(j) = cheb_row(op.points[j], M);
  const Eigen::MatrixXd Vinv = V.fullPivLu().inverse();

  CMatrix W = CMatrix::Zero(M + 1, M + 1);
  for (unsigned j = 0; j <= M; ++j) {
    for (unsigned n = 1; n <= n_max; ++n) {
      const double nt = n + op.points[j];
      Complex w = std::pow(z, static_cast<int>(n)) * std::exp(-tau * std::log(nt));
      switch (deriv) {
        case OperatorDeriv::None:
          break;
        case OperatorDeriv::Tau:
          w *= -std::log(nt);
          break;
        case OperatorDeriv::Z:
          w *= static_cast<double>(n) / z;
          break;
      }
      W.row(j) += w * cheb_row(1.0 / nt, M).cast<Complex>();
    }
  }
  op.entries = W * Vinv.cast<Complex>();
  return op;
}

SpectralData dominant_eig(const OperatorMatrix& A) {
  const Eigen::Index dim = A.entries.rows();
  Eigen::ComplexEigenSolver<CMatrix> solver(A.entries);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dominant_eig: eigensolver failed");
  const CVector& lam = solver.eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < dim; ++i)
    if (std::abs(lam(i)) > std::abs(lam(top))) top = i;
  double second = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (i != top) second = std::max(second, std::abs(lam(i)));
  if (std::abs(lam(top)) - second < 1e-8 * std::abs(lam(top)))
    throw std::runtime_error(
        "dominant_eig: dominant eigenvalue not simple within tolerance");

  SpectralData out;
  out.lambda = lam(top);
  out.gap = second / std::abs(lam(top));
  out.right_eig = solver.eigenvectors().col(top);
  if (std::abs(out.right_eig(0)) < 1e-12)
    throw std::runtime_error("dominant_eig: eigenfunction vanishes at t = 0");
  out.right_eig /= out.right_eig(0);

  Eigen::ComplexEigenSolver<CMatrix> solver_t(A.entries.transpose());
  const CVector& lam_t = solver_t.eigenvalues();
  Eigen::Index match = 0;
  for (Eigen::Index i = 1; i < dim; ++i)
    if (std::abs(lam_t(i) - out.lambda) < std::abs(lam_t(match) - out.lambda))
      match = i;
  out.left_eig = solver_t.eigenvectors().col(match);
  const Complex pairing = out.left_eig.transpose() * out.right_eig;
  if (std::abs(pairing) < 1e-12)
    throw std::runtime_error("dominant_eig: left/right eigenvectors orthogonal");
  out.left_eig /= pairing;

  const CVector resid = A.entries * out.right_eig - out.lambda * out.right_eig;
  out.residual = resid.cwiseAbs().maxCoeff() / out.right_eig.cwiseAbs().maxCoeff();
  return out;
}

namespace {

Complex dominant_lambda(Complex tau, Complex z, unsigned degree) {
  return dominant_eig(build_operator(tau, z, degree)).lambda;
}

}  // namespace

LambdaDerivatives lambda_derivatives(Complex tau, Complex z, unsigned degree,
                                     double h) {
  const OperatorMatrix A = build_operator(tau, z, degree);
  const SpectralData sd = dominant_eig(A);
  const OperatorMatrix dAt =
      build_operator(tau, z, degree, A.n_max, OperatorDeriv::Tau);
  const OperatorMatrix dAz =
      build_operator(tau, z, degree, A.n_max, OperatorDeriv::Z);
  LambdaDerivatives out;
  out.dlambda_dtau = sd.left_eig.transpose() * (dAt.entries * sd.right_eig);
  out.dlambda_dz = sd.left_eig.transpose() * (dAz.entries * sd.right_eig);

  const Complex fd_tau = (dominant_lambda(tau + h, z, degree) -
                          dominant_lambda(tau - h, z, degree)) /
                         (2.0 * h);
  const Complex fd_z = (dominant_lambda(tau, z + h, degree) -
                        dominant_lambda(tau, z - h, degree)) /
                       (2.0 * h);
  out.fd_discrepancy = std::max(std::abs(out.dlambda_dtau - fd_tau),
                                std::abs(out.dlambda_dz - fd_z));
  if (out.fd_discrepancy > 1e-5)
    throw std::runtime_error(
        "lambda_derivatives: perturbation and finite-difference routes "
        "disagree beyond 1e-5");
  return out;
}

RhoPoint solve_rho(Complex tau, unsigned degree, Complex z0) {
  RhoPoint out;
  out.tau = tau;
  Complex z = z0;
  for (int it = 1; it <= 30; ++it) {
    const OperatorMatrix A = build_operator(tau, z, degree);
    const SpectralData sd = dominant_eig(A);
    const OperatorMatrix dAz =
        build_operator(tau, z, degree, A.n_max, OperatorDeriv::Z);
    const Complex dlz = sd.left_eig.transpose() * (dAz.entries * sd.right_eig);
    const Complex dz = (sd.lambda - 1.0) / dlz;
    z -= dz;
    out.newton_iters = it;
    out.residual = std::abs(sd.lambda - 1.0);
    if (std::abs(dz) < 1e-15) {
      out.rho = z;
      return out;
    }
  }
  throw std::runtime_error("solve_rho: Newton failed to converge in 30 steps");
}

namespace {

struct Stencil {
  double d1, d2;  // (log rho)' and (log rho)'' at 0
};

Stencil log_rho_stencil(double h, unsigned degree) {
  double v[5];
  for (int k = -2; k <= 2; ++k)
    v[k + 2] = std::log(solve_rho(Complex(k * h, 0.0), degree).rho.real());
  Stencil s;
  s.d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h);
  s.d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h);
  return s;
}

}  // namespace

LogRhoDerivatives log_rho_derivatives(double h, unsigned degree) {
  const Stencil coarse = log_rho_stencil(h, degree);
  const Stencil fine = log_rho_stencil(h / 2, degree);
  LogRhoDerivatives out;
  out.alpha = (16 * fine.d1 - coarse.d1) / 15;
  out.sigma2 = -(16 * fine.d2 - coarse.d2) / 15;
  out.ext_error = std::max(std::abs(fine.d1 - coarse.d1),
                           std::abs(fine.d2 - coarse.d2)) /
                  15.0;
  if (out.ext_error > 1e-6)
    throw std::runtime_error(
        "log_rho_derivatives: extrapolation error exceeds 1e-6; reduce step");
  return out;
}

QuasiInverse quasi_inverse_partial_sum(Complex tau, Complex z, unsigned k_max,
                                       unsigned degree) {
  const OperatorMatrix A = build_operator(tau, z, degree);
  Eigen::ComplexEigenSolver<CMatrix> solver(A.entries, false);
  const double srd = solver.eigenvalues().cwiseAbs().maxCoeff();
  if (srd >= 1.0) {
    std::ostringstream msg;
    msg << "quasi_inverse_partial_sum: spectral radius " << srd
        << " >= 1; series diverges at this (tau, z)";
    throw std::domain_error(msg.str());
  }
  const Eigen::Index dim = A.entries.rows();
  CVector f = CVector::Ones(dim);
  CVector total = CVector::Zero(dim);
  for (unsigned k = 0; k <= k_max; ++k) {
    total += f;
    f = A.entries * f;
    if (f.cwiseAbs().maxCoeff() < 1e-16) break;
  }
  QuasiInverse out;
  out.spectral_radius = srd;
  out.value = total(dim - 1) / (1.0 - z);  // collocation point t = 1
  out.tail_bound =
      f.cwiseAbs().maxCoeff() / ((1.0 - srd) * std::abs(1.0 - z));
  return out;
}

}  // namespace sternlab
