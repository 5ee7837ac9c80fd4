#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sternlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Dense collocation discretization of the weighted composition operator
///   f(t) |-> sum_{n>=1} z^n (n+t)^{-tau} f(1/(n+t)),   t in [0,1],
/// on Chebyshev-Lobatto points t_j = (1 - cos(pi j / M)) / 2 (so t_0 = 0)
/// with Chebyshev polynomials T_i(2t-1) as basis. The branch series is
/// truncated at n_max with a geometric tail bound.
struct OperatorMatrix {
  Complex tau;
  Complex z;
  unsigned degree = 32;    // M: matrix is (M+1) x (M+1)
  unsigned n_max = 0;      // branch truncation actually used
  double tail_bound = 0.0; // bound on the dropped branch weights
  CMatrix entries;
  std::vector<double> points;  // the collocation points t_j
};

inline constexpr double kTailEps = 1e-14;

enum class OperatorDeriv { None, Tau, Z };

/// n_max = 0 requests automatic truncation from the tail target.
OperatorMatrix build_operator(Complex tau, Complex z, unsigned degree = 32,
                              unsigned n_max = 0,
                              OperatorDeriv deriv = OperatorDeriv::None);

struct SpectralData {
  Complex lambda;
  CVector right_eig;  // values at collocation points, normalized f(0) = 1
  CVector left_eig;   // discrete eigenmeasure, normalized left . right = 1
  double residual = 0.0;
  double gap = 0.0;  // |lambda_2| / |lambda_1|
};

/// Full dense eigendecomposition; dominant eigenvalue by maximal modulus.
/// Throws if the dominant eigenvalue fails the simplicity margin.
SpectralData dominant_eig(const OperatorMatrix& A);

struct LambdaDerivatives {
  Complex dlambda_dtau;
  Complex dlambda_dz;
  double fd_discrepancy = 0.0;  // max disagreement with finite differences
};

/// First-order perturbation u^T (dA) v with analytic dA, cross-checked
/// against central finite differences of step h. Throws if the two routes
/// disagree by more than 1e-5.
LambdaDerivatives lambda_derivatives(Complex tau, Complex z,
                                     unsigned degree = 32, double h = 1e-6);

struct RhoPoint {
  Complex tau;
  Complex rho;
  int newton_iters = 0;
  double residual = 0.0;  // |lambda(tau, rho) - 1|
};

/// Newton solve of lambda(tau, z) = 1 in z, starting from z0 (default 1/2).
/// Throws after 30 iterations without convergence.
RhoPoint solve_rho(Complex tau, unsigned degree = 32, Complex z0 = {0.5, 0.0});

struct LogRhoDerivatives {
  double alpha;   // (log rho)'(0)
  double sigma2;  // -(log rho)''(0)
  double ext_error;  // Richardson extrapolation error estimate
};

/// 5-point central stencils for (log rho)' and (log rho)'' at 0, evaluated
/// at steps h and h/2 and Richardson-extrapolated. Throws if the
/// extrapolation error estimate exceeds 1e-6.
LogRhoDerivatives log_rho_derivatives(double h = 1e-3, unsigned degree = 32);

struct QuasiInverse {
  Complex value;
  double tail_bound = 0.0;    // geometric bound on the dropped operator tail
  double spectral_radius = 0.0;
};

/// Partial sums of (1/(1-z)) sum_k (A^k 1)(t = 1). Refuses (throws) when
/// the discretized operator has spectral radius >= 1.
QuasiInverse quasi_inverse_partial_sum(Complex tau, Complex z,
                                       unsigned k_max = 400,
                                       unsigned degree = 32);

}  // namespace sternlab
