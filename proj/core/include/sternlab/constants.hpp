#pragma once

#include <cstdint>
#include <functional>

#include "sternlab/minkowski.hpp"

namespace sternlab {

struct McConfig {
  unsigned walk_length = 2000;
  std::size_t walks = 100000;
  std::uint64_t seed = 1;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of the drift constant as the growth rate of random
/// Stern words. Uses the telescoped estimator
///   (log s(full word) - log s(half word)) / (length/2),
/// which cancels the O(1) intercept bias of the plain quotient; a walk of
/// length 1 degenerates to the plain estimator. Deterministic given seed.
McEstimate lyapunov_mc(unsigned walk_length, std::size_t walks,
                       std::uint64_t seed);

struct AlphaReport {
  double alpha_logx = 0.0;        // -1/2 int log x dmu (singular tail on)
  double alpha_log1px = 0.0;      // int log(1+x) dmu
  double alpha_bacher = 0.0;      // log 2 - sum m_k / (k 2^k)
  double alpha_entropy = 0.0;     // 1/2 int -2 log max(x, 1-x) dmu
  double alpha_furstenberg = 0.0; // 1/4 int [log(1+x) + log(1+1/x)] dmu
  double alpha_spectral = 0.0;    // (log rho)'(0)
  double alpha_lyapunov = 0.0;
  double alpha_lyapunov_stderr = 0.0;
  double spread = 0.0;  // max pairwise gap among deterministic routes
};

/// Computes every estimate of the drift constant and cross-validates.
/// Throws (naming the outlier) if the deterministic routes spread beyond
/// 5e-4, if the spectral route strays more than 2e-4 from the log(1+x)
/// route, or if the Monte Carlo interval (3 standard errors) misses the
/// spectral value. `perturb` shifts the log(1+x) route before validation
/// (failure-injection hook).
AlphaReport alpha_all_routes(const QuadratureRule& rule, const McConfig& mc,
                             double perturb = 0.0);

/// Max absolute stationarity defect int f dxi - 1/2 int [f(x+1) +
/// f(x/(x+1))] dxi over the built-in test set {1, 1/(1+x), x/(1+x),
/// log((1+x)/(2+x))}, with xi = (mu + pushforward of mu under x -> 1/x)/2.
double stationarity_defect(const QuadratureRule& rule);

struct SigmaReport {
  double sigma2_quadrature = 0.0;  // squared-integrand single-x form
  double sigma2_alt = 0.0;         // expanded two-term form
  double sigma2_spectral = 0.0;    // -(log rho)''(0)
  double spread = 0.0;
};

/// Variance constant by three routes. The quadrature routes use an outer
/// rule of `outer_depth`, an inner rule of `inner_depth` for the nested
/// integral, and a dyadic refinement of the outer cell at 0 (the integrand
/// contains log x and floor(1/x)). The drift constant inside the integrand
/// is taken from the spectral route. Throws if any route is nonpositive or
/// the spread exceeds 1e-3. `perturb` shifts the first quadrature route
/// before validation.
SigmaReport sigma2_all_routes(unsigned outer_depth = 17,
                              unsigned inner_depth = 13, double perturb = 0.0);

struct PartitionEntropy {
  double lhs = 0.0;  // - sum mu(cell) log nu(cell)
  double rhs = 0.0;  // (2/2^N) sum log s(2^N + m)
};

/// Both sides of the partition-entropy identity at level N (<= 22). The
/// two sides sum the same multiset of logarithms, so they must agree to
/// floating-point roundoff; rhs/(2N) drifts toward the drift constant.
PartitionEntropy partition_entropy(unsigned N);

/// Truncated transfer-operator action at (tau, z) = (0, 1/2):
/// sum_{n<=n_terms} 2^-n f(1/(n+x)).
double h_apply(const std::function<double(double)>& f, double x,
               unsigned n_terms = 80);

/// The cocycle pieces of the variance analysis. `alpha` is the drift
/// constant; `inner` is the quadrature rule for the nested integral.
double psi_fn(double x, double alpha);                              // floor(1/x) + log(x)/alpha
double chi1(double x, const QuadratureRule& inner, double alpha);   // -(1/alpha) int log(1+xy) dmu(y)
double psi_hat(double x, const QuadratureRule& inner, double alpha);

}  // namespace sternlab
