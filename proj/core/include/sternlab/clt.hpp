#pragma once

#include <cstdint>
#include <vector>

#include "sternlab/bignum.hpp"

namespace sternlab {

/// Distribution of log s(n) over row N, either fully enumerated or sampled.
/// The KS distance compares the standardized sample (x - alpha*N) /
/// (sigma*sqrt(N)), with the reference (spectral-route) constants, against
/// the standard normal CDF. N = 0 is a point mass at 0 with KS = 1/2.
struct EmpiricalDist {
  unsigned N = 0;
  bool enumerated = true;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ks = 0.0;
  // histogram of standardized values over [hist_lo, hist_hi]
  double hist_lo = -5.0;
  double hist_hi = 5.0;
  std::vector<std::size_t> histogram;
};

EmpiricalDist empirical_dist_enumerated(unsigned N, unsigned bins = 40);
EmpiricalDist empirical_dist_sampled(unsigned N, std::size_t count,
                                     std::uint64_t seed, unsigned bins = 40);

/// Affine fits of row mean and row variance of log s against N over the
/// given (enumerated) levels: mean ~ mean_slope*N + nu1, variance ~
/// var_slope*N + nu2.
struct DriftFit {
  double mean_slope = 0.0, nu1 = 0.0;
  double var_slope = 0.0, nu2 = 0.0;
  std::vector<double> mean_residuals, var_residuals;
};

DriftFit drift_fit(const std::vector<unsigned>& levels);

/// Affine fit of log E_N[s^tau] against N, compared with the spectral
/// prediction U(tau) = -log(2 rho(-tau)).
struct QuasiPowersFit {
  double tau = 0.0;
  double U_emp = 0.0;
  double V_emp = 0.0;
  double U_spectral = 0.0;
};

QuasiPowersFit quasi_powers_fit(double tau, const std::vector<unsigned>& levels);

/// Fraction of sampled consecutive-fraction gaps at level N whose log,
/// -log s(2^N+m) - log s(2^N+m+1), falls within +- 3*sqrt(2)*sigma*
/// sqrt(N log N) of -2*N*alpha. The negative control centers the band at
/// -N*alpha instead, where essentially no mass lives.
struct GapStatistics {
  unsigned N = 0;
  std::size_t samples = 0;
  double center = 0.0;
  double half_width = 0.0;
  double fraction_in_band = 0.0;
};

GapStatistics gap_statistics(unsigned N, std::size_t samples,
                             std::uint64_t seed,
                             bool negative_control = false);

/// Row sum of 1/s(n) over I_N, exactly and along the float path of the
/// quasi-powers harness (tau = -1 cross-check).
BigRational harmonic_row_sum_exact(unsigned N);
double harmonic_row_sum_float(unsigned N);

}  // namespace sternlab
