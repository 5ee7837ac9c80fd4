#include "sternlab/clt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sternlab/parallel.hpp"
#include "sternlab/reference.hpp"
#include "sternlab/rng.hpp"
#include "sternlab/stern.hpp"
#include "sternlab/transfer.hpp"

namespace sternlab {
namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void kahan_add(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

EmpiricalDist summarize(unsigned N, std::vector<double> logs, unsigned bins) {
  EmpiricalDist d;
  d.N = N;
  d.count = logs.size();
  d.histogram.assign(bins, 0);
  if (N == 0) {
    // point mass at log 1 = 0; against a continuous law the KS sup is 1/2
    d.ks = 0.5;
    d.histogram[bins / 2] = logs.size();
    return d;
  }
  double s1 = 0.0, c1 = 0.0;
  for (const double x : logs) kahan_add(s1, c1, x);
  d.mean = s1 / static_cast<double>(d.count);
  double s2 = 0.0, c2 = 0.0;
  for (const double x : logs) kahan_add(s2, c2, (x - d.mean) * (x - d.mean));
  d.variance = s2 / static_cast<double>(d.count);

  const double scale = std::sqrt(ref::kSigma2 * N);
  std::sort(logs.begin(), logs.end());
  double ks = 0.0;
  const double n = static_cast<double>(d.count);
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double z = (logs[i] - ref::kAlpha * N) / scale;
    const double cdf = normal_cdf(z);
    ks = std::max(ks, std::max((i + 1) / n - cdf, cdf - i / n));
    const double pos = (z - d.hist_lo) / (d.hist_hi - d.hist_lo) * bins;
    const auto bin = static_cast<std::size_t>(
        std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    ++d.histogram[bin];
  }
  d.ks = ks;
  return d;
}

std::vector<double> enumerated_logs(unsigned N) {
  const std::vector<std::uint64_t> row = row_values(N);
  std::vector<double> logs(row.size());
  parallel_chunks(row.size(), [&](std::size_t, std::size_t begin,
                                  std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      logs[i] = std::log(static_cast<double>(row[i]));
  });
  return logs;
}

struct AffineFit {
  double slope, intercept;
};

AffineFit least_squares(const std::vector<unsigned>& xs,
                        const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += static_cast<double>(xs[i]) * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  return {(n * sxy - sx * sy) / denom, (sxx * sy - sx * sxy) / denom};
}

}  // namespace

EmpiricalDist empirical_dist_enumerated(unsigned N, unsigned bins) {
  if (N > kRowEnumerationCap)
    throw std::invalid_argument("empirical_dist_enumerated: N exceeds cap");
  EmpiricalDist d = summarize(N, enumerated_logs(N), bins);
  d.enumerated = true;
  return d;
}

EmpiricalDist empirical_dist_sampled(unsigned N, std::size_t count,
                                     std::uint64_t seed, unsigned bins) {
  EmpiricalDist d = summarize(N, log_stern_sampler(N, count, seed), bins);
  d.enumerated = false;
  d.seed = seed;
  return d;
}

DriftFit drift_fit(const std::vector<unsigned>& levels) {
  if (levels.size() < 4)
    throw std::invalid_argument("drift_fit: need at least 4 levels");
  std::vector<double> means, vars;
  for (const unsigned N : levels) {
    const EmpiricalDist d = empirical_dist_enumerated(N);
    means.push_back(d.mean);
    vars.push_back(d.variance);
  }
  const AffineFit fm = least_squares(levels, means);
  const AffineFit fv = least_squares(levels, vars);
  DriftFit fit;
  fit.mean_slope = fm.slope;
  fit.nu1 = fm.intercept;
  fit.var_slope = fv.slope;
  fit.nu2 = fv.intercept;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    fit.mean_residuals.push_back(means[i] -
                                 (fm.slope * levels[i] + fm.intercept));
    fit.var_residuals.push_back(vars[i] -
                                (fv.slope * levels[i] + fv.intercept));
  }
  return fit;
}

QuasiPowersFit quasi_powers_fit(double tau,
                                const std::vector<unsigned>& levels) {
  if (levels.size() < 2)
    throw std::invalid_argument("quasi_powers_fit: need at least 2 levels");
  std::vector<double> log_moments;
  for (const unsigned N : levels) {
    const std::vector<std::uint64_t> row = row_values(N);
    double s = 0.0, c = 0.0;
    for (const std::uint64_t v : row)
      kahan_add(s, c, std::pow(static_cast<double>(v), tau));
    log_moments.push_back(std::log(s / static_cast<double>(row.size())));
  }
  const AffineFit fit = least_squares(levels, log_moments);
  QuasiPowersFit out;
  out.tau = tau;
  out.U_emp = fit.slope;
  out.V_emp = fit.intercept;
  out.U_spectral = -std::log(2.0 * solve_rho(Complex(-tau, 0.0)).rho.real());
  return out;
}

GapStatistics gap_statistics(unsigned N, std::size_t samples,
                             std::uint64_t seed, bool negative_control) {
  if (N == 0 || N > 64)
    throw std::invalid_argument("gap_statistics: 1 <= N <= 64");
  if (samples == 0)
    throw std::invalid_argument("gap_statistics: samples >= 1");
  GapStatistics gs;
  gs.N = N;
  gs.samples = samples;
  gs.center = (negative_control ? -1.0 : -2.0) * N * ref::kAlpha;
  gs.half_width = ref::kGapBandSigmas * std::sqrt(2.0 * ref::kSigma2) *
                  std::sqrt(N * std::log(static_cast<double>(N)));
  std::vector<std::size_t> hits(chunk_count(samples), 0);
  parallel_chunks(samples, [&](std::size_t chunk, std::size_t begin,
                               std::size_t end) {
    std::size_t in_band = 0;
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, /*stream=*/i);
      const BitWord w = BitWord::random(N, rng);
      const auto [s_next, s] = stern_pair_by_word(w);
      const double log_gap = -(log_big(s) + log_big(s_next));
      if (std::abs(log_gap - gs.center) <= gs.half_width) ++in_band;
    }
    hits[chunk] = in_band;
  });
  std::size_t total = 0;
  for (const std::size_t h : hits) total += h;
  gs.fraction_in_band =
      static_cast<double>(total) / static_cast<double>(samples);
  return gs;
}

BigRational harmonic_row_sum_exact(unsigned N) {
  if (N > 12) throw std::invalid_argument("harmonic_row_sum_exact: N <= 12");
  BigRational sum = 0;
  for (const std::uint64_t v : row_values(N)) {
    BigRational r(1, static_cast<unsigned long>(v));
    r.canonicalize();
    sum += r;
  }
  return sum;
}

double harmonic_row_sum_float(unsigned N) {
  double s = 0.0, c = 0.0;
  for (const std::uint64_t v : row_values(N))
    kahan_add(s, c, std::pow(static_cast<double>(v), -1.0));
  return s;
}

}  // namespace sternlab
