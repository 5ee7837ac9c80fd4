// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sternlab/clt.hpp"
#include "sternlab/constants.hpp"
#include "sternlab/dynamics.hpp"
#include "sternlab/minkowski.hpp"
#include "sternlab/reference.hpp"
#include "sternlab/rng.hpp"
#include "sternlab/stern.hpp"
#include "sternlab/transfer.hpp"

using namespace sternlab;

namespace {

int g_failures = 0;

void report(int idx, const char* name, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%s: criterion %d (%s) [%.1fs]%s\n", ok ? "PASS" : "FAIL", idx,
              name, secs, note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool exactness_suite() {
  const std::vector<unsigned> head = {0, 1, 1, 2, 1, 3, 2, 3, 1,
                                      4, 3, 5, 2, 5, 3, 4, 1};
  for (std::size_t n = 0; n < head.size(); ++n)
    if (stern(static_cast<std::uint64_t>(n)) != head[n]) return false;

  CounterRng rng(2718);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t len = 1 + rng.next_below(256);
    const BitWord w = BitWord::random(len, rng);
    const BigNat n = w.to_index();
    const auto [next, cur] = stern_pair_by_word(w);
    if (cur != stern(n) || next != stern(n + 1)) return false;
  }
  for (unsigned N = 0; N <= 20; ++N) {
    const auto row = row_values(N);
    std::uint64_t mx = 0;
    for (const std::uint64_t v : row) mx = std::max(mx, v);
    if (mx != fibonacci(N + 2)) return false;
  }
  if (!gap_identity_check(12)) return false;
  if (!conjugacy_check(12)) return false;
  const auto row12 = row_values(12);
  for (unsigned long m = 1; m <= (1u << 12); ++m) {
    const BigNat expect = (m < row12.size()) ? BigNat(row12[m]) : BigNat(1);
    if (stern_via_gauss_product({m, 12}) != expect) return false;
  }
  const auto h16 = k_histogram(16);
  BigNat binom;
  for (unsigned r = 0; r <= 16; ++r) {
    mpz_bin_uiui(binom.get_mpz_t(), 16, r);
    if (h16[r] != binom) return false;
  }
  return true;
}

bool alpha_cross_validation() {
  const QuadratureRule rule = build_quadrature(20);
  McConfig mc;
  mc.walk_length = 500;
  mc.walks = 20000;
  mc.seed = 1;
  const AlphaReport rep = alpha_all_routes(rule, mc);  // throws on failure
  for (const double v : {rep.alpha_logx, rep.alpha_log1px, rep.alpha_bacher,
                         rep.alpha_entropy, rep.alpha_furstenberg})
    if (std::abs(v - 0.396212) >= 5e-4) return false;
  return rep.spread < 5e-4 && std::abs(rep.alpha_spectral - 0.396212) < 1e-5;
}

bool transfer_operator_suite() {
  const SpectralData sd = dominant_eig(build_operator({0, 0}, {0.5, 0}));
  if (std::abs(sd.lambda - 1.0) >= 1e-10) return false;
  if ((sd.right_eig.array() - 1.0).abs().maxCoeff() > 1e-8) return false;
  const LambdaDerivatives d = lambda_derivatives({0, 0}, {0.5, 0});
  if (std::abs(d.dlambda_dz - 4.0) >= 1e-8) return false;
  if (std::abs(d.dlambda_dtau + 2 * ref::kAlpha) >= 2e-4) return false;
  const Complex l32 = dominant_eig(build_operator({0.05, 0}, {0.48, 0}, 32)).lambda;
  const Complex l64 = dominant_eig(build_operator({0.05, 0}, {0.48, 0}, 64)).lambda;
  if (std::abs(l32 - l64) >= 1e-10) return false;
  return std::abs(solve_rho({0, 0}).rho - 0.5) < 1e-12;
}

bool sigma2_cross_validation() {
  const SigmaReport rep = sigma2_all_routes(17, 13);  // throws on failure
  for (const double v :
       {rep.sigma2_quadrature, rep.sigma2_alt, rep.sigma2_spectral})
    if (v <= 0 || std::abs(v - 0.022173) >= 1e-3) return false;
  return rep.spread < 1e-3;
}

bool generating_function_consistency() {
  for (const auto& [tau, z] :
       std::vector<std::pair<double, double>>{{0.3, 0.4}, {-0.3, 0.3}}) {
    const QuasiInverse qi = quasi_inverse_partial_sum({tau, 0}, {z, 0});
    const SternSeries ds = direct_stern_series(tau, z, 20);
    if (std::abs(qi.value - ds.value) >= qi.tail_bound + ds.tail_bound() + 1e-10)
      return false;
  }
  return true;
}

bool clt_suite() {
  const EmpiricalDist d = empirical_dist_enumerated(20);
  if (std::abs(d.mean / 20 - ref::kAlpha) >= 0.01) return false;
  if (d.ks >= ref::kKsKappa / std::sqrt(20.0)) return false;
  std::vector<unsigned> levels;
  for (unsigned N = 12; N <= 24; ++N) levels.push_back(N);
  for (const double tau : {0.05, -0.05}) {
    const QuasiPowersFit fit = quasi_powers_fit(tau, levels);
    if (std::abs(fit.U_emp - fit.U_spectral) >= 1e-3) return false;
  }
  const DriftFit fit = drift_fit(levels);
  return std::abs(fit.mean_slope - 0.396212) < 1e-3;
}

bool lyapunov_monte_carlo() {
  const McEstimate e = lyapunov_mc(2000, 100000, 1);
  return std::abs(e.value - ref::kAlpha) <= 3 * e.std_error;
}

bool stationarity_defect_small() {
  return stationarity_defect(build_quadrature(20)) < 1e-5;
}

}  // namespace

int main() {
  report(1, "exactness suite", exactness_suite);
  report(2, "alpha cross-validation", alpha_cross_validation);
  report(3, "transfer-operator suite", transfer_operator_suite);
  report(4, "sigma^2 cross-validation", sigma2_cross_validation);
  report(5, "generating-function consistency", generating_function_consistency);
  report(6, "CLT suite", clt_suite);
  report(7, "Lyapunov Monte Carlo", lyapunov_monte_carlo);
  report(8, "stationarity defect", stationarity_defect_small);
  return g_failures == 0 ? 0 : 1;
}
