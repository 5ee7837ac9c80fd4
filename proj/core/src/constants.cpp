#include "sternlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sternlab/parallel.hpp"
#include "sternlab/rng.hpp"
#include "sternlab/stern.hpp"
#include "sternlab/transfer.hpp"

namespace sternlab {
namespace {

double kahan_total(const std::vector<double>& parts) {
  double sum = 0.0, c = 0.0;
  for (const double p : parts) {
    const double y = p - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

McEstimate lyapunov_mc(unsigned walk_length, std::size_t walks,
                       std::uint64_t seed) {
  if (walk_length == 0 || walks == 0)
    throw std::invalid_argument("lyapunov_mc: walk_length, walks >= 1");
  const unsigned burn = walk_length / 2;
  std::vector<double> sum1(chunk_count(walks), 0.0), sum2(sum1.size(), 0.0);
  parallel_chunks(walks, [&](std::size_t chunk, std::size_t begin,
                             std::size_t end) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, /*stream=*/i);
      BigNat a = 1, b = 1;  // (s(prefix), s(prefix+1)), prefix = 1
      double log_burn = 0.0;
      for (unsigned step = 1; step <= walk_length; ++step) {
        if (rng.next_bit())
          a += b;
        else
          b += a;
        if (step == burn) log_burn = log_big(a);
      }
      const double x = (log_big(a) - log_burn) / (walk_length - burn);
      s1 += x;
      s2 += x * x;
    }
    sum1[chunk] = s1;
    sum2[chunk] = s2;
  });
  const double n = static_cast<double>(walks);
  McEstimate est;
  est.value = kahan_total(sum1) / n;
  const double var = kahan_total(sum2) / n - est.value * est.value;
  est.std_error = std::sqrt(std::max(var, 0.0) / n);
  return est;
}

AlphaReport alpha_all_routes(const QuadratureRule& rule, const McConfig& mc,
                             double perturb) {
  if (rule.depth < 16)
    throw std::invalid_argument("alpha_all_routes: rule depth >= 16");
  AlphaReport r;
  r.alpha_log1px =
      integrate(rule, [](double x) { return std::log1p(x); }) + perturb;
  r.alpha_logx = -0.5 * integrate(rule, [](double x) { return std::log(x); },
                                  {.singular_tail = true});
  r.alpha_entropy =
      0.5 * integrate(rule, [](double x) {
        return -2.0 * std::log(std::max(x, 1.0 - x));
      });
  const MomentVector mv = moments(rule, 48);
  {
    double s = 0.0;
    for (unsigned k = 48; k >= 1; --k)
      s += mv.m[k] / (k * std::ldexp(1.0, static_cast<int>(k)));
    r.alpha_bacher = std::numbers::ln2 - s;
  }
  r.alpha_furstenberg =
      0.25 * integrate(rule,
                       [](double x) {
                         return std::log1p(x) + std::log1p(1.0 / x);
                       },
                       {.singular_tail = true});
  r.alpha_spectral = log_rho_derivatives().alpha;
  const McEstimate mce = lyapunov_mc(mc.walk_length, mc.walks, mc.seed);
  r.alpha_lyapunov = mce.value;
  r.alpha_lyapunov_stderr = mce.std_error;

  const std::vector<std::pair<const char*, double>> det = {
      {"logx", r.alpha_logx},
      {"log1px", r.alpha_log1px},
      {"bacher", r.alpha_bacher},
      {"entropy", r.alpha_entropy},
      {"furstenberg", r.alpha_furstenberg}};
  double lo = det[0].second, hi = det[0].second;
  for (const auto& [name, v] : det) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.spread = hi - lo;
  if (r.spread >= 5e-4) {
    // name the route farthest from the pack
    double mid = (lo + hi) / 2;
    const char* outlier = det[0].first;
    double worst = 0.0;
    for (const auto& [name, v] : det)
      if (std::abs(v - mid) > worst) {
        worst = std::abs(v - mid);
        outlier = name;
      }
    std::ostringstream msg;
    msg << "alpha_all_routes: cross-validation failure, spread " << r.spread
        << " >= 5e-4; outlier route: " << outlier;
    throw std::runtime_error(msg.str());
  }
  if (std::abs(r.alpha_spectral - r.alpha_log1px) >= 2e-4)
    throw std::runtime_error(
        "alpha_all_routes: spectral route disagrees with log(1+x) route "
        "beyond 2e-4");
  if (std::abs(r.alpha_lyapunov - r.alpha_spectral) >
      3.0 * r.alpha_lyapunov_stderr)
    throw std::runtime_error(
        "alpha_all_routes: Monte Carlo interval (3 standard errors) misses "
        "the spectral value");
  return r;
}

double stationarity_defect(const QuadratureRule& rule) {
  using Fn = std::function<double(double)>;
  const auto xi = [&](const Fn& f) {
    return 0.5 * integrate(rule, f) +
           0.5 * integrate(rule, [&](double x) { return f(1.0 / x); });
  };
  const auto defect = [&](const Fn& f) {
    const double lhs = xi(f);
    const double rhs = 0.5 * (xi([&](double x) { return f(x + 1.0); }) +
                              xi([&](double x) { return f(x / (1.0 + x)); }));
    return std::abs(lhs - rhs);
  };
  const std::vector<Fn> tests = {
      [](double) { return 1.0; },
      [](double x) { return 1.0 / (1.0 + x); },
      [](double x) { return x / (1.0 + x); },
      [](double x) { return std::log((1.0 + x) / (2.0 + x)); }};
  double worst = 0.0;
  for (const auto& f : tests) worst = std::max(worst, defect(f));
  return worst;
}

SigmaReport sigma2_all_routes(unsigned outer_depth, unsigned inner_depth,
                              double perturb) {
  if (outer_depth < 14 || inner_depth < 10)
    throw std::invalid_argument(
        "sigma2_all_routes: need outer_depth >= 14, inner_depth >= 10");
  const LogRhoDerivatives lr = log_rho_derivatives();
  const double alpha = lr.alpha;

  const QuadratureRule outer = build_quadrature(outer_depth);
  const QuadratureRule inner = build_quadrature(inner_depth);
  const auto L = [&](double x) {
    double s = 0.0;
    for (const double y : inner.nodes) s += std::log1p(x * y);
    return inner.weight * s;
  };

  // Outer sum, skipping the cell at 0 (refined below): the integrand
  // contains log x and floor(1/x), both singular there.
  const std::size_t n = outer.nodes.size();
  std::vector<double> pa(chunk_count(n), 0.0), pb(pa.size(), 0.0);
  parallel_chunks(n, [&](std::size_t chunk, std::size_t begin,
                         std::size_t end) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = std::max<std::size_t>(begin, 1); i < end; ++i) {
      const double x = outer.nodes[i];
      const double inv = 1.0 / x;
      const double u = std::log(x) + alpha * std::floor(inv);
      const double Lx = L(x);
      const double g = u + L(inv - std::floor(inv)) - Lx;
      sa += 0.5 * g * g;
      sb += 0.5 * u * u - u * Lx;
    }
    pa[chunk] = sa;
    pb[chunk] = sb;
  });
  double s2a = outer.weight * kahan_total(pa);
  double s2b = outer.weight * kahan_total(pb);
  // Dyadic refinement of [0, 2^-outer_depth]: subcell midpoints map to
  // 2/(2k+3), where 1/x = k + 3/2 so floor(1/x) = k+1 and frac(1/x) = 1/2.
  const double Lhalf = L(0.5);
  for (unsigned k = outer_depth; k < outer_depth + 400; ++k) {
    const double x = 2.0 / (2.0 * k + 3.0);
    const double u = std::log(x) + alpha * (k + 1.0);
    const double Lx = L(x);
    const double g = u + Lhalf - Lx;
    const double w = std::ldexp(1.0, -static_cast<int>(k) - 1);
    s2a += w * 0.5 * g * g;
    s2b += w * (0.5 * u * u - u * Lx);
  }

  SigmaReport rep;
  rep.sigma2_quadrature = s2a + perturb;
  rep.sigma2_alt = s2b;
  rep.sigma2_spectral = lr.sigma2;
  const double lo = std::min({rep.sigma2_quadrature, rep.sigma2_alt,
                              rep.sigma2_spectral});
  const double hi = std::max({rep.sigma2_quadrature, rep.sigma2_alt,
                              rep.sigma2_spectral});
  rep.spread = hi - lo;
  if (lo <= 0.0)
    throw std::runtime_error(
        "sigma2_all_routes: nonpositive variance estimate");
  if (rep.spread >= 1e-3)
    throw std::runtime_error(
        "sigma2_all_routes: route spread exceeds 1e-3");
  return rep;
}

PartitionEntropy partition_entropy(unsigned N) {
  if (N > 22) throw std::invalid_argument("partition_entropy: N <= 22");
  const std::vector<std::uint64_t> row = row_values(N);
  const double w = std::ldexp(1.0, -static_cast<int>(N));
  double lhs = 0.0, cl = 0.0, rhs = 0.0, cr = 0.0;
  const auto add = [](double& sum, double& comp, double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  for (std::size_t m = 0; m < row.size(); ++m) {
    const double log_m = std::log(static_cast<double>(row[m]));
    const double log_next =
        (m + 1 < row.size()) ? std::log(static_cast<double>(row[m + 1])) : 0.0;
    add(lhs, cl, log_m + log_next);
    add(rhs, cr, 2.0 * log_m);
  }
  PartitionEntropy pe{w * lhs, w * rhs};
  // Same multiset of logarithms on both sides: anything beyond roundoff is
  // an arithmetic fault.
  if (std::abs(pe.lhs - pe.rhs) > 1e-12 * std::max(1.0, std::abs(pe.rhs)))
    throw std::logic_error("partition_entropy: identity violated");
  return pe;
}

double h_apply(const std::function<double(double)>& f, double x,
               unsigned n_terms) {
  double s = 0.0;
  for (unsigned n = 1; n <= n_terms; ++n)
    s += std::ldexp(f(1.0 / (n + x)), -static_cast<int>(n));
  return s;
}

double psi_fn(double x, double alpha) {
  return std::floor(1.0 / x) + std::log(x) / alpha;
}

double chi1(double x, const QuadratureRule& inner, double alpha) {
  return -integrate(inner, [x](double y) { return std::log1p(x * y); }) /
         alpha;
}

double psi_hat(double x, const QuadratureRule& inner, double alpha) {
  const double g = 1.0 / x - std::floor(1.0 / x);
  return psi_fn(x, alpha) + chi1(x, inner, alpha) - chi1(g, inner, alpha);
}

}  // namespace sternlab
