#include "sternlab/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sternlab/parallel.hpp"
#include "sternlab/stern.hpp"

namespace sternlab {

BigRational DyadicPoint::to_rational() const {
  BigRational r(m, pow2(level));
  r.canonicalize();
  return r;
}

BigRational phi_dyadic(const DyadicPoint& p) {
  if (p.m < 0 || p.m > pow2(p.level))
    throw std::domain_error("phi_dyadic: m outside [0, 2^level]");
  BigRational r(stern(p.m), stern(p.m + pow2(p.level)));
  r.canonicalize();
  return r;
}

BigRational psi_rational(const BigRational& x) {
  if (x < 0 || x > 1) throw std::domain_error("psi_rational: x outside [0,1]");
  if (x == 0 || x == 1) return x;
  // Walk down the mediant tree; the branch taken at each level is one
  // binary digit of the image. x is hit exactly after finitely many steps.
  BigNat ln = 0, ld = 1, rn = 1, rd = 1;  // current bracket [ln/ld, rn/rd]
  BigNat num = 0;
  unsigned level = 0;
  for (;;) {
    const BigNat mn = ln + rn, md = ld + rd;
    BigRational mid(mn, md);  // mediants of reduced brackets are reduced
    ++level;
    const int c = cmp(x, mid);
    if (c == 0) {
      BigRational out(2 * num + 1, pow2(level));
      out.canonicalize();
      return out;
    }
    if (c < 0) {
      rn = mn;
      rd = md;
      num = 2 * num;
    } else {
      ln = mn;
      ld = md;
      num = 2 * num + 1;
    }
  }
}

ContinuedFraction ContinuedFraction::from_rational(const BigRational& x) {
  if (x < 0 || x > 1)
    throw std::domain_error("ContinuedFraction::from_rational: x outside [0,1]");
  ContinuedFraction cf;
  BigNat p = x.get_num(), q = x.get_den();
  // x = [0; a_1, a_2, ...]: Euclid on q/p. The algorithm emits the canonical
  // form (last quotient >= 2) except for x = 1, which is [0; 1].
  while (p != 0) {
    BigNat a = q / p;
    cf.quotients.push_back(a.get_ui());
    BigNat r = q % p;
    q = p;
    p = r;
  }
  return cf;
}

BigRational ContinuedFraction::value() const {
  BigRational v = 0;
  for (std::size_t i = quotients.size(); i-- > 0;)
    v = BigRational(1) / (BigRational(quotients[i]) + v);
  return v;
}

double psi_series(const ContinuedFraction& cf) {
  double sum = 0.0;
  long expo = 0;
  double sign = 1.0;
  for (const unsigned long a : cf.quotients) {
    expo += static_cast<long>(a);
    if (expo > 1074) break;  // below double underflow; tail is < 2^-1074
    sum += sign * std::ldexp(1.0, -static_cast<int>(expo));
    sign = -sign;
  }
  return 2.0 * sum;
}

QuadratureRule build_quadrature(unsigned depth, QuadMode mode) {
  if (depth > kQuadratureDepthCap)
    throw std::invalid_argument("build_quadrature: depth " +
                                std::to_string(depth) + " exceeds cap " +
                                std::to_string(kQuadratureDepthCap));
  // Mediant-tree row at `depth`: fractions s(m)/s(m+2^depth), m = 0..2^depth.
  // All numerators/denominators are below F_24 = 46368, so 64-bit is exact.
  std::vector<std::uint64_t> cn{0, 1}, cd{1, 1};
  for (unsigned k = 0; k < depth; ++k) {
    std::vector<std::uint64_t> nn(2 * cn.size() - 1), nd(nn.size());
    for (std::size_t i = 0; i + 1 < cn.size(); ++i) {
      nn[2 * i] = cn[i];
      nd[2 * i] = cd[i];
      nn[2 * i + 1] = cn[i] + cn[i + 1];
      nd[2 * i + 1] = cd[i] + cd[i + 1];
    }
    nn.back() = cn.back();
    nd.back() = cd.back();
    cn.swap(nn);
    cd.swap(nd);
  }
  QuadratureRule rule;
  rule.depth = depth;
  rule.mode = mode;
  rule.weight = std::ldexp(1.0, -static_cast<int>(depth));
  const std::size_t cells = cn.size() - 1;
  rule.nodes.resize(cells);
  if (mode == QuadMode::Midpoint) {
    // One extra mediant level: node i is the image of the cell midpoint.
    for (std::size_t i = 0; i < cells; ++i)
      rule.nodes[i] = static_cast<double>(cn[i] + cn[i + 1]) /
                      static_cast<double>(cd[i] + cd[i + 1]);
  } else {
    for (std::size_t i = 0; i < cells; ++i)
      rule.nodes[i] = static_cast<double>(cn[i]) / static_cast<double>(cd[i]);
  }
  return rule;
}

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

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f,
                 IntegrateOptions opts) {
  const std::size_t n = rule.nodes.size();
  const std::size_t start =
      (opts.singular_tail && rule.mode == QuadMode::Midpoint && n > 0) ? 1 : 0;
  std::vector<double> partial(chunk_count(n), 0.0);
  parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    double sum = 0.0, c = 0.0;
    for (std::size_t i = std::max(begin, start); i < end; ++i) {
      const double v = f(rule.nodes[i]);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrate: non-finite integrand at node " << rule.nodes[i];
        throw std::domain_error(msg.str());
      }
      const double y = v - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    partial[chunk] = sum;
  });
  double total = rule.weight * kahan_total(partial);
  if (start == 1) {
    // Dyadic refinement of the first cell [0, 2^-depth]: the image measure
    // gives mass 2^-(k+1) to each subcell [2^-(k+1), 2^-k], whose midpoint
    // maps to 2/(2k+3).
    double sum = 0.0, c = 0.0;
    for (unsigned k = rule.depth; k < rule.depth + 400; ++k) {
      const double x = 2.0 / (2.0 * k + 3.0);
      const double v = f(x);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrate: non-finite integrand at node " << x;
        throw std::domain_error(msg.str());
      }
      const double term = std::ldexp(v, -static_cast<int>(k) - 1);
      const double y = term - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    total += sum;
  }
  return total;
}

MomentVector moments(const QuadratureRule& rule, unsigned k_max) {
  if (k_max == 0 || k_max > 64)
    throw std::invalid_argument("moments: require 1 <= k_max <= 64");
  MomentVector mv;
  mv.k_max = k_max;
  mv.m.resize(k_max + 1);
  mv.m[0] = 1.0;
  for (unsigned k = 1; k <= k_max; ++k)
    mv.m[k] = integrate(rule, [k](double x) {
      return std::pow(x, static_cast<double>(k));
    });
  return mv;
}

}  // namespace sternlab
