#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sternlab/bignum.hpp"

namespace sternlab {

/// Exact dyadic rational m / 2^level with 0 <= m <= 2^level.
struct DyadicPoint {
  BigNat m;
  unsigned level = 0;

  BigRational to_rational() const;
};

/// Conway box function at a dyadic point: Phi(m/2^N) = s(m) / s(m + 2^N),
/// as an exact reduced rational.
BigRational phi_dyadic(const DyadicPoint& p);

/// Question-mark function at an exact rational x in [0,1]. Locates x by
/// mediant descent of the Stern-Brocot tree and emits the binary path as a
/// dyadic rational; terminates because every rational occurs in the tree.
BigRational psi_rational(const BigRational& x);

/// Continued fraction [0; a_1, a_2, ...] with all a_i >= 1. Finite lists
/// are kept canonical (last quotient >= 2 when length > 1).
struct ContinuedFraction {
  std::vector<unsigned long> quotients;

  static ContinuedFraction from_rational(const BigRational& x);
  BigRational value() const;
};

/// Denjoy-series evaluation of the question-mark function,
///   Psi(x) = 2 * sum_{n>=1} (-1)^{n+1} 2^{-(a_1+...+a_n)}.
/// The leading factor 2 is the normalization that makes the series agree
/// with psi_rational (fixed by Psi(1/2) = 1/2).
double psi_series(const ContinuedFraction& cf);

enum class QuadMode { Midpoint, Left };

/// Equal-weight rule approximating integration against the Minkowski
/// measure: nodes are Phi at depth-N_q dyadic midpoints (or left endpoints),
/// each carrying weight 2^-N_q. Immutable after construction.
struct QuadratureRule {
  unsigned depth = 0;
  QuadMode mode = QuadMode::Midpoint;
  std::vector<double> nodes;
  double weight = 1.0;

  std::vector<double> weights() const {
    return std::vector<double>(nodes.size(), weight);
  }
};

inline constexpr unsigned kQuadratureDepthCap = 22;

QuadratureRule build_quadrature(unsigned depth, QuadMode mode = QuadMode::Midpoint);

struct IntegrateOptions {
  /// Replace the [0, 2^-depth] cell by a dyadic refinement that tracks the
  /// Phi(u) ~ 1/log2(1/u) behavior near zero. Needed for integrands that
  /// are singular at 0 (log, floor(1/x), and their squares).
  bool singular_tail = false;
};

/// sum of weight * f(node), ascending node order, compensated summation.
/// Throws on a non-finite f(node), naming the node.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f,
                 IntegrateOptions opts = {});

struct MomentVector {
  unsigned k_max = 0;
  std::vector<double> m;  // m[k] ~ int x^k dmu, k = 0..k_max
};

MomentVector moments(const QuadratureRule& rule, unsigned k_max);

}  // namespace sternlab
