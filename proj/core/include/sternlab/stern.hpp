#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sternlab/bignum.hpp"
#include "sternlab/rng.hpp"

namespace sternlab {

/// A word in {0,1}^N. bits[j] is the coefficient of 2^j in n - 2^N, so the
/// word addresses the index n = 2^N + sum_j bits[j] 2^j in row N.
struct BitWord {
  std::vector<std::uint8_t> bits;

  std::size_t length() const { return bits.size(); }
  BigNat to_index() const;
  static BitWord from_index(const BigNat& n);
  static BitWord random(std::size_t length, CounterRng& rng);
};

/// s(n) by the pair recurrence over the bits of n. Exact for any n.
BigNat stern(const BigNat& n);
BigNat stern(std::uint64_t n);

/// (s(n+1), s(n)) for the n encoded by w, by left-to-right action of the
/// matrices A0 = [[1,1],[0,1]], A1 = [[1,0],[1,1]] on (1,1)^T.
std::pair<BigNat, BigNat> stern_pair_by_word(const BitWord& w);

inline constexpr unsigned kRowEnumerationCap = 24;

/// s(n) for n in I_N = [2^N, 2^{N+1}), increasing n. Values in this range
/// are bounded by F_{N+2} <= F_26 = 121393, so 64-bit storage is exact.
std::vector<std::uint64_t> row_values(unsigned N);

/// One doubling step: row over I_{N+1} from row over I_N.
std::vector<std::uint64_t> next_row(const std::vector<std::uint64_t>& row);

/// `count` independent draws of log s(n), n uniform in I_N. Exact big-number
/// evaluation, converted to double at the end. Deterministic in (N, count,
/// seed) independent of thread count.
std::vector<double> log_stern_sampler(unsigned N, std::size_t count,
                                      std::uint64_t seed);

/// Exact verification of the consecutive-ratio gap identity
///   s(m+1)/s(2^N+m+1) - s(m)/s(2^N+m) = 1/(s(2^N+m) s(2^N+m+1))
/// over all 0 <= m < 2^N. The optional perturbation overrides s at one
/// index (negative-control hook).
bool gap_identity_check(unsigned N, std::int64_t perturb_index = -1,
                        std::uint64_t perturb_value = 0);

/// Truncated generating series sum_{N<=N_max} z^N sum_{n in I_N} s(n)^{-tau}.
/// Also reports the last term's magnitude and the empirical term ratio, from
/// which callers derive a geometric tail bound.
struct SternSeries {
  double value;
  double last_term;
  double term_ratio;  // |term_{N_max}| / |term_{N_max-1}|
  double tail_bound() const {
    return term_ratio < 1.0 ? last_term * term_ratio / (1.0 - term_ratio)
                            : 1e300;
  }
};
SternSeries direct_stern_series(double tau, double z, unsigned n_max);

}  // namespace sternlab
