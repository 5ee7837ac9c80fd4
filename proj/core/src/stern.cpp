#include "sternlab/stern.hpp"

#include <cmath>
#include <stdexcept>

#include "sternlab/parallel.hpp"

namespace sternlab {

BigNat BitWord::to_index() const {
  BigNat n = 1;
  for (std::size_t j = bits.size(); j-- > 0;) {
    n <<= 1;
    if (bits[j]) n += 1;
  }
  return n;
}

BitWord BitWord::from_index(const BigNat& n) {
  if (n < 1) throw std::invalid_argument("BitWord::from_index: n must be >= 1");
  const std::size_t top = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
  BitWord w;
  w.bits.resize(top);
  for (std::size_t j = 0; j < top; ++j)
    w.bits[j] = static_cast<std::uint8_t>(mpz_tstbit(n.get_mpz_t(), j));
  return w;
}

BitWord BitWord::random(std::size_t length, CounterRng& rng) {
  BitWord w;
  w.bits.resize(length);
  for (auto& b : w.bits) b = static_cast<std::uint8_t>(rng.next_bit());
  return w;
}

BigNat stern(const BigNat& n) {
  if (n == 0) return 0;
  // Maintain (s(k), s(k+1)) while extending the prefix k of n bit by bit.
  BigNat a = 1, b = 1;  // k = 1: (s(1), s(2))
  const std::size_t top = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
  for (std::size_t i = top; i-- > 0;) {
    if (mpz_tstbit(n.get_mpz_t(), i))
      a += b;  // k -> 2k+1: (s(k)+s(k+1), s(k+1))
    else
      b += a;  // k -> 2k:   (s(k), s(k)+s(k+1))
  }
  return a;
}

BigNat stern(std::uint64_t n) { return stern(BigNat(static_cast<unsigned long>(n))); }

std::pair<BigNat, BigNat> stern_pair_by_word(const BitWord& w) {
  // v = A_{e_0} ... A_{e_{N-1}} (1,1)^T, applied innermost-first.
  BigNat top = 1, bot = 1;  // (s(n+1), s(n)) for the empty word (n = 1)
  for (std::size_t j = w.bits.size(); j-- > 0;) {
    if (w.bits[j])
      bot += top;  // A1: (a, b) -> (a, a+b)
    else
      top += bot;  // A0: (a, b) -> (a+b, b)
  }
  return {top, bot};
}

std::vector<std::uint64_t> next_row(const std::vector<std::uint64_t>& row) {
  std::vector<std::uint64_t> out(2 * row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    const std::uint64_t right = (i + 1 < row.size()) ? row[i + 1] : 1;
    out[2 * i] = row[i];
    out[2 * i + 1] = row[i] + right;
  }
  return out;
}

std::vector<std::uint64_t> row_values(unsigned N) {
  if (N > kRowEnumerationCap)
    throw std::invalid_argument("row_values: level " + std::to_string(N) +
                                " exceeds enumeration cap " +
                                std::to_string(kRowEnumerationCap));
  std::vector<std::uint64_t> row{1};  // I_0 = {1}
  for (unsigned k = 0; k < N; ++k) row = next_row(row);
  return row;
}

std::vector<double> log_stern_sampler(unsigned N, std::size_t count,
                                      std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("log_stern_sampler: count >= 1");
  std::vector<double> out(count);
  parallel_chunks(count, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, /*stream=*/i);
      BitWord w = BitWord::random(N, rng);
      auto [snext, s] = stern_pair_by_word(w);
      (void)snext;
      out[i] = log_big(s);
    }
  });
  return out;
}

bool gap_identity_check(unsigned N, std::int64_t perturb_index,
                        std::uint64_t perturb_value) {
  if (N > 16) throw std::invalid_argument("gap_identity_check: N <= 16");
  // s over [0, 2^{N+1}]: prefix [0,1] then rows I_1 .. I_N, then s(2^{N+1})=1.
  std::vector<std::uint64_t> s{0, 1};
  std::vector<std::uint64_t> row{1};
  for (unsigned k = 1; k <= N; ++k) {
    row = next_row(row);
    s.insert(s.end(), row.begin(), row.end());
  }
  s.push_back(1);
  if (perturb_index >= 0 && static_cast<std::size_t>(perturb_index) < s.size())
    s[static_cast<std::size_t>(perturb_index)] = perturb_value;

  const auto frac = [](std::uint64_t num, std::uint64_t den) {
    BigRational r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    r.canonicalize();
    return r;
  };
  const std::uint64_t half = 1ull << N;
  for (std::uint64_t m = 0; m < half; ++m) {
    const BigRational lhs =
        frac(s[m + 1], s[half + m + 1]) - frac(s[m], s[half + m]);
    BigRational rhs = frac(1, s[half + m]) / frac(s[half + m + 1], 1);
    if (lhs != rhs) return false;
  }
  return true;
}

SternSeries direct_stern_series(double tau, double z, unsigned n_max) {
  double total = 1.0;  // N = 0: s(1)^{-tau} = 1
  double prev = 1.0, last = 1.0;
  std::vector<std::uint64_t> row{1};
  double zn = 1.0;
  for (unsigned N = 1; N <= n_max; ++N) {
    row = next_row(row);
    zn *= z;
    double sum = 0.0, c = 0.0;
    for (const std::uint64_t v : row) {
      const double term = std::pow(static_cast<double>(v), -tau);
      const double y = term - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    prev = last;
    last = zn * sum;
    total += last;
  }
  return {total, std::abs(last), std::abs(last) / std::abs(prev)};
}

}  // namespace sternlab
