#include "sternlab/dynamics.hpp"

#include <bit>
#include <stdexcept>

#include "sternlab/stern.hpp"

namespace sternlab {
namespace {

BigRational half() { return BigRational(1, 2); }

BigRational canon(BigRational r) {
  r.canonicalize();
  return r;
}

/// Exact dyadic representation of a rational whose denominator is a power
/// of two (after reduction).
DyadicPoint dyadic_from_rational(const BigRational& x) {
  BigRational r = canon(x);
  const BigNat den = r.get_den();
  const std::size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
  if (den != pow2(bits - 1))
    throw std::invalid_argument("dyadic_from_rational: denominator not 2^k");
  DyadicPoint p;
  p.m = r.get_num();
  p.level = static_cast<unsigned>(bits - 1);
  return p;
}

}  // namespace

BigRational eval_map(MapTag map, const BigRational& x) {
  if (x < 0 || x > 1) throw std::domain_error("eval_map: x outside [0,1]");
  switch (map) {
    case MapTag::Binary:
      return canon(x <= half() ? BigRational(2 * x) : BigRational(2 - 2 * x));
    case MapTag::BinaryJump: {
      if (x == 0 || x == 1) return 0;
      // Find the branch [2^-k, 2^-k+1) containing x, then apply 2 - 2^k x.
      BigRational y = x;
      while (y < 1) y *= 2;
      return canon(2 - y);
    }
    case MapTag::Farey: {
      if (x == 1) return 0;
      return canon(x <= half() ? BigRational(x / (1 - x))
                               : BigRational((1 - x) / x));
    }
    case MapTag::Gauss: {
      if (x == 0 || x == 1) return 0;
      // Branch index n = ceil(1/x) - 1, so the branch over (1/(n+1), 1/n]
      // is closed on the right and the image lies in (0, 1].  This matches
      // the closed-left branch convention of the jump map at the dyadic
      // endpoints 2^-k, making the conjugacy exact there as well.
      const BigRational inv = 1 / x;
      BigNat n;
      mpz_cdiv_q(n.get_mpz_t(), inv.get_num().get_mpz_t(),
                 inv.get_den().get_mpz_t());
      --n;
      return canon(inv - BigRational(n));
    }
  }
  throw std::logic_error("eval_map: unknown map tag");
}

bool conjugacy_check(unsigned N, bool negative_control) {
  if (N > 12) throw std::invalid_argument("conjugacy_check: N <= 12");
  const BigNat top = pow2(N);
  for (BigNat m = 0; m <= top; ++m) {
    const DyadicPoint p{m, N};
    const BigRational phi = phi_dyadic(p);
    const MapTag plain_side = negative_control ? MapTag::Gauss : MapTag::Farey;
    const BigRational lhs_plain =
        phi_dyadic(dyadic_from_rational(eval_map(MapTag::Binary, p.to_rational())));
    if (lhs_plain != eval_map(plain_side, phi)) return false;
    const BigRational lhs_jump = phi_dyadic(
        dyadic_from_rational(eval_map(MapTag::BinaryJump, p.to_rational())));
    if (lhs_jump != eval_map(MapTag::Gauss, phi)) return false;
  }
  return true;
}

OrbitRecord orbit(const DyadicPoint& p) {
  if (p.m == 0)
    throw std::domain_error("orbit: m = 0 never reaches 1 (fixed point)");
  if (p.m > pow2(p.level)) throw std::domain_error("orbit: m > 2^N");
  OrbitRecord rec;
  rec.start = p;
  BigNat m = p.m;
  unsigned N = p.level;
  for (;;) {
    rec.jump_orbit.push_back({m, N});
    if (m == pow2(N)) break;  // reached the point 1
    rec.gauss_orbit.push_back(phi_dyadic({m, N}));
    // One jump step in exact dyadic coordinates: m/2^N in [2^-k, 2^-k+1)
    // with k = N - N' and N' = bitlength(m) - 1 maps to (2^(N'+1) - m)/2^N'.
    const unsigned Np =
        static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2)) - 1;
    m = pow2(Np + 1) - m;
    N = Np;
  }
  rec.K = static_cast<unsigned>(rec.gauss_orbit.size());
  return rec;
}

std::vector<std::uint64_t> k_histogram(unsigned N) {
  if (N > 16) throw std::invalid_argument("k_histogram: N <= 16");
  std::vector<std::uint64_t> counts(N + 1, 0);
  const std::uint64_t top = 1ull << N;
  for (std::uint64_t m0 = 1; m0 <= top; ++m0) {
    std::uint64_t m = m0;
    unsigned level = N, K = 0;
    while (m != (1ull << level)) {
      const unsigned Np = std::bit_width(m) - 1;
      m = (1ull << (Np + 1)) - m;
      level = Np;
      ++K;
    }
    ++counts[K];
  }
  return counts;
}

BigNat stern_via_gauss_product(const DyadicPoint& p) {
  const OrbitRecord rec = orbit(p);
  BigRational prod = 1;
  for (const BigRational& v : rec.gauss_orbit) prod *= v;
  const BigRational s = canon(1 / prod);
  if (s.get_den() != 1)
    throw std::logic_error(
        "stern_via_gauss_product: inverted orbit product is not an integer");
  return s.get_num();
}

}  // namespace sternlab
