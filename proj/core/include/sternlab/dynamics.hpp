#pragma once

#include <vector>

#include "sternlab/bignum.hpp"
#include "sternlab/minkowski.hpp"

namespace sternlab {

enum class MapTag { Binary, BinaryJump, Farey, Gauss };

/// Exact image of x in [0,1] under the named interval map. Conventions at
/// the endpoints: BinaryJump, Farey and Gauss all send 0 and 1 to 0.
BigRational eval_map(MapTag map, const BigRational& x);

/// Exact verification, over every dyadic m/2^N, that the box function
/// intertwines the binary map with the Farey map and the jump of the binary
/// map with the Gauss map. `negative_control` deliberately tests the binary
/// map against the Gauss map instead, which must fail.
bool conjugacy_check(unsigned N, bool negative_control = false);

/// Jump-map orbit of a dyadic point down to 1. jump_orbit has K+1 entries
/// ending at 1; gauss_orbit[i] = Phi(jump_orbit[i]) for i < K, so the K
/// recorded values are exactly the Gauss-orbit of Phi(start).
struct OrbitRecord {
  DyadicPoint start;
  unsigned K = 0;
  std::vector<BigRational> gauss_orbit;
  std::vector<DyadicPoint> jump_orbit;
};

OrbitRecord orbit(const DyadicPoint& p);

/// Counts of K over m in {1, ..., 2^N}, indexed by K = 0..N. Equals row N
/// of Pascal's triangle.
std::vector<std::uint64_t> k_histogram(unsigned N);

/// Reconstructs s(2^N + m) as the inverse of the product of the K
/// Gauss-orbit values, in exact rational arithmetic. Throws if the inverted
/// product is not an integer (internal-consistency guard).
BigNat stern_via_gauss_product(const DyadicPoint& p);

}  // namespace sternlab
