#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>

namespace sternlab {

using BigNat = mpz_class;
using BigRational = mpq_class;

/// Natural log of a positive big integer without overflowing double range.
inline double log_big(const BigNat& v) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline BigNat fibonacci(unsigned long k) {
  BigNat f;
  mpz_fib_ui(f.get_mpz_t(), k);
  return f;
}

inline BigNat pow2(unsigned long k) {
  BigNat p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return p;
}

}  // namespace sternlab
