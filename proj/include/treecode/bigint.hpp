#pragma once

#include <gmpxx.h>

#include <utility>

namespace treecode {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// double_factorial(7) = 7*5*3*1 = 105; double_factorial(0) = 1.
inline BigInt double_factorial(unsigned long n) {
  BigInt r;
  mpz_2fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline Rational make_rational(BigInt num, BigInt den) {
  Rational q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

}  // namespace treecode
