#ifndef PMC_RATIONAL_HPP
#define PMC_RATIONAL_HPP

#include <gmpxx.h>

#include <limits>
#include <string>

#include "pmc/error.hpp"

namespace pmc {

using Integer = mpz_class;
using Rational = mpq_class;

// Sentinel for v_p(0) = +infinity.
inline constexpr long kValInfinity = std::numeric_limits<long>::max();

// mpq_class(a, b) does not canonicalize on its own.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den) {
  return make_rational(Integer(num), Integer(den));
}

inline long padic_valuation(const Integer& x, const Integer& p) {
  if (p < 2) throw Error("padic_valuation: p must be >= 2");
  if (x == 0) return kValInfinity;
  Integer t = x;
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

// v_p on canonical fractions: v_p(num) - v_p(den); v_p(0) = +infinity.
inline long padic_valuation(const Rational& x, const Integer& p) {
  if (x == 0) return kValInfinity;
  long vn = padic_valuation(Integer(x.get_num()), p);
  long vd = padic_valuation(Integer(x.get_den()), p);
  return vn - vd;
}

inline Integer pow_integer(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// r^e for signed e; negative powers of zero are rejected.
inline Rational pow_rational(const Rational& base, long e) {
  if (e >= 0) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    return r;  // powers of a canonical fraction are canonical
  }
  if (base == 0) throw DivisionByZero("pow_rational: 0 to negative power");
  return pow_rational(Rational(1) / base, -e);
}

inline Integer mod_inverse(const Integer& a, const Integer& mod) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()))
    throw Error("mod_inverse: not invertible mod " + mod.get_str());
  return r;
}

// Image of x in Z/mod for p-integral rationals (denominator prime to mod).
// Result is the least nonnegative residue.
inline Integer rational_mod(const Rational& x, const Integer& mod) {
  Integer num(x.get_num()), den(x.get_den());
  Integer r = (num % mod) * mod_inverse(den, mod) % mod;
  if (r < 0) r += mod;
  return r;
}

// Largest integer n with n^2 <= x; for non-square reals floor(sqrt(x))
// equals isqrt(floor(x)).
inline Integer floor_isqrt(const Rational& x) {
  if (x < 0) throw Error("floor_isqrt of negative value");
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  Integer r;
  mpz_sqrt(r.get_mpz_t(), fl.get_mpz_t());
  return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace pmc

#endif
