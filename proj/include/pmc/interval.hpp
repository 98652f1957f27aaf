#ifndef PMC_INTERVAL_HPP
#define PMC_INTERVAL_HPP

#include <functional>

#include "pmc/cyclotomic.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Closed interval with exact rational endpoints. All decisions downstream
// compare the endpoints, never floating-point values.
struct IntervalApprox {
  Rational lo, hi;

  IntervalApprox() : lo(0), hi(0) {}
  IntervalApprox(Rational l, Rational h);
  static IntervalApprox point(const Rational& r) { return IntervalApprox(r, r); }

  bool is_positive() const { return lo > 0; }
  bool is_negative() const { return hi < 0; }
  bool is_point_zero() const { return lo == 0 && hi == 0; }

  IntervalApprox operator+(const IntervalApprox& o) const;
  IntervalApprox operator-(const IntervalApprox& o) const;
  IntervalApprox operator*(const IntervalApprox& o) const;
  IntervalApprox scaled(const Rational& r) const;
};

// Enclosure of cos(2*pi*j/n) with about `prec` bits, endpoints exact binary
// rationals extracted from directed-rounding MPFR values. Cached.
IntervalApprox cos_enclosure(long j, unsigned long n, unsigned long prec);

// Enclosure of the real part of z under zeta_n -> exp(2*pi*i*t/n). For the
// real elements this is applied to, the real part is the embedding value.
IntervalApprox embed_real_interval(const CyclotomicNumber& z, long t, unsigned long prec);

inline constexpr unsigned long kSignPrecStart = 64;
inline constexpr unsigned long kSignPrecCap = 1ul << 14;

// Sign of the exact real number enclosed by f(prec) as prec doubles.
// Returns -1 or +1, or 0 only when the enclosure is exactly [0, 0].
// Throws ZeroSuspected if the cap is reached while straddling zero.
int certify_sign(const std::function<IntervalApprox(unsigned long)>& f);

// Sign of the real embedding zeta -> zeta^t of z; exact shortcut when z is
// rational.
int certify_sign_embedding(const CyclotomicNumber& z, long t);

}  // namespace pmc

#endif
