#ifndef PMC_CYCLOTOMIC_HPP
#define PMC_CYCLOTOMIC_HPP

#include <vector>

#include "pmc/rational.hpp"

namespace pmc {

unsigned long euler_phi(unsigned long n);

// Coefficients of Phi_n, ascending, monic, exact integers. Cached.
const std::vector<Integer>& cyclotomic_polynomial(unsigned long n);

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}
// reduced mod Phi_n. Representation in this basis is unique, so equality
// and rationality tests are coordinate tests.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : n_(1), c_(1, Rational(0)) {}
  CyclotomicNumber(unsigned long n, std::vector<Rational> unreduced);

  static CyclotomicNumber zero(unsigned long n);
  static CyclotomicNumber constant(unsigned long n, const Rational& r);
  static CyclotomicNumber zeta(unsigned long n, long j);  // zeta_n^j

  unsigned long order() const { return n_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber operator-() const;
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  CyclotomicNumber scaled(const Rational& r) const;

  // Field automorphism zeta -> zeta^t, gcd(t, n) = 1.
  CyclotomicNumber galois(long t) const;

  // Reinterpret in Q(zeta_N), n | N.
  CyclotomicNumber promote(unsigned long N) const;

  bool operator==(const CyclotomicNumber& o) const { return n_ == o.n_ && c_ == o.c_; }
  bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }

  std::string str() const;

 private:
  unsigned long n_;
  std::vector<Rational> c_;  // length phi(n)
};

// Exact rational value; throws NotRational if the element is irrational.
Rational cyclo_to_rational(const CyclotomicNumber& z);

// Accumulator over Z[zeta_n] in lazy zeta-power coordinates (length n).
// Lets character sums add root-of-unity multiples in O(phi) per term and
// reduce mod Phi_n once at the end.
class ZetaAccumulator {
 public:
  explicit ZetaAccumulator(unsigned long n) : n_(n), slot_(n, Rational(0)) {}
  void add_monomial(long j, const Rational& c);         // += c * zeta^j
  void add_shifted(const CyclotomicNumber& z, long j);  // += z * zeta^j
  CyclotomicNumber reduce() const;

 private:
  unsigned long n_;
  std::vector<Rational> slot_;
};

}  // namespace pmc

#endif
