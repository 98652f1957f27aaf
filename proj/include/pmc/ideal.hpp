#ifndef PMC_IDEAL_HPP
#define PMC_IDEAL_HPP

#include <vector>

#include "pmc/field.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// One prime over q: a monic factor of the minimal polynomial mod q together
// with its Hensel lift mod q^B.
struct LocalPrime {
  std::vector<Integer> factor_q;
  std::vector<Integer> factor_lift;
};

// Factorization of an unramified rational prime q in a field: all primes
// share the residue degree f because the extension is abelian.
struct SplittingData {
  long q = 0;
  int f = 1;
  long lift_exponent = 1;  // B
  Integer modulus;         // q^B
  std::vector<LocalPrime> primes;
};

// Cached per (field, q); the stored lift is upgraded when a larger B is
// requested. q must be coprime to the conductor.
SplittingData splitting_data(const AbelianField& f, long q, long lift_exponent);

// Valuation of the integral element a at each prime of splitting_data(f, q),
// in the order the primes are listed. The lift must satisfy B > v_q(N(a)).
std::vector<int> local_valuations(const AbelianField& f, const SplittingData& sd,
                                  const AbelianField::Elt& a);

// One prime-power q^(f e) slice of an ideal.
struct PrimePowerPart {
  long q;
  int f;
  int index;  // position within splitting_data(field, q).primes
  int e;

  bool operator<(const PrimePowerPart& o) const {
    if (q != o.q) return q < o.q;
    return index < o.index;
  }
  bool operator==(const PrimePowerPart& o) const {
    return q == o.q && f == o.f && index == o.index && e == o.e;
  }
};

// Ideals prime to a fixed set of rational primes, as sorted prime-power lists.
using IdealParts = std::vector<PrimePowerPart>;

Integer ideal_norm(const IdealParts& a);
// Image of the ideal under the Artin map at the given cyclotomic level.
long artin_class(const IdealParts& a, long level);

// Prime-to-avoid part of the principal ideal (a); a must be integral and
// nonzero, and every prime outside `avoid` must be coprime to the conductor.
IdealParts factor_principal(const AbelianField& f, const AbelianField::Elt& a,
                            const std::vector<long>& avoid);

// Indices in l of the primes over the prime (q, index) of f; f must be a
// subfield of l and q unramified in l.
std::vector<int> primes_above(const AbelianField& f, long q, int index, const AbelianField& l);

// Index of the image of the prime (q, index) under zeta -> zeta^t.
int galois_prime_image(const AbelianField& l, long q, int index, long t);

}  // namespace pmc

#endif
