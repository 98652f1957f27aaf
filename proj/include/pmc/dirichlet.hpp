#ifndef PMC_DIRICHLET_HPP
#define PMC_DIRICHLET_HPP

#include <vector>

#include "pmc/cyclotomic.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Character of the units mod `modulus`, stored as one image exponent per
// unit-group generator: the i-th generator of order d_i maps to
// zeta^(evec_i * zeta_order / d_i) where zeta has order `zeta_order`, the
// exponent of the unit group. Values of every character mod m live in the
// same cyclotomic field, so sums and products mix freely.
struct DirichletCharacter {
  long modulus = 1;
  unsigned long zeta_order = 1;
  std::vector<long> evec;

  bool is_trivial() const {
    for (long e : evec)
      if (e) return false;
    return true;
  }
};

// All phi(m) characters, in mixed-radix order of their exponent vectors.
std::vector<DirichletCharacter> all_characters(long m);

// j with chi(x) = zeta^j; x must be a unit mod the modulus.
long character_exponent(const DirichletCharacter& chi, long x);
CyclotomicNumber character_value(const DirichletCharacter& chi, long x);

long character_order(const DirichletCharacter& chi);

// Smallest c dividing the modulus such that chi factors through units mod c.
long character_conductor(const DirichletCharacter& chi);

// The character mod character_conductor(chi) inducing chi; validated against
// chi on every unit.
DirichletCharacter primitive_core(const DirichletCharacter& chi);

// B_{k,chi} = c^{k-1} sum_a chi(a) B_k(a/c) for a primitive chi of
// conductor c; lives in the chi value field. Tracks Bernoulli overrides.
CyclotomicNumber generalized_bernoulli(const DirichletCharacter& chi, unsigned long k);

}  // namespace pmc

#endif
