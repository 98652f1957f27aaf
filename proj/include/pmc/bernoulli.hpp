#ifndef PMC_BERNOULLI_HPP
#define PMC_BERNOULLI_HPP

#include "pmc/rational.hpp"

namespace pmc {

Integer binomial(unsigned long n, unsigned long k);

// B_k in the convention with B_1 = -1/2.
Rational bernoulli_number(unsigned long k);

// B_k(x) = sum_j C(k,j) B_{k-j} x^j.
Rational bernoulli_poly(unsigned long k, const Rational& x);

// Fault-injection seams: tests corrupt one value and watch the dependent
// congruences fail. Every change bumps the epoch; caches of derived values
// store the epoch they were computed under and recompute when stale.
void override_bernoulli(unsigned long k, const Rational& v);
void clear_bernoulli_overrides();
unsigned long bernoulli_epoch();

}  // namespace pmc

#endif
