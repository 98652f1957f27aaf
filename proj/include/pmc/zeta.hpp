#ifndef PMC_ZETA_HPP
#define PMC_ZETA_HPP

#include <map>
#include <vector>

#include "pmc/field.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Partial zeta values zeta_{F,S}(1-k, delta^x) for every class x in the
// level kernel of F, computed over the characters of the units mod level and
// certified rational. Requires k >= 1, level divisible by the conductor, and
// S a set of primes covering every prime of the level. Memoized per
// (field, level, k, S) and per Bernoulli epoch.
std::map<long, Rational> partial_zeta_all(const AbelianField& f, long level, unsigned long k,
                                          std::vector<long> s);

Rational partial_zeta(const AbelianField& f, long level, unsigned long k,
                      const std::vector<long>& s, long x);

// The same value scaled by 2^{-[F:Q]}.
Rational partial_zeta_tilde(const AbelianField& f, long level, unsigned long k,
                            const std::vector<long>& s, long x);

// Sorted, deduplicated, all prime, and covering rad(level); throws otherwise.
std::vector<long> canonical_prime_set(std::vector<long> s, long level);

size_t zeta_cache_entries();
void clear_zeta_cache();

}  // namespace pmc

#endif
