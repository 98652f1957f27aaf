#ifndef PMC_PSEUDOMEASURE_HPP
#define PMC_PSEUDOMEASURE_HPP

#include <map>
#include <vector>

#include "pmc/field.hpp"
#include "pmc/group_ring.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Working level over a field: a cyclotomic level together with its p-part
// p^e, the kernel classes of the field at that level, and the prime set used
// to truncate the zeta values. e = 0 is rejected, and p = 2 needs 4 | level
// so the norm character lands in 1 + 4Z_2.
struct LevelData {
  AbelianField field;
  long level = 0;
  long p = 0;
  long exponent = 0;
  Integer p_pow = 1;
  std::vector<long> primes;   // covers every prime of the level
  std::vector<long> classes;  // kernel_at_level(level), sorted
};

LevelData make_level(const AbelianField& f, long level, long p, std::vector<long> s);

// v_p(level); throws unless the level is admissible for p.
long level_exponent(long level, long p);

// Projection of a unit class mod level to (Z/p^e)^*; multiplicative.
Integer norm_character(const LevelData& ld, long x);

// A shifting element: a kernel class at the working level plus the exact
// rational realizing its norm. The rep must be a p-unit congruent to the
// class mod level. Distinct reps of the same class are genuinely different
// shifting elements: the twisted differences read the rep beyond the level
// once zeta denominators meet p.
struct ShiftedClass {
  long cls = 1;
  Rational rep = 1;
};

// rep defaults to the least positive residue.
ShiftedClass shifted_class(const LevelData& ld, long cls);
ShiftedClass shifted_class(const LevelData& ld, long cls, Rational rep);

// Classes multiply and reps multiply; the product rep is what keeps the
// cocycle identity exact.
ShiftedClass compose(const LevelData& ld, const ShiftedClass& a, const ShiftedClass& b);

// Locally constant function on the level classes; absent keys read as 0.
using ClassFunction = std::map<long, Rational>;

// zeta_tilde(1-k, eps), the 2^{-degree}-scaled partial zeta value extended
// linearly over class indicators. k must be even and positive.
Rational zeta_tilde_eps(const LevelData& ld, unsigned long k, const ClassFunction& eps);

// The twisted difference zeta_tilde(1-k, eps) - rep^k zeta_tilde(1-k, eps_g)
// with eps_g(x) = eps(g x).
Rational delta_tilde(const LevelData& ld, const ShiftedClass& g, unsigned long k,
                     const ClassFunction& eps);

// The finite-level pseudomeasure multiple (1-h)lambda: coefficients mod p^e,
// independent of the (even) weight k used to build it. For odd p the keys
// are the kernel classes and the coefficient at x is
// delta_tilde(h, delta^x) N(x)^{-k}. For p = 2 single-class indicators are
// not 2-integral, so the element lives on the quotient by the class of -1:
// keys min(x, -x), coefficient delta_tilde(h, delta^x + delta^{-x}) N(x)^{-k}.
// Throws when a twisted difference fails the p-integrality it should have.
GroupRingElt pseudomeasure_element(const LevelData& ld, const ShiftedClass& h, unsigned long k);

// Ring map from the quotient over `from.field` to the one over `to.field`
// (a subfield pair at the same level): classes are raised to the power
// [to : from] and coefficients reduce to p^{e - v_p([to : from])}. Throws
// when the reduced exponent would drop below 1.
GroupRingElt transfer_ring_map(const LevelData& from, const LevelData& to, const GroupRingElt& x);

// Quotient by the class of -1. A no-op on p = 2 elements, whose keys are
// already normalized that way.
GroupRingElt even_quotient(const GroupRingElt& x);

}  // namespace pmc

#endif
