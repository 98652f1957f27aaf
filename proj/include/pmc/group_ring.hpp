#ifndef PMC_GROUP_RING_HPP
#define PMC_GROUP_RING_HPP

#include <functional>
#include <map>
#include <string>

#include "pmc/finite_group.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Z/mod-linear combination of unit classes mod m. Coefficients are kept in
// [0, mod) and zero terms are dropped, so operator== is structural equality.
class GroupRingElt {
 public:
  GroupRingElt(long m, Integer mod);

  long class_modulus() const { return m_; }
  const Integer& coeff_modulus() const { return mod_; }
  const std::map<long, Integer>& terms() const { return terms_; }

  void add(long cls, const Integer& c);
  // Reduces num/den mod `mod`; the denominator must be a unit there.
  void add_rational(long cls, const Rational& c);

  Integer coeff(long cls) const;  // 0 for absent classes
  bool is_zero() const { return terms_.empty(); }

  GroupRingElt& operator+=(const GroupRingElt& o);
  GroupRingElt& operator-=(const GroupRingElt& o);
  friend GroupRingElt operator+(GroupRingElt a, const GroupRingElt& b) { return a += b; }
  friend GroupRingElt operator-(GroupRingElt a, const GroupRingElt& b) { return a -= b; }
  bool operator==(const GroupRingElt& o) const;
  bool operator!=(const GroupRingElt& o) const { return !(*this == o); }

  GroupRingElt scaled(const Integer& c) const;
  // [x] -> [g x mod m]; g must be a unit mod m.
  GroupRingElt shifted(long g) const;
  // Applies f to every class, merging collisions; lands in Z/new_mod classes
  // mod new_m. Used for transfer maps and level reductions.
  GroupRingElt mapped(const std::function<long(long)>& f, long new_m, Integer new_mod) const;
  // Image in the quotient identifying [x] with [s x]; keys become the
  // smaller class of each pair.
  GroupRingElt symmetrized(long s) const;

  std::string str() const;

 private:
  void put(long cls, Integer c);
  long m_;
  Integer mod_;
  std::map<long, Integer> terms_;
};

// Membership in the ideal generated by the sigma-traces sum_s x^s inside the
// fixed subring. act(s, cls) is the action of group element s on classes. The
// trace ideal decomposes orbitwise as |stab| * (orbit sum) * Z/mod, so
// membership is exactly: coefficients constant on each orbit and divisible
// there by gcd(|stab|, mod). On failure `reason` (if given) names the orbit.
bool trace_ideal_member(const GroupRingElt& x, const FiniteGroup& sigma,
                        const std::function<long(int, long)>& act,
                        std::string* reason = nullptr);

}  // namespace pmc

#endif
