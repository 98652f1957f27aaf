#ifndef PMC_ABELIAN_GROUP_HPP
#define PMC_ABELIAN_GROUP_HPP

#include <vector>

#include "pmc/finite_group.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Multiplicative group of Z/m with a fixed generator decomposition and
// discrete logs for every unit. Characters are exponent tuples against gens.
struct UnitGroup {
  long m = 1;
  std::vector<long> elements;  // sorted units in [0, m)
  std::vector<long> gens;
  std::vector<unsigned long> orders;              // per generator; product = phi(m)
  unsigned long exponent = 1;                     // lcm of the orders
  std::vector<std::vector<unsigned long>> dlog;   // aligned with elements

  long mul(long a, long b) const { return (a * b) % m; }
  long pow(long a, long e) const;
  long inv(long a) const;
  int index_of(long u) const;  // throws if u is not a unit mod m
  bool is_unit(long u) const;
};

// Cached per modulus; construction enumerates all units so keep m modest.
const UnitGroup& unit_group(long m);

// Subgroup of (Z/m)^* generated by the given units, sorted.
std::vector<long> unit_subgroup(long m, const std::vector<long>& gens);

// Quotient (Z/m)^* / H as a table group, with the identity coset first.
struct QuotientUnits {
  long m = 1;  // ambient modulus
  FiniteGroup group;
  std::vector<long> coset_rep;  // one unit per coset, rep of coset 0 is 1
  std::vector<int> coset_of;    // aligned with unit_group(m).elements

  int coset_of_unit(long u) const;
};

QuotientUnits quotient_units(const UnitGroup& a, const std::vector<long>& h, std::string name);

}  // namespace pmc

#endif
