#ifndef PMC_TOWER_HPP
#define PMC_TOWER_HPP

#include <string>
#include <vector>

#include "pmc/abelian_group.hpp"
#include "pmc/field.hpp"
#include "pmc/pseudomeasure.hpp"

namespace pmc {

// One layer of a tower: a field F between Q and L, the subgroup of Sigma
// fixing it, and the Moebius value of that subgroup measured from the
// trivial subgroup in Sigma's subgroup lattice.
struct TowerField {
  AbelianField field;
  std::vector<int> gal;  // G(L/F), sorted elements of sigma.group
  Integer mu;
};

// Galois frame for the congruence checks: a prime p, a top field L whose
// degree is a power of p, the quotient Sigma = units(cond L)/H_L, every
// catalog field between Q and L, and a prime set covering p and everything
// ramified in L.
struct Tower {
  long p = 2;
  std::vector<long> s;
  QuotientUnits sigma;
  std::vector<TowerField> fields;  // ascending degree: front() = Q, back() = L

  const AbelianField& base() const { return fields.front().field; }
  const AbelianField& top() const { return fields.back().field; }
  long sigma_order() const { return sigma.group.size(); }
};

Tower make_tower(long p, const std::string& top_name, std::vector<long> s);

// Level data for one tower field at a working level; the level must be a
// multiple of the field's conductor.
LevelData tower_level(const Tower& tw, const AbelianField& f, long level);

// Image of a base shifting element under the power map to degree d: class
// and rep are both raised to d, landing in the kernel of the degree-d field.
ShiftedClass power_shift(const LevelData& ld, const ShiftedClass& g, int d);

}  // namespace pmc

#endif
