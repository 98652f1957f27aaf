#ifndef PMC_FINITE_GROUP_HPP
#define PMC_FINITE_GROUP_HPP

#include <map>
#include <string>
#include <vector>

#include "pmc/rational.hpp"

namespace pmc {

// Finite group as a multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : name_("trivial"), n_(1), table_{{0}}, inv_{0} {}

  static FiniteGroup from_table(std::string name, std::vector<std::vector<int>> table);
  // Closure of permutation generators under composition; each generator is
  // the image list of 0..npoints-1. mul(a, b) applies b first.
  static FiniteGroup from_permutations(std::string name, std::vector<std::vector<int>> gens);

  int size() const { return n_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int power(int a, long e) const;
  int element_order(int a) const;
  bool is_abelian() const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  int n_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
};

// Closure of a generating set, returned sorted.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);

bool contains_subgroup(const std::vector<int>& sup, const std::vector<int>& sub);

// Every subgroup, ordered by (size, elements), with the Moebius value of the
// interval from the trivial subgroup. The recursion sum_{T <= S} mu(T) = [S = 1]
// determines mu bottom-up.
struct SubgroupLattice {
  std::vector<std::vector<int>> subgroups;
  std::vector<Integer> moebius;
  int trivial = -1;
  int whole = -1;

  int find(const std::vector<int>& elems) const;  // -1 if absent
};

SubgroupLattice subgroup_lattice(const FiniteGroup& g, size_t cap = 4096);

struct CatalogGroup {
  FiniteGroup group;
  long p;  // the prime the group is a power of
};

// Text catalog of permutation groups; validates each order is a power of the
// declared prime.
std::map<std::string, CatalogGroup> load_group_catalog(const std::string& path);

std::string default_data_dir();

}  // namespace pmc

#endif
