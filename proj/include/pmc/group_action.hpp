#ifndef PMC_GROUP_ACTION_HPP
#define PMC_GROUP_ACTION_HPP

#include <vector>

#include "pmc/finite_group.hpp"

namespace pmc {

// Left action of a table group on indexed points, stored as image[a][i].
struct ActionTable {
  const FiniteGroup* group = nullptr;
  std::vector<std::vector<int>> image;

  int act(int a, int i) const { return image[a][i]; }
  int npoints() const { return image.empty() ? 0 : static_cast<int>(image[0].size()); }
};

// Validates identity and compatibility image[ab] = image[a] after image[b].
ActionTable make_action(const FiniteGroup& g, std::vector<std::vector<int>> image);

// Orbits as sorted point lists, ordered by smallest point.
std::vector<std::vector<int>> orbits(const ActionTable& act);

// Sorted element list of the stabilizer of point i.
std::vector<int> point_stabilizer(const ActionTable& act, int i);

// Common stabilizer of every point in the set.
std::vector<int> set_stabilizer(const ActionTable& act, const std::vector<int>& pts);

}  // namespace pmc

#endif
