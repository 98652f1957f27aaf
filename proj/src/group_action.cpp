#include "pmc/group_action.hpp"

#include <algorithm>

#include "pmc/error.hpp"

namespace pmc {

ActionTable make_action(const FiniteGroup& g, std::vector<std::vector<int>> image) {
  if (static_cast<int>(image.size()) != g.size()) throw Error("action table size mismatch");
  const int np = image.empty() ? 0 : static_cast<int>(image[0].size());
  for (const auto& row : image) {
    if (static_cast<int>(row.size()) != np) throw Error("action table ragged");
    std::vector<char> seen(np, 0);
    for (int v : row)
      if (v < 0 || v >= np || seen[v]++) throw Error("action row is not a permutation");
  }
  for (int i = 0; i < np; ++i)
    if (image[0][i] != i) throw Error("identity does not act trivially");
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      for (int i = 0; i < np; ++i)
        if (image[g.mul(a, b)][i] != image[a][image[b][i]])
          throw Error("action is not compatible with multiplication");
  return ActionTable{&g, std::move(image)};
}

std::vector<std::vector<int>> orbits(const ActionTable& act) {
  const int np = act.npoints();
  std::vector<char> seen(np, 0);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < np; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int a = 0; a < act.group->size(); ++a) {
      int j = act.act(a, i);
      if (!seen[j]) {
        seen[j] = 1;
        orbit.push_back(j);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<int> point_stabilizer(const ActionTable& act, int i) {
  std::vector<int> out;
  for (int a = 0; a < act.group->size(); ++a)
    if (act.act(a, i) == i) out.push_back(a);
  return out;
}

std::vector<int> set_stabilizer(const ActionTable& act, const std::vector<int>& pts) {
  std::vector<int> out;
  for (int a = 0; a < act.group->size(); ++a) {
    bool fixes = true;
    for (int i : pts) fixes = fixes && act.act(a, i) == i;
    if (fixes) out.push_back(a);
  }
  return out;
}

}  // namespace pmc
