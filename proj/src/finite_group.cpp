#include "pmc/finite_group.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "pmc/error.hpp"

namespace pmc {

namespace {

void validate_table(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n) throw Error("group table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("group table entry out of range");
  }
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (seen_row[t[a][b]]++) throw Error("group table row repeats");
      if (seen_col[t[b][a]]++) throw Error("group table column repeats");
    }
  }
  for (int b = 0; b < n; ++b)
    if (t[0][b] != b || t[b][0] != b) throw Error("element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) throw Error("group table not associative");
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("empty group table");

  // Locate the identity and relabel it to 0.
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw Error("group table has no identity");
  if (e != 0) {
    std::vector<int> relabel(n);
    for (int a = 0; a < n; ++a) relabel[a] = a == e ? 0 : (a == 0 ? e : a);
    std::vector<std::vector<int>> t2(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t2[relabel[a]][relabel[b]] = relabel[table[a][b]];
    table = std::move(t2);
  }
  validate_table(table);

  FiniteGroup g;
  g.name_ = std::move(name);
  g.n_ = n;
  g.table_ = std::move(table);
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.table_[a][b] == 0) g.inv_[a] = b;
  return g;
}

FiniteGroup FiniteGroup::from_permutations(std::string name, std::vector<std::vector<int>> gens) {
  if (gens.empty()) throw Error("no permutation generators");
  const size_t npoints = gens[0].size();
  for (const auto& p : gens) {
    if (p.size() != npoints) throw Error("generator degree mismatch");
    std::vector<char> seen(npoints, 0);
    for (int v : p) {
      if (v < 0 || static_cast<size_t>(v) >= npoints || seen[v]++)
        throw Error("generator is not a permutation");
    }
  }

  std::vector<int> id(npoints);
  for (size_t i = 0; i < npoints; ++i) id[i] = static_cast<int>(i);

  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : gens) {
      std::vector<int> prod(npoints);
      for (size_t i = 0; i < npoints; ++i) prod[i] = gen[elems[head][i]];
      if (index.emplace(prod, static_cast<int>(elems.size())).second) elems.push_back(prod);
      if (elems.size() > 100000) throw CapExceeded("permutation closure too large");
    }
  }

  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(npoints);
      for (size_t i = 0; i < npoints; ++i) prod[i] = elems[a][elems[b][i]];
      table[a][b] = index.at(prod);
    }
  }
  return from_table(std::move(name), std::move(table));
}

int FiniteGroup::power(int a, long e) const {
  long r = e % element_order(a);
  if (r < 0) r += element_order(a);
  int acc = 0;
  for (long i = 0; i < r; ++i) acc = mul(acc, a);
  return acc;
}

int FiniteGroup::element_order(int a) const {
  int ord = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> elems{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int a : gens) {
        int y = g.mul(x, a);
        if (elems.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return std::vector<int>(elems.begin(), elems.end());
}

bool contains_subgroup(const std::vector<int>& sup, const std::vector<int>& sub) {
  return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

int SubgroupLattice::find(const std::vector<int>& elems) const {
  for (size_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i] == elems) return static_cast<int>(i);
  return -1;
}

SubgroupLattice subgroup_lattice(const FiniteGroup& g, size_t cap) {
  // Grow each known subgroup by one extra generator until nothing new
  // appears; every subgroup arises along some chain of one-generator
  // extensions from the trivial one.
  std::set<std::vector<int>> found{{0}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snapshot(found.begin(), found.end());
    for (const auto& s : snapshot) {
      for (int a = 1; a < g.size(); ++a) {
        if (std::binary_search(s.begin(), s.end(), a)) continue;
        std::vector<int> gens = s;
        gens.push_back(a);
        auto t = generated_subgroup(g, gens);
        if (found.insert(std::move(t)).second) grew = true;
        if (found.size() > cap) throw CapExceeded("subgroup lattice exceeds cap");
      }
    }
  }

  SubgroupLattice lat;
  lat.subgroups.assign(found.begin(), found.end());
  std::sort(lat.subgroups.begin(), lat.subgroups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  lat.moebius.assign(lat.subgroups.size(), Integer(0));
  for (size_t i = 0; i < lat.subgroups.size(); ++i) {
    if (lat.subgroups[i].size() == 1) {
      lat.trivial = static_cast<int>(i);
      lat.moebius[i] = 1;
      continue;
    }
    Integer acc = 0;
    for (size_t j = 0; j < i; ++j)
      if (lat.subgroups[j].size() < lat.subgroups[i].size() &&
          contains_subgroup(lat.subgroups[i], lat.subgroups[j]))
        acc += lat.moebius[j];
    lat.moebius[i] = -acc;
  }
  lat.whole = static_cast<int>(lat.subgroups.size()) - 1;
  if (static_cast<int>(lat.subgroups.back().size()) != g.size())
    throw Error("subgroup closure missed the whole group");
  return lat;
}

std::map<std::string, CatalogGroup> load_group_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group catalog " + path);

  std::map<std::string, CatalogGroup> out;
  std::string line;
  std::string name;
  long p = 0;
  size_t points = 0;
  std::vector<std::vector<int>> gens;
  bool open = false;

  auto flush = [&]() {
    if (gens.empty()) throw Error("group " + name + " has no generators");
    FiniteGroup g = FiniteGroup::from_permutations(name, gens);
    long n = g.size();
    while (n % p == 0) n /= p;
    if (n != 1) throw Error("group " + name + " order is not a power of its prime");
    if (!out.emplace(name, CatalogGroup{std::move(g), p}).second)
      throw Error("duplicate group " + name);
    gens.clear();
    open = false;
  };

  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "group") {
      if (open) throw Error("missing end before new group");
      std::string ptok, ntok;
      if (!(ls >> name >> ptok >> ntok) || ptok.rfind("p=", 0) != 0 || ntok.rfind("points=", 0) != 0)
        throw Error("malformed group header: " + line);
      p = std::stol(ptok.substr(2));
      points = std::stoul(ntok.substr(7));
      open = true;
    } else if (tok == "end") {
      if (!open) throw Error("stray end in catalog");
      flush();
    } else {
      if (!open) throw Error("generator outside group block");
      std::vector<int> perm;
      perm.push_back(std::stoi(tok));
      int v;
      while (ls >> v) perm.push_back(v);
      if (perm.size() != points) throw Error("generator arity mismatch in " + name);
      gens.push_back(std::move(perm));
    }
  }
  if (open) throw Error("unterminated group block " + name);
  return out;
}

std::string default_data_dir() {
#ifdef PMC_DATA_DIR
  return PMC_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace pmc
