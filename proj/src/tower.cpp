#include "pmc/tower.hpp"

#include <algorithm>
#include <set>

#include "pmc/error.hpp"
#include "pmc/zeta.hpp"

namespace pmc {

namespace {

const std::map<std::string, AbelianField>& field_catalog() {
  static auto cat = load_field_catalog(default_data_dir() + "/fields.cat");
  return cat;
}

}  // namespace

Tower make_tower(long p, const std::string& top_name, std::vector<long> s) {
  const auto& cat = field_catalog();
  auto it = cat.find(top_name);
  if (it == cat.end()) throw Error("make_tower: no catalog field named " + top_name);
  const AbelianField& top = it->second;

  long n = top.degree;
  while (n % p == 0) n /= p;
  if (n != 1 || top.degree == 1)
    throw Error("make_tower: [L:Q] must be a positive power of " + std::to_string(p));

  Tower tw;
  tw.p = p;
  // must cover p and every prime ramified in L
  tw.s = canonical_prime_set(std::move(s), p * top.conductor);
  tw.sigma = quotient_units(unit_group(top.conductor), top.kernel_cond, top.name);

  SubgroupLattice lat = subgroup_lattice(tw.sigma.group);
  std::vector<long> h_top = top.kernel_at_level(top.conductor);
  for (const auto& [name, f] : cat) {
    if (top.conductor % f.conductor != 0) continue;
    std::vector<long> h = f.kernel_at_level(top.conductor);
    if (!std::includes(h.begin(), h.end(), h_top.begin(), h_top.end())) continue;
    std::set<int> gal;
    for (long u : h) gal.insert(tw.sigma.coset_of_unit(u));
    TowerField tf;
    tf.field = f;
    tf.gal.assign(gal.begin(), gal.end());
    int idx = lat.find(tf.gal);
    if (idx < 0) throw Error("make_tower: G(L/F) missing from the subgroup lattice");
    tf.mu = lat.moebius[idx];
    tw.fields.push_back(std::move(tf));
  }

  std::sort(tw.fields.begin(), tw.fields.end(),
            [](const TowerField& a, const TowerField& b) { return a.field.degree < b.field.degree; });
  if (tw.fields.front().field.degree != 1 || tw.fields.back().field.name != top.name)
    throw Error("make_tower: tower must run from Q to " + top.name);
  for (const auto& tf : tw.fields)
    if (top.degree % tf.field.degree != 0)
      throw Error("make_tower: field degrees must divide [L:Q]");
  return tw;
}

LevelData tower_level(const Tower& tw, const AbelianField& f, long level) {
  if (level % f.conductor != 0)
    throw Error("tower_level: level " + std::to_string(level) + " misses the conductor of " +
                f.name);
  return make_level(f, level, tw.p, tw.s);
}

ShiftedClass power_shift(const LevelData& ld, const ShiftedClass& g, int d) {
  Integer c;
  mpz_powm_ui(c.get_mpz_t(), Integer(g.cls).get_mpz_t(), static_cast<unsigned long>(d),
              Integer(ld.level).get_mpz_t());
  return shifted_class(ld, c.get_si(), pow_rational(g.rep, d));
}

}  // namespace pmc
