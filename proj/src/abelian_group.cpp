#include "pmc/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "pmc/error.hpp"

namespace pmc {

long UnitGroup::pow(long a, long e) const {
  long r = e % static_cast<long>(exponent);
  if (r < 0) r += static_cast<long>(exponent);
  long acc = 1 % m;
  for (long i = 0; i < r; ++i) acc = mul(acc, a);
  return acc;
}

long UnitGroup::inv(long a) const {
  Integer r = mod_inverse(Integer(a), Integer(m));
  return r.get_si();
}

bool UnitGroup::is_unit(long u) const {
  long v = u % m;
  if (v < 0) v += m;
  return std::binary_search(elements.begin(), elements.end(), v);
}

int UnitGroup::index_of(long u) const {
  long v = u % m;
  if (v < 0) v += m;
  auto it = std::lower_bound(elements.begin(), elements.end(), v);
  if (it == elements.end() || *it != v) throw Error("not a unit: " + std::to_string(u));
  return static_cast<int>(it - elements.begin());
}

namespace {

long pow_mod(long a, unsigned long e, long m) {
  long acc = 1 % m;
  long base = a % m;
  while (e) {
    if (e & 1) acc = (acc * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return acc;
}

// Generators of (Z/q)^* for a prime power q = p^e, with their orders.
void prime_power_generators(long p, int e, long q, std::vector<long>& gens,
                            std::vector<unsigned long>& orders) {
  if (p == 2) {
    if (e == 1) return;
    if (e == 2) {
      gens.push_back(3);
      orders.push_back(2);
      return;
    }
    gens.push_back(q - 1);
    orders.push_back(2);
    gens.push_back(5);
    orders.push_back(1ul << (e - 2));
    return;
  }
  // Odd prime powers are cyclic; scan for a primitive root.
  unsigned long phi = static_cast<unsigned long>(q / p) * (p - 1);
  std::vector<unsigned long> prime_factors;
  unsigned long t = phi;
  for (unsigned long d = 2; d * d <= t; ++d) {
    if (t % d == 0) {
      prime_factors.push_back(d);
      while (t % d == 0) t /= d;
    }
  }
  if (t > 1) prime_factors.push_back(t);
  for (long g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (unsigned long d : prime_factors)
      if (pow_mod(g, phi / d, q) == 1) primitive = false;
    if (primitive) {
      gens.push_back(g);
      orders.push_back(phi);
      return;
    }
  }
  throw Error("no primitive root found");
}

UnitGroup build_unit_group(long m) {
  if (m < 1) throw Error("unit group modulus must be positive");
  UnitGroup ug;
  ug.m = m;
  for (long u = 0; u < m; ++u)
    if (std::gcd(u, m) == 1 || m == 1) ug.elements.push_back(u);

  // Generators per prime-power factor, lifted with CRT to be 1 at the others.
  long rest = m;
  for (long p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    long q = 1;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      q *= p;
      ++e;
    }
    std::vector<long> local_gens;
    std::vector<unsigned long> local_orders;
    prime_power_generators(p, e, q, local_gens, local_orders);
    long other = m / q;
    for (size_t i = 0; i < local_gens.size(); ++i) {
      long g;
      if (other == 1) {
        g = local_gens[i] % m;
      } else {
        // g = local mod q, 1 mod other
        Integer inv_other = mod_inverse(Integer(other % q), Integer(q));
        Integer lifted = Integer(1) + Integer(other) * inv_other * Integer(local_gens[i] - 1) % m;
        lifted %= m;
        if (lifted < 0) lifted += m;
        g = lifted.get_si();
      }
      ug.gens.push_back(g);
      ug.orders.push_back(local_orders[i]);
    }
  }

  ug.exponent = 1;
  for (unsigned long d : ug.orders) ug.exponent = std::lcm(ug.exponent, d);

  // Walk every exponent tuple; the walk covering each unit exactly once is
  // also the check that the generators decompose the group.
  ug.dlog.assign(ug.elements.size(), {});
  std::vector<unsigned long> tuple(ug.gens.size(), 0);
  size_t covered = 0;
  while (true) {
    long val = 1 % m;
    for (size_t i = 0; i < ug.gens.size(); ++i) val = (val * pow_mod(ug.gens[i], tuple[i], m)) % m;
    int idx = ug.index_of(val);
    if (!ug.dlog[idx].empty() && !(val == 1 % m && covered == 0))
      throw Error("unit group generators are dependent");
    if (ug.dlog[idx].empty()) {
      ug.dlog[idx] = tuple;
      ++covered;
    }
    size_t j = 0;
    for (; j < tuple.size(); ++j) {
      if (++tuple[j] < ug.orders[j]) break;
      tuple[j] = 0;
    }
    if (j == tuple.size()) break;
  }
  if (covered != ug.elements.size()) throw Error("unit group generators do not span");
  return ug;
}

std::map<long, UnitGroup> g_unit_cache;
std::mutex g_unit_mutex;

}  // namespace

const UnitGroup& unit_group(long m) {
  std::lock_guard<std::mutex> lock(g_unit_mutex);
  auto it = g_unit_cache.find(m);
  if (it == g_unit_cache.end()) it = g_unit_cache.emplace(m, build_unit_group(m)).first;
  return it->second;
}

std::vector<long> unit_subgroup(long m, const std::vector<long>& gens) {
  const UnitGroup& ug = unit_group(m);
  std::set<long> elems{1 % m};
  std::vector<long> frontier(elems.begin(), elems.end());
  while (!frontier.empty()) {
    std::vector<long> next;
    for (long x : frontier) {
      for (long g : gens) {
        if (!ug.is_unit(g)) throw Error("subgroup generator is not a unit");
        long y = ug.mul(x, ((g % m) + m) % m);
        if (elems.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return std::vector<long>(elems.begin(), elems.end());
}

int QuotientUnits::coset_of_unit(long u) const {
  return coset_of[unit_group(m).index_of(u)];
}

QuotientUnits quotient_units(const UnitGroup& a, const std::vector<long>& h, std::string name) {
  for (long x : h)
    if (!a.is_unit(x)) throw Error("coset kernel contains a non-unit");
  for (long x : h)
    for (long y : h)
      if (!std::binary_search(h.begin(), h.end(), a.mul(x, y)))
        throw Error("coset kernel is not closed");
  if (a.elements.size() % h.size() != 0) throw Error("kernel size does not divide group size");

  QuotientUnits q;
  q.m = a.m;
  q.coset_of.assign(a.elements.size(), -1);

  // Identity coset first.
  for (long x : h) q.coset_of[a.index_of(x)] = 0;
  q.coset_rep.push_back(1 % a.m);

  for (size_t i = 0; i < a.elements.size(); ++i) {
    if (q.coset_of[i] >= 0) continue;
    int c = static_cast<int>(q.coset_rep.size());
    q.coset_rep.push_back(a.elements[i]);
    for (long x : h) q.coset_of[a.index_of(a.mul(a.elements[i], x))] = c;
  }

  const int nc = static_cast<int>(q.coset_rep.size());
  std::vector<std::vector<int>> table(nc, std::vector<int>(nc));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      table[i][j] = q.coset_of[a.index_of(a.mul(q.coset_rep[i], q.coset_rep[j]))];
  q.group = FiniteGroup::from_table(std::move(name), std::move(table));
  return q;
}

}  // namespace pmc
