#include "pmc/zeta.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "pmc/abelian_group.hpp"
#include "pmc/bernoulli.hpp"
#include "pmc/dirichlet.hpp"
#include "pmc/error.hpp"

namespace pmc {

namespace {

bool is_prime_small(long q) {
  if (q < 2) return false;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

using Key = std::tuple<std::string, long, unsigned long, std::vector<long>>;
std::map<Key, std::pair<unsigned long, std::map<long, Rational>>> g_cache;
std::shared_mutex g_cache_mutex;

// L_S(1-k, chi) = -B_{k,chi_0}/k * prod_{q in S} (1 - chi_0(q) q^{k-1}),
// promoted into Q(zeta_n).
CyclotomicNumber l_s_value(const DirichletCharacter& chi, unsigned long k,
                           const std::vector<long>& s, unsigned long n) {
  DirichletCharacter psi = primitive_core(chi);
  if (n % psi.zeta_order != 0) throw Error("character value field mismatch");
  CyclotomicNumber val =
      generalized_bernoulli(psi, k).promote(n).scaled(Rational(-1, static_cast<long>(k)));
  for (long q : s) {
    if (psi.modulus % q == 0 && psi.modulus > 1) continue;  // chi_0(q) = 0
    long e = character_exponent(psi, q % (psi.modulus > 1 ? psi.modulus : 1));
    CyclotomicNumber fac = CyclotomicNumber::constant(n, Rational(1));
    fac -= CyclotomicNumber::zeta(n, e * static_cast<long>(n / psi.zeta_order))
               .scaled(pow_rational(Rational(q), static_cast<long>(k) - 1));
    val = val * fac;
  }
  return val;
}

}  // namespace

std::vector<long> canonical_prime_set(std::vector<long> s, long level) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (long q : s)
    if (!is_prime_small(q)) throw Error("prime set contains " + std::to_string(q));
  long rest = level;
  for (long q = 2; q <= rest; ++q) {
    if (rest % q != 0) continue;
    if (!std::binary_search(s.begin(), s.end(), q))
      throw Error("prime set misses " + std::to_string(q) + " dividing the level");
    while (rest % q == 0) rest /= q;
  }
  return s;
}

std::map<long, Rational> partial_zeta_all(const AbelianField& f, long level, unsigned long k,
                                          std::vector<long> s) {
  if (k < 1) throw Error("weight must be positive");
  if (level < 2) throw Error("level must be at least 2");
  if (level % f.conductor != 0) throw Error("level incompatible with the field conductor");
  s = canonical_prime_set(std::move(s), level);

  const Key key{f.name, level, k, s};
  const unsigned long epoch = bernoulli_epoch();
  {
    std::shared_lock<std::shared_mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end() && it->second.first == epoch) return it->second.second;
  }

  const std::vector<long> h = f.kernel_at_level(level);
  const UnitGroup& ug = unit_group(level);
  const unsigned long n = static_cast<unsigned long>(ug.exponent);

  // Bucket the characters of the full unit group by their restriction to the
  // kernel; the product over a bucket is one L-factor of the kernel character.
  std::map<std::vector<long>, std::pair<DirichletCharacter, CyclotomicNumber>> buckets;
  for (const auto& chi : all_characters(level)) {
    std::vector<long> sig;
    sig.reserve(h.size());
    for (long x : h) sig.push_back(character_exponent(chi, x));
    CyclotomicNumber val = l_s_value(chi, k, s, n);
    auto it = buckets.find(sig);
    if (it == buckets.end())
      buckets.emplace(std::move(sig), std::make_pair(chi, val));
    else
      it->second.second = it->second.second * val;
  }
  if (buckets.size() != h.size()) throw Error("character bucketing failed");

  std::map<long, Rational> out;
  const Rational count(static_cast<long>(h.size()));
  for (long x : h) {
    long xi = mod_inverse(Integer(x), Integer(level)).get_si();
    ZetaAccumulator acc(n);
    for (const auto& [sig, rep] : buckets)
      acc.add_shifted(rep.second, character_exponent(rep.first, xi));
    out[x] = cyclo_to_rational(acc.reduce()) / count;
  }

  {
    std::unique_lock<std::shared_mutex> lock(g_cache_mutex);
    g_cache[key] = {epoch, out};
  }
  return out;
}

Rational partial_zeta(const AbelianField& f, long level, unsigned long k,
                      const std::vector<long>& s, long x) {
  auto all = partial_zeta_all(f, level, k, s);
  long xr = x % level;
  if (xr < 0) xr += level;
  auto it = all.find(xr);
  if (it == all.end()) throw Error("class is outside the level kernel of " + f.name);
  return it->second;
}

Rational partial_zeta_tilde(const AbelianField& f, long level, unsigned long k,
                            const std::vector<long>& s, long x) {
  return partial_zeta(f, level, k, s, x) * pow_rational(Rational(1, 2), f.degree);
}

size_t zeta_cache_entries() {
  std::shared_lock<std::shared_mutex> lock(g_cache_mutex);
  return g_cache.size();
}

void clear_zeta_cache() {
  std::unique_lock<std::shared_mutex> lock(g_cache_mutex);
  g_cache.clear();
}

}  // namespace pmc
