#include "pmc/pseudomeasure.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "pmc/error.hpp"
#include "pmc/zeta.hpp"

namespace pmc {

long level_exponent(long level, long p) {
  if (p < 2) throw Error("level_exponent: prime must be at least 2");
  if (level < 2 || level % p != 0) throw Error("level_exponent: prime does not divide the level");
  long e = 0;
  for (long t = level; t % p == 0; t /= p) ++e;
  if (p == 2 && e < 2) throw Error("level_exponent: 2-adic levels need 4 | level");
  return e;
}

LevelData make_level(const AbelianField& f, long level, long p, std::vector<long> s) {
  LevelData ld;
  ld.field = f;
  ld.level = level;
  ld.p = p;
  ld.exponent = level_exponent(level, p);
  ld.p_pow = pow_integer(Integer(p), static_cast<unsigned long>(ld.exponent));
  ld.primes = canonical_prime_set(std::move(s), level);
  ld.classes = f.kernel_at_level(level);
  return ld;
}

Integer norm_character(const LevelData& ld, long x) {
  long r = x % ld.level;
  if (r < 0) r += ld.level;
  if (std::gcd(r, ld.level) != 1) throw Error("norm_character: class is not a unit");
  return Integer(r) % ld.p_pow;
}

namespace {

bool kernel_class(const LevelData& ld, long x) {
  return std::binary_search(ld.classes.begin(), ld.classes.end(), x);
}

long inverse_class(const LevelData& ld, long x) {
  return mod_inverse(Integer(x), Integer(ld.level)).get_si();
}

void require_even_weight(unsigned long k) {
  if (k < 2 || k % 2 != 0) throw Error("weight must be even and at least 2");
}

// Tilde values for every kernel class, memoized underneath per level/weight.
std::map<long, Rational> tilde_values(const LevelData& ld, unsigned long k) {
  auto z = partial_zeta_all(ld.field, ld.level, k, ld.primes);
  Rational scale = pow_rational(Rational(1, 2), ld.field.degree);
  for (auto& [x, v] : z) v *= scale;
  return z;
}

}  // namespace

ShiftedClass shifted_class(const LevelData& ld, long cls) {
  long r = cls % ld.level;
  if (r < 0) r += ld.level;
  return shifted_class(ld, r, Rational(r));
}

ShiftedClass shifted_class(const LevelData& ld, long cls, Rational rep) {
  long r = cls % ld.level;
  if (r < 0) r += ld.level;
  if (!kernel_class(ld, r)) throw Error("shifted_class: not a kernel class at this level");
  if (padic_valuation(rep, Integer(ld.p)) != 0) throw Error("shifted_class: rep is not a p-unit");
  if (rational_mod(rep, Integer(ld.level)) != r)
    throw Error("shifted_class: rep does not reduce to the class");
  return ShiftedClass{r, std::move(rep)};
}

ShiftedClass compose(const LevelData& ld, const ShiftedClass& a, const ShiftedClass& b) {
  return shifted_class(ld, (a.cls * b.cls) % ld.level, a.rep * b.rep);
}

Rational zeta_tilde_eps(const LevelData& ld, unsigned long k, const ClassFunction& eps) {
  require_even_weight(k);
  auto z = tilde_values(ld, k);
  Rational acc(0);
  for (const auto& [x, v] : eps) {
    if (!kernel_class(ld, x)) throw Error("class function key outside the level kernel");
    if (v != 0) acc += v * z.at(x);
  }
  return acc;
}

Rational delta_tilde(const LevelData& ld, const ShiftedClass& g, unsigned long k,
                     const ClassFunction& eps) {
  require_even_weight(k);
  auto z = tilde_values(ld, k);
  long ginv = inverse_class(ld, g.cls);
  Rational plain(0), shifted(0);
  for (const auto& [y, v] : eps) {
    if (!kernel_class(ld, y)) throw Error("class function key outside the level kernel");
    if (v == 0) continue;
    plain += v * z.at(y);
    // eps_g pairs the value at y with the indicator of g^{-1} y
    shifted += v * z.at((ginv * y) % ld.level);
  }
  return plain - pow_rational(g.rep, static_cast<long>(k)) * shifted;
}

GroupRingElt pseudomeasure_element(const LevelData& ld, const ShiftedClass& h, unsigned long k) {
  require_even_weight(k);
  auto z = tilde_values(ld, k);
  long hinv = inverse_class(ld, h.cls);
  Rational twist = pow_rational(h.rep, static_cast<long>(k));
  Integer p(ld.p);
  GroupRingElt out(ld.level, ld.p_pow);
  for (long x : ld.classes) {
    long neg = ld.level - x;
    if (ld.p == 2 && neg < x) continue;  // one key per {x, -x} pair
    Rational d = z.at(x) - twist * z.at((hinv * x) % ld.level);
    if (ld.p == 2 && neg != x)
      d += z.at(neg) - twist * z.at((hinv * neg) % ld.level);
    if (padic_valuation(d, p) < 0)
      throw Error("pseudomeasure coefficient not p-integral at class " + std::to_string(x));
    Integer nk;
    mpz_powm_ui(nk.get_mpz_t(), mod_inverse(norm_character(ld, x), ld.p_pow).get_mpz_t(), k,
                ld.p_pow.get_mpz_t());
    out.add(x, rational_mod(d, ld.p_pow) * nk);
  }
  return out;
}

GroupRingElt transfer_ring_map(const LevelData& from, const LevelData& to,
                               const GroupRingElt& x) {
  if (from.level != to.level || from.p != to.p) throw Error("transfer_ring_map: level mismatch");
  if (x.class_modulus() != from.level || x.coeff_modulus() != from.p_pow)
    throw Error("transfer_ring_map: element not at the source level");
  if (!std::includes(from.classes.begin(), from.classes.end(), to.classes.begin(),
                     to.classes.end()))
    throw Error("transfer_ring_map: target kernel not contained in the source kernel");
  long index = static_cast<long>(from.classes.size() / to.classes.size());
  if (index * static_cast<long>(to.classes.size()) != static_cast<long>(from.classes.size()) ||
      to.field.degree != from.field.degree * index)
    throw Error("transfer_ring_map: not a subfield pair");
  long ef = 0;
  for (long t = index; t % from.p == 0; t /= from.p) ++ef;
  long reduced = from.exponent - ef;
  if (reduced < 1) throw Error("transfer_ring_map: level exponent too small for the index");
  Integer new_mod = pow_integer(Integer(from.p), static_cast<unsigned long>(reduced));
  const long m = from.level;
  auto power_class = [&](long cls) {
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), Integer(cls).get_mpz_t(), static_cast<unsigned long>(index),
                Integer(m).get_mpz_t());
    long y = r.get_si();
    // p = 2 elements live on the quotient by -1, one key per pair; a proper
    // power map must land on the canonical key so images from different
    // subfields collide correctly. index 1 is the identity either way.
    if (from.p == 2 && index > 1) y = std::min(y, m - y);
    return y;
  };
  GroupRingElt out = x.mapped(power_class, m, new_mod);
  for (const auto& term : out.terms())
    if (!std::binary_search(to.classes.begin(), to.classes.end(), term.first))
      throw Error("transfer_ring_map: image class escaped the target kernel");
  return out;
}

GroupRingElt even_quotient(const GroupRingElt& x) {
  return x.symmetrized(x.class_modulus() - 1);
}

}  // namespace pmc
