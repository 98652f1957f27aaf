#include "pmc/dirichlet.hpp"

#include <numeric>

#include "pmc/abelian_group.hpp"
#include "pmc/bernoulli.hpp"
#include "pmc/error.hpp"

namespace pmc {

std::vector<DirichletCharacter> all_characters(long m) {
  if (m < 1) throw Error("invalid character modulus");
  if (m == 1) return {DirichletCharacter{}};
  const UnitGroup& ug = unit_group(m);
  DirichletCharacter chi;
  chi.modulus = m;
  chi.zeta_order = static_cast<unsigned long>(ug.exponent);
  chi.evec.assign(ug.gens.size(), 0);

  std::vector<DirichletCharacter> out;
  while (true) {
    out.push_back(chi);
    size_t i = 0;
    for (; i < chi.evec.size(); ++i) {
      if (++chi.evec[i] < ug.orders[i]) break;
      chi.evec[i] = 0;
    }
    if (i == chi.evec.size()) break;
  }
  if (out.size() != euler_phi(static_cast<unsigned long>(m)))
    throw Error("character count mismatch");
  return out;
}

long character_exponent(const DirichletCharacter& chi, long x) {
  if (chi.modulus == 1) return 0;
  const UnitGroup& ug = unit_group(chi.modulus);
  x %= chi.modulus;
  if (x < 0) x += chi.modulus;
  const auto& tup = ug.dlog[ug.index_of(x)];
  const long n = static_cast<long>(chi.zeta_order);
  long acc = 0;
  for (size_t i = 0; i < tup.size(); ++i)
    acc = (acc + chi.evec[i] * (n / ug.orders[i]) % n * tup[i]) % n;
  return acc;
}

CyclotomicNumber character_value(const DirichletCharacter& chi, long x) {
  return CyclotomicNumber::zeta(chi.zeta_order, character_exponent(chi, x));
}

long character_order(const DirichletCharacter& chi) {
  if (chi.modulus == 1) return 1;
  const UnitGroup& ug = unit_group(chi.modulus);
  long ord = 1;
  for (size_t i = 0; i < chi.evec.size(); ++i)
    ord = std::lcm(ord, ug.orders[i] / std::gcd(ug.orders[i], chi.evec[i]));
  return ord;
}

long character_conductor(const DirichletCharacter& chi) {
  if (chi.modulus == 1) return 1;
  const UnitGroup& ug = unit_group(chi.modulus);
  for (long c = 1; c <= chi.modulus; ++c) {
    if (chi.modulus % c != 0) continue;
    bool ok = true;
    for (long u : ug.elements)
      if (u % c == 1 % c && character_exponent(chi, u) != 0) {
        ok = false;
        break;
      }
    if (ok) return c;
  }
  throw Error("conductor search failed");
}

DirichletCharacter primitive_core(const DirichletCharacter& chi) {
  const long c = character_conductor(chi);
  if (c == chi.modulus) return chi;
  DirichletCharacter core;
  if (c == 1) return core;

  const UnitGroup& ug = unit_group(chi.modulus);
  const UnitGroup& uc = unit_group(c);
  core.modulus = c;
  core.zeta_order = static_cast<unsigned long>(uc.exponent);
  const long nm = static_cast<long>(chi.zeta_order);
  const long nc = static_cast<long>(core.zeta_order);

  for (size_t i = 0; i < uc.gens.size(); ++i) {
    long lift = -1;
    for (long u : ug.elements)
      if (u % c == uc.gens[i]) {
        lift = u;
        break;
      }
    if (lift < 0) throw Error("unit does not lift");  // reduction is onto
    long jm = character_exponent(chi, lift);
    // zeta_nm^jm is a d_i-th root of unity; convert to an evec entry.
    long d = uc.orders[i];
    if (jm * d % nm != 0) throw Error("core value of wrong order");
    core.evec.push_back(jm * d / nm % d);
  }

  // The core must reproduce chi everywhere, not only on generator lifts.
  for (long u : ug.elements)
    if (character_exponent(core, u % c) * (nm / nc) != character_exponent(chi, u))
      throw Error("core does not induce the character");
  return core;
}

CyclotomicNumber generalized_bernoulli(const DirichletCharacter& chi, unsigned long k) {
  const long c = chi.modulus;
  if (character_conductor(chi) != c) throw Error("generalized Bernoulli needs a primitive character");
  if (c == 1) return CyclotomicNumber::constant(1, bernoulli_poly(k, Rational(1)));

  ZetaAccumulator acc(chi.zeta_order);
  for (long a = 1; a <= c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    acc.add_monomial(character_exponent(chi, a), bernoulli_poly(k, make_rational(Integer(a), Integer(c))));
  }
  return acc.reduce().scaled(pow_rational(Rational(c), static_cast<long>(k) - 1));
}

}  // namespace pmc
