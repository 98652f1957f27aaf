#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pmc/abelian_group.hpp"
#include "pmc/bernoulli.hpp"
#include "pmc/dirichlet.hpp"
#include "pmc/error.hpp"
#include "pmc/field.hpp"
#include "pmc/finite_group.hpp"
#include "pmc/zeta.hpp"

using namespace pmc;

namespace {

const std::map<std::string, AbelianField>& cat() {
  static auto c = load_field_catalog(default_data_dir() + "/fields.cat");
  return c;
}

const AbelianField& fld(const std::string& n) { return cat().at(n); }

DirichletCharacter find_char(long m, long gen_value_order_probe, long at, long want_exp) {
  // helper for tests that need one specific character: scan all of them
  for (const auto& chi : all_characters(m))
    if (character_order(chi) == gen_value_order_probe && character_exponent(chi, at) == want_exp)
      return chi;
  throw Error("no such character");
}

}  // namespace

TEST_CASE("bernoulli numbers against the classical table") {
  CHECK(bernoulli_number(0) == 1);
  CHECK(bernoulli_number(1) == Rational(-1, 2));
  CHECK(bernoulli_number(2) == Rational(1, 6));
  CHECK(bernoulli_number(4) == Rational(-1, 30));
  CHECK(bernoulli_number(6) == Rational(1, 42));
  CHECK(bernoulli_number(8) == Rational(-1, 30));
  CHECK(bernoulli_number(10) == Rational(5, 66));
  CHECK(bernoulli_number(12) == Rational(-691, 2730));
  for (unsigned long k = 3; k < 30; k += 2) CHECK(bernoulli_number(k) == 0);

  // von Staudt-Clausen: B_2n plus the reciprocals of the primes p with
  // p-1 | 2n is an integer.
  for (unsigned long k = 2; k <= 40; k += 2) {
    Rational v = bernoulli_number(k);
    for (long p = 2; p <= static_cast<long>(k) + 1; ++p) {
      bool prime = p >= 2;
      for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (prime && k % static_cast<unsigned long>(p - 1) == 0) v += Rational(1, p);
    }
    CHECK(v.get_den() == 1);
  }
}

TEST_CASE("bernoulli polynomials satisfy the defining identities") {
  std::mt19937_64 rng(521);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  for (unsigned long k = 1; k <= 8; ++k) {
    CHECK(bernoulli_poly(k, Rational(0)) == bernoulli_number(k));
    for (int iter = 0; iter < 6; ++iter) {
      Rational x = make_rational(Integer(num(rng)), Integer(den(rng)));
      CHECK(bernoulli_poly(k, x + 1) - bernoulli_poly(k, x) ==
            Rational(static_cast<long>(k)) * pow_rational(x, static_cast<long>(k) - 1));
      Rational refl = bernoulli_poly(k, Rational(1) - x);
      CHECK(refl == (k % 2 ? -bernoulli_poly(k, x) : bernoulli_poly(k, x)));
    }
  }
  CHECK(bernoulli_poly(2, Rational(1, 5)) == Rational(1, 150));
  CHECK(bernoulli_poly(4, Rational(1, 9)) == Rational(-1547, 65610));
  CHECK(bernoulli_poly(1, Rational(1)) == Rational(1, 2));
}

TEST_CASE("bernoulli overrides shift values and bump the epoch") {
  unsigned long before = bernoulli_epoch();
  override_bernoulli(2, Rational(1, 6) + Rational(1, 3));
  CHECK(bernoulli_epoch() == before + 1);
  CHECK(bernoulli_number(2) == Rational(1, 2));
  CHECK(bernoulli_poly(2, Rational(0)) == Rational(1, 2));
  CHECK(bernoulli_number(4) == Rational(-1, 30));  // untouched entries stay
  clear_bernoulli_overrides();
  CHECK(bernoulli_epoch() == before + 2);
  CHECK(bernoulli_number(2) == Rational(1, 6));
}

TEST_CASE("character enumeration and orthogonality") {
  CHECK(all_characters(1).size() == 1);
  CHECK(all_characters(2).size() == 1);
  CHECK(all_characters(5).size() == 4);
  CHECK(all_characters(9).size() == 6);
  CHECK(all_characters(40).size() == 16);

  const long m = 9;
  auto chars = all_characters(m);
  const auto& ug = unit_group(m);
  for (const auto& chi : chars) {
    CyclotomicNumber sum = CyclotomicNumber::zero(chi.zeta_order);
    for (long x : ug.elements) sum += character_value(chi, x);
    if (chi.is_trivial())
      CHECK(cyclo_to_rational(sum) == 6);
    else
      CHECK(sum.is_zero());
  }
  for (long x : ug.elements) {
    CyclotomicNumber sum = CyclotomicNumber::zero(chars[0].zeta_order);
    for (const auto& chi : chars) sum += character_value(chi, x);
    if (x == 1)
      CHECK(cyclo_to_rational(sum) == 6);
    else
      CHECK(sum.is_zero());
  }

  std::mt19937_64 rng(522);
  std::uniform_int_distribution<size_t> pick(0, unit_group(40).elements.size() - 1);
  for (const auto& chi : all_characters(40)) {
    for (int iter = 0; iter < 4; ++iter) {
      long x = unit_group(40).elements[pick(rng)];
      long y = unit_group(40).elements[pick(rng)];
      CHECK(character_value(chi, x * y % 40) == character_value(chi, x) * character_value(chi, y));
    }
  }
}

TEST_CASE("character orders and conductors") {
  std::map<long, int> order_count, cond_count;
  for (const auto& chi : all_characters(40)) {
    ++order_count[character_order(chi)];
    ++cond_count[character_conductor(chi)];
  }
  // U(40) = C2 x C2 x C4: 16 characters, orders 1, 2, 4.
  CHECK(order_count[1] == 1);
  CHECK(order_count[2] == 7);
  CHECK(order_count[4] == 8);
  CHECK(cond_count == std::map<long, int>{{1, 1}, {4, 1}, {5, 3}, {8, 2}, {20, 3}, {40, 6}});

  std::map<long, int> cond9;
  for (const auto& chi : all_characters(9)) ++cond9[character_conductor(chi)];
  CHECK(cond9 == std::map<long, int>{{1, 1}, {3, 1}, {9, 4}});
}

TEST_CASE("primitive cores reproduce their characters") {
  for (const auto& chi : all_characters(40)) {
    auto core = primitive_core(chi);  // internal validation on every unit
    CHECK(core.modulus == character_conductor(chi));
    if (core.modulus == chi.modulus) CHECK(core.evec == chi.evec);
  }

  // A character mod 40 of conductor 5 restricts to the quadratic character:
  // order 2, core value -1 at 2.
  for (const auto& chi : all_characters(40)) {
    if (character_conductor(chi) != 5 || character_order(chi) != 2) continue;
    auto core = primitive_core(chi);
    CHECK(core.zeta_order == 4);
    CHECK(character_exponent(core, 2) == 2);
    CHECK(cyclo_to_rational(character_value(core, 4)) == 1);
  }
}

TEST_CASE("generalized bernoulli anchors") {
  auto chi5 = find_char(5, 2, 2, 2);  // quadratic character mod 5
  CHECK(cyclo_to_rational(generalized_bernoulli(chi5, 2)) == Rational(4, 5));
  CHECK(generalized_bernoulli(chi5, 3).is_zero());  // even character, odd weight
  CHECK(cyclo_to_rational(generalized_bernoulli(chi5, 4)) == -8);

  auto chi4 = find_char(4, 2, 3, 1);  // the odd character mod 4
  CHECK(cyclo_to_rational(generalized_bernoulli(chi4, 1)) == Rational(-1, 2));
  CHECK(generalized_bernoulli(chi4, 2).is_zero());
  CHECK(cyclo_to_rational(generalized_bernoulli(chi4, 3)) == Rational(3, 2));

  DirichletCharacter triv;  // conductor 1
  CHECK(cyclo_to_rational(generalized_bernoulli(triv, 1)) == Rational(1, 2));
  CHECK(cyclo_to_rational(generalized_bernoulli(triv, 2)) == Rational(1, 6));
  CHECK(cyclo_to_rational(generalized_bernoulli(triv, 4)) == Rational(-1, 30));

  // Cubic characters mod 9 have conjugate irrational values.
  auto cubic = find_char(9, 3, 2, 2);
  auto conj = find_char(9, 3, 2, 4);
  auto b = generalized_bernoulli(cubic, 2);
  CHECK(!b.is_rational());
  CHECK(generalized_bernoulli(conj, 2) == b.galois(-1));

  // Only primitive characters are accepted.
  for (const auto& chi : all_characters(5))
    if (chi.is_trivial()) CHECK_THROWS_AS(generalized_bernoulli(chi, 2), Error);
}

TEST_CASE("partial zeta values match the polynomial oracle over the rationals") {
  const auto& q = fld("Q");
  struct Cfg {
    long level;
    std::vector<long> s;
  };
  std::vector<Cfg> cfgs{{4, {2}},       {8, {2}},      {9, {3}},      {16, {2}},
                        {27, {3}},      {20, {2, 5}},  {40, {2, 5}},  {21, {3, 7}},
                        {63, {3, 7}},   {10, {2, 5}},  {25, {2, 5}}};
  for (const auto& cfg : cfgs) {
    for (unsigned long k = 2; k <= 4; ++k) {
      auto all = partial_zeta_all(q, cfg.level, k, cfg.s);
      CHECK(all.size() == euler_phi(static_cast<unsigned long>(cfg.level)));
      for (const auto& [a, v] : all) CHECK(v == oracles::zeta_hurwitz(cfg.level, k, cfg.s, a));
    }
  }
}

TEST_CASE("partial zeta anchor tables at level 9") {
  const auto& q = fld("Q");
  const std::vector<long> s{3};
  std::map<long, Rational> tilde2{{1, Rational(-11, 72)}, {2, Rational(1, 72)},
                                  {4, Rational(13, 72)},  {5, Rational(13, 72)},
                                  {7, Rational(1, 72)},   {8, Rational(-11, 72)}};
  std::map<long, Rational> tilde4{{1, Rational(1547, 720)},  {2, Rational(227, 720)},
                                  {4, Rational(-1813, 720)}, {5, Rational(-1813, 720)},
                                  {7, Rational(227, 720)},   {8, Rational(1547, 720)}};
  for (const auto& [a, v] : tilde2) CHECK(partial_zeta_tilde(q, 9, 2, s, a) == v);
  for (const auto& [a, v] : tilde4) CHECK(partial_zeta_tilde(q, 9, 4, s, a) == v);

  CHECK(partial_zeta(q, 4, 2, {2}, 1) == Rational(1, 24));
  CHECK(partial_zeta(q, 9, 2, s, 1) == Rational(-11, 36));
  CHECK(partial_zeta(q, 2, 2, {2}, 1) == Rational(1, 12));
}

TEST_CASE("partial zeta totals reproduce the dedekind zeta values") {
  // Totals over the kernel equal zeta_{F,S}(1-k); the S-factors at 2 and 5
  // are (1-4)(1-5) for k = 2 and (1-64)(1-125) for k = 4, against
  // zeta_F(-1) = 1/30 and zeta_F(-3) = 1/60.
  const auto& l = fld("Qrt5");
  for (long level : {20L, 40L}) {
    Rational sum2(0), sum4(0);
    for (const auto& [x, v] : partial_zeta_all(l, level, 2, {2, 5})) sum2 += v;
    for (const auto& [x, v] : partial_zeta_all(l, level, 4, {2, 5})) sum4 += v;
    CHECK(sum2 == Rational(2, 5));
    CHECK(sum4 == Rational(651, 5));
  }

  // zeta_F(-1) = -1/21 for the cubic field; 3 stays prime (factor 1-27) and
  // 7 ramifies (factor 1-7).
  const auto& s7 = fld("Qz7p");
  Rational sum(0);
  for (const auto& [x, v] : partial_zeta_all(s7, 21, 2, {3, 7})) sum += v;
  CHECK(sum == Rational(-52, 7));
}

TEST_CASE("partial zeta symmetry under inversion of the class direction") {
  const auto& l = fld("Qrt5");
  auto even = partial_zeta_all(l, 40, 2, {2, 5});
  auto odd = partial_zeta_all(l, 40, 3, {2, 5});
  for (const auto& [x, v] : even) CHECK(even.at(40 - x) == v);
  for (const auto& [x, v] : odd) CHECK(odd.at(40 - x) == -v);
}

TEST_CASE("partial zeta level compatibility") {
  const auto& l = fld("Qrt5");
  auto coarse = partial_zeta_all(l, 20, 2, {2, 5});
  auto fine = partial_zeta_all(l, 40, 2, {2, 5});
  for (const auto& [y, v] : coarse) {
    Rational sum(0);
    for (const auto& [x, w] : fine)
      if (x % 20 == y) sum += w;
    CHECK(sum == v);
  }

  const auto& q = fld("Q");
  auto c9 = partial_zeta_all(q, 9, 4, {3});
  auto c27 = partial_zeta_all(q, 27, 4, {3});
  for (const auto& [y, v] : c9) {
    Rational sum(0);
    for (const auto& [x, w] : c27)
      if (x % 9 == y) sum += w;
    CHECK(sum == v);
  }
}

TEST_CASE("zeta cache tracks bernoulli overrides") {
  const auto& q = fld("Q");
  clear_zeta_cache();
  Rational v1 = partial_zeta(q, 4, 2, {2}, 1);
  CHECK(v1 == Rational(1, 24));
  CHECK(zeta_cache_entries() > 0);

  override_bernoulli(2, Rational(1, 6) + Rational(1, 3));
  Rational v2 = partial_zeta(q, 4, 2, {2}, 1);
  CHECK(v2 != v1);
  clear_bernoulli_overrides();
  CHECK(partial_zeta(q, 4, 2, {2}, 1) == v1);

  clear_zeta_cache();
  CHECK(zeta_cache_entries() == 0);
  CHECK(partial_zeta(q, 4, 2, {2}, 1) == v1);
}

TEST_CASE("partial zeta input validation") {
  const auto& q = fld("Q");
  const auto& l = fld("Qrt5");
  CHECK_THROWS_AS(partial_zeta_all(q, 9, 2, {2}), Error);       // misses 3
  CHECK_THROWS_AS(partial_zeta_all(q, 9, 0, {3}), Error);       // weight
  CHECK_THROWS_AS(partial_zeta_all(l, 12, 2, {2, 3}), Error);   // conductor
  CHECK_THROWS_AS(partial_zeta_all(q, 4, 2, {4}), Error);       // not prime
  CHECK_THROWS_AS(partial_zeta(l, 20, 2, {2, 5}, 3), Error);    // not in kernel
  CHECK(canonical_prime_set({5, 2, 2, 5}, 20) == std::vector<long>{2, 5});
}
