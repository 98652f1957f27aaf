#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pmc/abelian_group.hpp"
#include "pmc/error.hpp"
#include "pmc/field.hpp"
#include "pmc/finite_group.hpp"
#include "pmc/ideal.hpp"
#include "pmc/trace_pairs.hpp"

using namespace pmc;

namespace {

const std::map<std::string, AbelianField>& cat() {
  static auto c = load_field_catalog(default_data_dir() + "/fields.cat");
  return c;
}

const AbelianField& fld(const std::string& n) { return cat().at(n); }

AbelianField::Elt elt(const AbelianField& f, std::vector<Rational> coords) {
  coords.resize(f.degree, Rational(0));
  return coords;
}

AbelianField::Elt random_elt(const AbelianField& f, std::mt19937_64& rng, bool integral) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 2);
  AbelianField::Elt a(f.degree);
  for (int i = 0; i < f.degree; ++i)
    a[i] = integral ? Rational(num(rng)) : make_rational(Integer(num(rng)), Integer(den(rng)));
  return a;
}

// Re-derives the search box with extra margin and enumerates every
// coordinate, x_0 included; agreement shows both the bound and the
// trace-equation elimination are sound.
std::vector<AbelianField::Elt> trace_elements_bruteforce(const AbelianField& f, long alpha,
                                                         long margin) {
  const int d = f.degree;
  const Rational target = Rational(alpha) * d;
  const auto& ginv = f.gram_inverse();
  std::vector<long> bound(d);
  for (int j = 0; j < d; ++j)
    bound[j] = floor_isqrt(target * target * ginv[j][j]).get_si() + margin;

  std::vector<AbelianField::Elt> out;
  std::vector<long> x(d, 0);
  auto rec = [&](auto&& self, int j) -> void {
    if (j == d) {
      AbelianField::Elt cand(d);
      for (int i = 0; i < d; ++i) cand[i] = x[i];
      if (f.trace(cand) != target) return;
      if (!f.totally_positive(cand)) return;
      out.push_back(cand);
      return;
    }
    for (x[j] = -bound[j]; x[j] <= bound[j]; ++x[j]) self(self, j + 1);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("field catalog loads and cross-checks the stored polynomials") {
  CHECK(cat().size() == 5);
  const auto& q = fld("Q");
  CHECK(q.conductor == 1);
  CHECK(q.degree == 1);
  CHECK(q.is_rationals());
  CHECK(q.kernel_cond == std::vector<long>{0});

  const auto& l = fld("Qrt5");
  CHECK(l.conductor == 5);
  CHECK(l.degree == 2);
  CHECK(l.min_poly == std::vector<Integer>{-1, 1, 1});
  CHECK(l.kernel_cond == std::vector<long>{1, 4});

  CHECK(fld("Qz7p").degree == 3);
  CHECK(fld("Qrt2").conductor == 8);
  CHECK(fld("Qz16p").degree == 4);

  CHECK_THROWS_AS(load_field_catalog("/nonexistent/fields.cat"), Error);
}

TEST_CASE("catalog rejects a polynomial that disagrees with its conductor") {
  auto tmp = std::filesystem::temp_directory_path() / "bad_fields.cat";
  {
    std::ofstream out(tmp);
    out << "field Bad cond=5 deg=2\n-2 1 1\nend\n";
  }
  CHECK_THROWS_AS(load_field_catalog(tmp.string()), Error);
  {
    std::ofstream out(tmp);
    out << "field Unfinished cond=5 deg=2\n-1 1 1\n";
  }
  CHECK_THROWS_AS(load_field_catalog(tmp.string()), Error);
  std::filesystem::remove(tmp);
}

TEST_CASE("generator satisfies its minimal polynomial in every field") {
  for (const auto& [name, f] : cat()) {
    auto acc = f.zero();
    auto pw = f.one();
    for (int i = 0; i <= f.degree; ++i) {
      acc = f.add(acc, f.scale(pw, Rational(f.min_poly[i])));
      if (i < f.degree) pw = f.mul(pw, f.eta());
    }
    CHECK(f.is_zero(acc));
  }

  // eta^2 = 1 - eta at conductor 5; eta^2 = 2 at conductor 8.
  const auto& l = fld("Qrt5");
  CHECK(l.mul(l.eta(), l.eta()) == elt(l, {1, -1}));
  const auto& r2 = fld("Qrt2");
  CHECK(r2.mul(r2.eta(), r2.eta()) == elt(r2, {2}));
}

TEST_CASE("power sums and the trace form match the discriminants") {
  CHECK(fld("Q").power_sums() == std::vector<Rational>{1});
  CHECK(fld("Qrt5").power_sums() == std::vector<Rational>{2, -1, 3});
  CHECK(fld("Qrt2").power_sums() == std::vector<Rational>{2, 0, 4});
  CHECK(fld("Qz7p").power_sums() == std::vector<Rational>{3, -1, 5, -4, 13});

  // det of the trace form on an integral power basis is the discriminant.
  CHECK(det_rational(fld("Q").gram()) == 1);
  CHECK(det_rational(fld("Qrt5").gram()) == 5);
  CHECK(det_rational(fld("Qrt2").gram()) == 8);
  CHECK(det_rational(fld("Qz7p").gram()) == 49);
  CHECK(det_rational(fld("Qz16p").gram()) == 2048);

  for (const auto& [name, f] : cat()) {
    const auto& g = f.gram();
    const auto& gi = f.gram_inverse();
    for (int i = 0; i < f.degree; ++i)
      for (int j = 0; j < f.degree; ++j) {
        Rational acc(0);
        for (int k = 0; k < f.degree; ++k) acc += g[i][k] * gi[k][j];
        CHECK(acc == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("trace and norm agree with independent routes") {
  std::mt19937_64 rng(417);
  for (const auto& [name, f] : cat()) {
    for (int iter = 0; iter < 12; ++iter) {
      auto a = random_elt(f, rng, false);
      auto b = random_elt(f, rng, false);
      CHECK(f.norm(a) == oracles::norm_resultant(f, a));
      CHECK(f.norm(f.mul(a, b)) == f.norm(a) * f.norm(b));
      CHECK(f.trace(f.add(a, b)) == f.trace(a) + f.trace(b));
      CHECK(oracles::interval_contains(oracles::trace_interval(f, a, 128), f.trace(a)));
    }
  }

  const auto& l = fld("Qrt5");
  CHECK(l.norm(l.eta()) == -1);
  CHECK(l.norm(elt(l, {2, -2})) == 4);
  CHECK(l.norm(elt(l, {1, -1})) == 1);
  CHECK(l.norm(elt(l, {4, 2})) == 4);
  CHECK(l.norm(elt(l, {3, 1})) == 5);
  CHECK(l.trace(elt(l, {2, -2})) == 6);
  CHECK(fld("Qz7p").norm(fld("Qz7p").eta()) == 1);
  CHECK(fld("Qrt2").norm(fld("Qrt2").eta()) == -2);
  CHECK(fld("Qz16p").norm(fld("Qz16p").eta()) == 2);
}

TEST_CASE("norm is the full product of galois conjugates") {
  const auto& f = fld("Qz7p");
  std::mt19937_64 rng(418);
  for (int iter = 0; iter < 8; ++iter) {
    auto a = random_elt(f, rng, false);
    auto prod = f.mul(f.mul(a, f.galois(a, 2)), f.galois(a, 3));
    CHECK(prod == f.from_rational(f.norm(a)));
  }

  // Quadratic case doubles as a trace cross-check.
  const auto& l = fld("Qrt5");
  for (int iter = 0; iter < 8; ++iter) {
    auto a = random_elt(l, rng, false);
    auto c = l.galois(a, 2);
    CHECK(l.mul(a, c) == l.from_rational(l.norm(a)));
    CHECK(l.add(a, c) == l.from_rational(l.trace(a)));
  }
}

TEST_CASE("cyclotomic round trips, membership, and galois anchors") {
  std::mt19937_64 rng(419);
  for (const auto& [name, f] : cat()) {
    for (int iter = 0; iter < 6; ++iter) {
      auto a = random_elt(f, rng, false);
      CHECK(f.from_cyclotomic(f.to_cyclotomic(a)) == a);
    }
  }

  const auto& l = fld("Qrt5");
  CHECK_THROWS_AS(l.from_cyclotomic(CyclotomicNumber::zeta(5, 1)), Error);
  CHECK_THROWS_AS(l.from_cyclotomic(CyclotomicNumber::zeta(40, 1)), Error);

  // Conjugation at conductor 5 sends eta to -1-eta; t=4 is complex
  // conjugation and fixes the real field pointwise.
  CHECK(l.galois(l.eta(), 2) == elt(l, {-1, -1}));
  CHECK(l.galois(l.eta(), 4) == l.eta());
  const auto& h = fld("Qz16p");
  CHECK(h.galois(h.eta(), 7) == h.scale(h.eta(), -1));
  CHECK(h.galois(h.eta(), 15) == h.eta());

  std::vector<long> places = l.real_places();
  CHECK(places == std::vector<long>{1, 2});
  CHECK(fld("Qz7p").real_places() == std::vector<long>{1, 2, 3});
  CHECK(h.real_places() == std::vector<long>{1, 3, 5, 7});
  CHECK(fld("Q").real_places() == std::vector<long>{1});
}

TEST_CASE("total positivity by certified signs") {
  const auto& l = fld("Qrt5");
  CHECK(l.totally_positive(elt(l, {2, -2})));
  CHECK(l.totally_positive(elt(l, {4, 2})));
  CHECK(l.totally_positive(elt(l, {3})));
  CHECK(!l.totally_positive(l.eta()));
  CHECK(!l.totally_positive(elt(l, {1, 1})));
  CHECK(!l.totally_positive(elt(l, {-3})));

  const auto& r2 = fld("Qrt2");
  CHECK(r2.totally_positive(elt(r2, {2, -1})));
  CHECK(!r2.totally_positive(elt(r2, {1, -1})));
  CHECK(fld("Q").totally_positive(elt(fld("Q"), {Rational(1, 7)})));
}

TEST_CASE("unit kernels at composite levels") {
  const auto& l = fld("Qrt5");
  CHECK(l.kernel_at_level(40) == std::vector<long>{1, 9, 11, 19, 21, 29, 31, 39});
  CHECK(l.kernel_at_level(5) == std::vector<long>{1, 4});
  CHECK_THROWS_AS(l.kernel_at_level(12), Error);

  CHECK(fld("Q").kernel_at_level(12) == std::vector<long>{1, 5, 7, 11});

  auto k63 = fld("Qz7p").kernel_at_level(63);
  CHECK(k63.size() == 12);
  for (long u : k63) CHECK((u % 7 == 1 || u % 7 == 6));
}

TEST_CASE("fixed field recovery from a unit kernel") {
  CHECK(field_from_kernel(40, {1, 9, 11, 19, 21, 29, 31, 39}, cat()).name == "Qrt5");
  CHECK(field_from_kernel(40, unit_group(40).elements, cat()).name == "Q");
  CHECK(field_from_kernel(16, {1, 7, 9, 15}, cat()).name == "Qrt2");
  CHECK(field_from_kernel(16, {1, 15}, cat()).name == "Qz16p");
  CHECK(field_from_kernel(5, {1, 4}, cat()).name == "Qrt5");
  CHECK(field_from_kernel(189, fld("Qz7p").kernel_at_level(189), cat()).name == "Qz7p");

  // Input order must not matter.
  CHECK(field_from_kernel(16, {15, 1, 9, 7}, cat()).name == "Qrt2");

  // The fixed field of {1, 8} mod 9 is real of conductor 9: not stocked.
  CHECK_THROWS_AS(field_from_kernel(9, {1, 8}, cat()), Error);
  CHECK_THROWS_AS(field_from_kernel(40, {1, 2}, cat()), Error);
}

TEST_CASE("residue degrees from the kernel") {
  const auto& l = fld("Qrt5");
  CHECK(l.residue_degree(11) == 1);
  CHECK(l.residue_degree(19) == 1);
  CHECK(l.residue_degree(2) == 2);
  CHECK(l.residue_degree(3) == 2);
  CHECK_THROWS_AS(l.residue_degree(5), Error);

  const auto& s = fld("Qz7p");
  CHECK(s.residue_degree(13) == 1);
  CHECK(s.residue_degree(2) == 3);
  CHECK(s.residue_degree(3) == 3);

  const auto& h = fld("Qz16p");
  CHECK(h.residue_degree(7) == 2);
  CHECK(h.residue_degree(97) == 1);
  CHECK(h.residue_degree(3) == 4);
  CHECK(fld("Q").residue_degree(7) == 1);
}

TEST_CASE("prime splitting with lifted factors") {
  const auto& l = fld("Qrt5");

  auto inert = splitting_data(l, 3, 2);
  CHECK(inert.f == 2);
  CHECK(inert.primes.size() == 1);
  CHECK(inert.primes[0].factor_lift == std::vector<Integer>{8, 1, 1});

  auto split = splitting_data(l, 11, 1);
  CHECK(split.f == 1);
  CHECK(split.primes.size() == 2);
  CHECK(split.primes[0].factor_q == std::vector<Integer>{8, 1});  // root 3
  CHECK(split.primes[1].factor_q == std::vector<Integer>{4, 1});  // root 7

  // Upgrading the lift keeps the factor order and refines each root.
  auto deep = splitting_data(l, 11, 3);
  CHECK(deep.lift_exponent >= 3);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(deep.primes[i].factor_q == split.primes[i].factor_q);
    Integer root = deep.modulus - deep.primes[i].factor_lift[0];
    Integer val = (root * root + root - 1) % deep.modulus;
    if (val < 0) val += deep.modulus;
    CHECK(val == 0);
  }
  auto again = splitting_data(l, 11, 1);
  CHECK(again.lift_exponent >= 3);

  auto quads = splitting_data(fld("Qz16p"), 7, 1);
  CHECK(quads.f == 2);
  CHECK(quads.primes.size() == 2);
  // The two quadratics multiply back to the minimal polynomial mod 7.
  const auto& a = quads.primes[0].factor_q;
  const auto& b = quads.primes[1].factor_q;
  std::vector<Integer> prod(5, Integer(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) prod[i + j] += a[i] * b[j];
  std::vector<Integer> expect{2, 0, -4, 0, 1};
  for (int i = 0; i < 5; ++i) {
    Integer d = (prod[i] - expect[i]) % 7;
    CHECK(d == 0);
  }

  CHECK(splitting_data(fld("Qz7p"), 13, 1).primes.size() == 3);
  CHECK(splitting_data(fld("Q"), 13, 1).primes.size() == 1);
}

TEST_CASE("valuations and principal factorizations") {
  const auto& l = fld("Qrt5");

  auto parts3 = factor_principal(l, elt(l, {3}), {});
  REQUIRE(parts3.size() == 1);
  CHECK(parts3[0].q == 3);
  CHECK(parts3[0].f == 2);
  CHECK(parts3[0].e == 1);
  CHECK(ideal_norm(parts3) == 9);
  CHECK(artin_class(parts3, 40) == 9);

  // Units factor to nothing: N(2 + eta) = 1.
  CHECK(factor_principal(l, elt(l, {2, 1}), {}).empty());

  // 3 + eta generates the ramified prime over 5; it must be avoided.
  CHECK(factor_principal(l, elt(l, {3, 1}), {5}).empty());
  CHECK_THROWS_AS(factor_principal(l, elt(l, {3, 1}), {}), Error);

  // N(4 - eta) = 19 splits; the class of the factor is 19 itself.
  auto parts19 = factor_principal(l, elt(l, {4, -1}), {});
  REQUIRE(parts19.size() == 1);
  CHECK(parts19[0].q == 19);
  CHECK(parts19[0].f == 1);
  CHECK(ideal_norm(parts19) == 19);
  CHECK(artin_class(parts19, 40) == 19);

  // Multiplicativity across a product.
  auto combined = factor_principal(l, l.mul(elt(l, {3}), elt(l, {4, -1})), {});
  IdealParts merged = parts3;
  merged.insert(merged.end(), parts19.begin(), parts19.end());
  std::sort(merged.begin(), merged.end());
  CHECK(combined == merged);

  // The avoid set masks chosen primes.
  CHECK(factor_principal(l, l.mul(elt(l, {3}), elt(l, {4, -1})), {19}) == parts3);

  auto sd = splitting_data(l, 3, 1);
  CHECK_THROWS_AS(local_valuations(l, sd, elt(l, {9})), Error);
  CHECK_THROWS_AS(factor_principal(l, l.zero(), {}), Error);
}

TEST_CASE("trace elements match a wider brute-force box") {
  const auto& l = fld("Qrt5");
  auto t3 = trace_elements(l, 3);
  REQUIRE(t3.size() == 3);
  CHECK(t3[0] == elt(l, {2, -2}));
  CHECK(t3[1] == elt(l, {3, 0}));
  CHECK(t3[2] == elt(l, {4, 2}));
  CHECK(t3 == trace_elements_bruteforce(l, 3, 3));

  CHECK(trace_elements(l, 2) == trace_elements_bruteforce(l, 2, 3));
  CHECK(trace_elements(l, 1) == std::vector<AbelianField::Elt>{l.one()});

  const auto& q = fld("Q");
  CHECK(trace_elements(q, 5) == std::vector<AbelianField::Elt>{elt(q, {5})});

  const auto& s = fld("Qz7p");
  auto t1 = trace_elements(s, 1);
  CHECK(t1 == trace_elements_bruteforce(s, 1, 2));
  CHECK(std::find(t1.begin(), t1.end(), s.one()) != t1.end());
  for (const auto& a : t1) CHECK(s.trace(a) == 3);

  CHECK_THROWS_AS(trace_elements(l, 0), Error);
}

TEST_CASE("trace pairs enumerate divisors away from the avoided primes") {
  const auto& l = fld("Qrt5");
  auto pairs = trace_pairs(l, 3, {2, 5});
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0].alpha == elt(l, {2, -2}));
  CHECK(pairs[0].ideal.empty());
  CHECK(pairs[1].alpha == elt(l, {3, 0}));
  CHECK(pairs[1].ideal.empty());
  CHECK(pairs[2].alpha == elt(l, {3, 0}));
  REQUIRE(pairs[2].ideal.size() == 1);
  CHECK(pairs[2].ideal[0].q == 3);
  CHECK(pairs[2].ideal[0].f == 2);
  CHECK(pairs[2].ideal[0].e == 1);
  CHECK(ideal_norm(pairs[2].ideal) == 9);
  CHECK(pairs[3].alpha == elt(l, {4, 2}));
  CHECK(pairs[3].ideal.empty());

  // [2] has the single unit-divisor pair: N(2) is pure 2-power.
  auto p2 = trace_pairs(l, 2, {2, 5});
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].ideal.empty());

  const auto& q = fld("Q");
  auto pq = trace_pairs(q, 3, {2, 5});
  REQUIRE(pq.size() == 2);
  CHECK(pq[0].ideal.empty());
  CHECK(ideal_norm(pq[1].ideal) == 3);

  // Exponent walks cover prime powers: N(9) = 81 over the rationals.
  auto p9 = trace_pairs(q, 9, {2, 5});
  REQUIRE(p9.size() == 3);
  CHECK(ideal_norm(p9[0].ideal) == 1);
  CHECK(ideal_norm(p9[1].ideal) == 3);
  CHECK(ideal_norm(p9[2].ideal) == 9);
}

TEST_CASE("pairs extend to the larger field and twist under galois") {
  const auto& q = fld("Q");
  const auto& l = fld("Qrt5");

  auto pq = trace_pairs(q, 3, {2, 5});
  auto lifted = extend_pair(q, pq[1], l);  // (3, (3))
  CHECK(lifted.alpha == elt(l, {3, 0}));
  REQUIRE(lifted.ideal.size() == 1);
  CHECK(lifted.ideal[0].q == 3);
  CHECK(lifted.ideal[0].f == 2);
  CHECK(ideal_norm(lifted.ideal) == 9);

  // A split prime extends to the full fiber.
  TracePair p19{elt(q, {19}), factor_principal(q, elt(q, {19}), {})};
  auto both = extend_pair(q, p19, l);
  CHECK(both.ideal.size() == 2);
  CHECK(ideal_norm(both.ideal) == 19 * 19);

  // Galois permutes the fiber and fixes extended pairs.
  CHECK(galois_prime_image(l, 19, 0, 2) == 1);
  CHECK(galois_prime_image(l, 19, 1, 2) == 0);
  CHECK(galois_prime_image(l, 19, 0, 4) == 0);
  CHECK(galois_prime_image(l, 3, 0, 2) == 0);
  auto twisted = galois_pair(l, both, 2);
  CHECK(twisted == both);

  auto fixed = galois_pair(l, lifted, 2);
  CHECK(fixed == lifted);

  // eta_8 inside the conductor-16 field is eta^2 - 2.
  const auto& r2 = fld("Qrt2");
  const auto& h = fld("Qz16p");
  CHECK(subfield_generator(r2, h) == elt(h, {-2, 0, 1, 0}));
  CHECK_THROWS_AS(subfield_generator(fld("Qz7p"), h), Error);

  std::mt19937_64 rng(420);
  for (int iter = 0; iter < 6; ++iter) {
    auto a = random_elt(r2, rng, true);
    auto b = random_elt(r2, rng, true);
    CHECK(embed_element(r2, h, r2.mul(a, b)) ==
          h.mul(embed_element(r2, h, a), embed_element(r2, h, b)));
    CHECK(h.trace(embed_element(r2, h, a)) == 2 * r2.trace(a));
    CHECK(h.norm(embed_element(r2, h, a)) == pow_rational(r2.norm(a), 2));
  }
  for (int iter = 0; iter < 6; ++iter) {
    auto a = random_elt(q, rng, true);
    CHECK(l.trace(embed_element(q, l, a)) == 2 * q.trace(a));
  }
}
