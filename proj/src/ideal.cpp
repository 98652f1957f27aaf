#include "pmc/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "pmc/error.hpp"
#include "pmc/linalg.hpp"

namespace pmc {

namespace {

// Polynomials as ascending Integer coefficient vectors, reduced mod some M.
using Poly = std::vector<Integer>;

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree_of(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly mod_each(Poly p, const Integer& m) {
  for (auto& c : p) {
    c %= m;
    if (c < 0) c += m;
  }
  return trim(std::move(p));
}

Poly add_mod(const Poly& a, const Poly& b, const Integer& m) {
  Poly r(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return mod_each(std::move(r), m);
}

Poly sub_mod(const Poly& a, const Poly& b, const Integer& m) {
  Poly r(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return mod_each(std::move(r), m);
}

Poly mul_mod(const Poly& a, const Poly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return mod_each(std::move(r), m);
}

// Division with remainder by a monic divisor, valid over Z/m.
std::pair<Poly, Poly> divmod_monic(Poly num, const Poly& den, const Integer& m) {
  if (den.empty() || den.back() != 1) throw Error("divisor not monic");
  const int dd = degree_of(den);
  num = mod_each(std::move(num), m);
  if (degree_of(num) < dd) return {Poly{}, std::move(num)};
  Poly quot(num.size() - dd, Integer(0));
  for (size_t i = num.size(); i-- > static_cast<size_t>(dd);) {
    Integer q = num[i];
    if (q == 0) continue;
    quot[i - dd] = q;
    for (int k = 0; k <= dd; ++k) {
      num[i - dd + k] -= q * den[k];
      num[i - dd + k] %= m;
      if (num[i - dd + k] < 0) num[i - dd + k] += m;
    }
  }
  return {trim(std::move(quot)), trim(std::move(num))};
}

Poly scale_mod(const Poly& a, const Integer& c, const Integer& m) {
  Poly r = a;
  for (auto& x : r) x *= c;
  return mod_each(std::move(r), m);
}

// Extended Euclid over the field Z/q: returns monic gcd g and s, t with
// s a + t b = g.
void ext_euclid(Poly a, Poly b, const Integer& q, Poly& g, Poly& s, Poly& t) {
  Poly r0 = mod_each(std::move(a), q), r1 = mod_each(std::move(b), q);
  Poly s0{Integer(1)}, s1{}, t0{}, t1{Integer(1)};
  while (!r1.empty()) {
    // make r1 monic for divmod, fold the scaling into the cofactors
    Integer lead = r1.back();
    Integer inv = mod_inverse(lead, q);
    Poly r1m = scale_mod(r1, inv, q);
    auto [quot, rem] = divmod_monic(r0, r1m, q);
    Poly qs = scale_mod(quot, inv, q);  // quotient against the unscaled r1
    Poly ns = sub_mod(s0, mul_mod(qs, s1, q), q);
    Poly nt = sub_mod(t0, mul_mod(qs, t1, q), q);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(ns);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  Integer inv = mod_inverse(r0.back(), q);
  g = scale_mod(r0, inv, q);
  s = scale_mod(s0, inv, q);
  t = scale_mod(t0, inv, q);
}

// One quadratic lifting step: from f = g h, s g + t h = 1 (mod m) to the
// same congruences mod m2, with g, h monic.
void hensel_step(const Poly& f, Poly& g, Poly& h, Poly& s, Poly& t, const Integer& m2) {
  Poly e = sub_mod(f, mul_mod(g, h, m2), m2);
  Poly dg = divmod_monic(mul_mod(t, e, m2), g, m2).second;
  Poly num = sub_mod(e, mul_mod(h, dg, m2), m2);
  auto [dh, rem] = divmod_monic(num, g, m2);
  if (!rem.empty()) throw Error("lifting step is inexact");
  g = add_mod(g, dg, m2);
  h = add_mod(h, dh, m2);

  Poly b = sub_mod(add_mod(mul_mod(s, g, m2), mul_mod(t, h, m2), m2), Poly{Integer(1)}, m2);
  Poly s1 = sub_mod(s, mul_mod(s, b, m2), m2);
  Poly t1 = sub_mod(t, mul_mod(t, b, m2), m2);
  auto [u2, tr] = divmod_monic(t1, g, m2);
  t = std::move(tr);
  s = add_mod(s1, mul_mod(u2, h, m2), m2);

  Poly check = add_mod(mul_mod(s, g, m2), mul_mod(t, h, m2), m2);
  if (check != Poly{Integer(1)}) throw Error("lifted cofactors lost coprimality");
}

// Lift the mod-q factorization of monic f to mod q^B, factor by factor.
std::vector<Poly> hensel_multifactor(const Poly& f, const std::vector<Poly>& factors,
                                     const Integer& q, long B) {
  Integer target = pow_integer(q, static_cast<unsigned long>(B));
  if (factors.size() == 1) return {mod_each(f, target)};

  Poly g = factors[0];
  Poly h{Integer(1)};
  for (size_t i = 1; i < factors.size(); ++i) h = mul_mod(h, factors[i], q);
  Poly gcd, s, t;
  ext_euclid(g, h, q, gcd, s, t);
  if (gcd != Poly{Integer(1)}) throw Error("factors are not coprime mod q");

  Integer m = q;
  while (m < target) {
    Integer m2 = m * m;
    if (m2 > target) m2 = target;  // congruences mod m2 restrict to mod target
    hensel_step(mod_each(f, m2), g, h, s, t, m2);
    m = m2;
  }

  std::vector<Poly> rest(factors.begin() + 1, factors.end());
  auto lifted = hensel_multifactor(h, rest, q, B);
  lifted.insert(lifted.begin(), g);
  return lifted;
}

Integer eval_mod(const Poly& p, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (size_t i = p.size(); i-- > 0;) {
    acc = (acc * x + p[i]) % m;
    if (acc < 0) acc += m;
  }
  return acc;
}

// Distinct monic irreducible factors of the minimal polynomial mod q; all
// have degree f = residue_degree(q). Deterministic order.
std::vector<Poly> factor_minpoly_mod(const AbelianField& fld, long q) {
  const int d = fld.degree;
  const int f = fld.residue_degree(q);
  Integer qq(q);
  Poly base = mod_each(Poly(fld.min_poly.begin(), fld.min_poly.end()), qq);
  if (degree_of(base) != d) throw Error("minimal polynomial degenerates mod q");

  std::vector<Poly> out;
  if (f == d) {
    out.push_back(base);
  } else if (f == 1) {
    for (long x = 0; x < q; ++x) {
      if (eval_mod(base, Integer(x), qq) == 0)
        out.push_back(Poly{Integer((q - x) % q), Integer(1)});
    }
  } else if (f == 2) {
    for (long b = 0; b < q && static_cast<int>(out.size()) < d / f; ++b) {
      for (long c = 0; c < q; ++c) {
        Poly cand{Integer(c), Integer(b), Integer(1)};
        if (divmod_monic(base, cand, qq).second.empty()) {
          out.push_back(cand);
          if (static_cast<int>(out.size()) == d / f) break;
        }
      }
    }
  } else {
    throw Error("unsupported residue degree");
  }
  if (static_cast<int>(out.size()) != d / f) throw Error("wrong number of primes over q");
  return out;
}

Integer resultant_int(const Poly& a, const Poly& b) {
  const int m = degree_of(a), n = degree_of(b);
  if (m < 0 || n < 0) throw Error("resultant of zero polynomial");
  if (m == 0) return pow_integer(a[0], n);
  if (n == 0) return pow_integer(b[0], m);
  RationalMatrix s(m + n, std::vector<Rational>(m + n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = Rational(a[m - k]);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k <= n; ++k) s[n + j][j + k] = Rational(b[n - k]);
  Rational det = det_rational(std::move(s));
  if (det.get_den() != 1) throw Error("non-integral resultant");
  return det.get_num();
}

std::map<std::pair<std::string, long>, SplittingData> g_split_cache;
std::mutex g_split_mutex;

}  // namespace

SplittingData splitting_data(const AbelianField& fld, long q, long lift_exponent) {
  if (q < 2) throw Error("invalid prime");
  if (lift_exponent < 1) lift_exponent = 1;
  std::lock_guard<std::mutex> lock(g_split_mutex);
  auto key = std::make_pair(fld.name, q);
  auto it = g_split_cache.find(key);
  if (it != g_split_cache.end() && it->second.lift_exponent >= lift_exponent) return it->second;

  SplittingData sd;
  if (it != g_split_cache.end()) {
    sd = it->second;  // keep the factor order stable across upgrades
  } else {
    sd.q = q;
    sd.f = fld.residue_degree(q);
    for (auto& fac : factor_minpoly_mod(fld, q)) sd.primes.push_back(LocalPrime{fac, {}});
  }
  sd.lift_exponent = lift_exponent;
  sd.modulus = pow_integer(Integer(q), static_cast<unsigned long>(lift_exponent));

  std::vector<Poly> base;
  for (const auto& p : sd.primes) base.push_back(p.factor_q);
  Poly minp(fld.min_poly.begin(), fld.min_poly.end());
  auto lifted = hensel_multifactor(mod_each(minp, sd.modulus), base, Integer(q), lift_exponent);
  for (size_t i = 0; i < lifted.size(); ++i) {
    if (mod_each(lifted[i], Integer(q)) != sd.primes[i].factor_q)
      throw Error("lift changed the residual factor");
    sd.primes[i].factor_lift = lifted[i];
  }
  g_split_cache[key] = sd;
  return sd;
}

std::vector<int> local_valuations(const AbelianField& fld, const SplittingData& sd,
                                  const AbelianField::Elt& a) {
  if (!fld.is_integral(a)) throw Error("valuations need an integral element");
  Poly pa;
  for (const auto& c : a) pa.push_back(c.get_num());
  pa = trim(std::move(pa));
  if (pa.empty()) throw Error("valuation of zero");

  Rational nrm = fld.norm(a);
  long vn = padic_valuation(nrm.get_num(), Integer(sd.q));
  if (vn >= sd.lift_exponent)
    throw Error("lift precision too small for this norm");

  std::vector<int> out;
  long total = 0;
  for (const auto& p : sd.primes) {
    Integer res = resultant_int(p.factor_lift, pa);
    long v = res == 0 ? kValInfinity : padic_valuation(res, Integer(sd.q));
    if (v >= sd.lift_exponent) throw Error("lift precision too small");
    if (v % sd.f != 0) throw Error("valuation not divisible by residue degree");
    out.push_back(static_cast<int>(v / sd.f));
    total += v;
  }
  if (total != vn) throw Error("valuations do not add up to the norm");
  return out;
}

Integer ideal_norm(const IdealParts& a) {
  Integer n(1);
  for (const auto& pp : a)
    n *= pow_integer(Integer(pp.q), static_cast<unsigned long>(pp.f) * pp.e);
  return n;
}

long artin_class(const IdealParts& a, long level) {
  Integer c = ideal_norm(a) % level;
  return c.get_si();
}

IdealParts factor_principal(const AbelianField& fld, const AbelianField::Elt& a,
                            const std::vector<long>& avoid) {
  Rational nrm = fld.norm(a);
  if (nrm == 0) throw Error("cannot factor the zero ideal");
  if (!fld.is_integral(a)) throw Error("factorization needs an integral element");
  Integer n = nrm.get_num();
  if (n < 0) n = -n;

  std::vector<std::pair<long, long>> prime_vals;  // (q, v_q(N))
  Integer rest = n;
  for (Integer q(2); q * q <= rest; ++q) {
    if (!mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) continue;
    long vq = padic_valuation(rest, q);
    for (long i = 0; i < vq; ++i) mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    prime_vals.emplace_back(q.get_si(), vq);
  }
  if (rest > 1) prime_vals.emplace_back(rest.get_si(), 1);

  IdealParts parts;
  for (auto [ql, vq] : prime_vals) {
    if (std::find(avoid.begin(), avoid.end(), ql) != avoid.end()) continue;
    auto sd = splitting_data(fld, ql, vq + 1);
    auto vals = local_valuations(fld, sd, a);
    for (size_t i = 0; i < vals.size(); ++i)
      if (vals[i] > 0)
        parts.push_back(PrimePowerPart{ql, sd.f, static_cast<int>(i), vals[i]});
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

namespace {

// Composition p(sub(x)) reduced mod (q, modulus(x)), all over Z/q.
Poly compose_mod(const Poly& p, const Poly& sub, const Poly& modulus, const Integer& q) {
  Poly acc;
  for (size_t i = p.size(); i-- > 0;) {
    acc = mul_mod(acc, sub, q);
    acc = add_mod(acc, Poly{p[i]}, q);
    acc = divmod_monic(acc, modulus, q).second;
  }
  return acc;
}

Poly rational_coords_mod_q(const std::vector<Rational>& coords, long q) {
  Poly out;
  for (const auto& c : coords) out.push_back(rational_mod(c, Integer(q)));
  return trim(std::move(out));
}

}  // namespace

std::vector<int> primes_above(const AbelianField& f, long q, int index, const AbelianField& l) {
  auto sdf = splitting_data(f, q, 1);
  auto sdl = splitting_data(l, q, 1);
  Poly gen = rational_coords_mod_q(subfield_generator(f, l), q);
  const Poly& pf = sdf.primes.at(index).factor_q;

  std::vector<int> out;
  for (size_t j = 0; j < sdl.primes.size(); ++j) {
    if (compose_mod(pf, gen, sdl.primes[j].factor_q, Integer(q)).empty())
      out.push_back(static_cast<int>(j));
  }
  if (static_cast<long>(out.size()) * sdl.f != static_cast<long>(sdf.f) * (l.degree / f.degree))
    throw Error("prime extension count mismatch");
  return out;
}

int galois_prime_image(const AbelianField& l, long q, int index, long t) {
  auto sd = splitting_data(l, q, 1);
  Poly image = rational_coords_mod_q(l.galois(l.eta(), t), q);
  const Poly& pf = sd.primes.at(index).factor_q;

  int found = -1;
  for (size_t j = 0; j < sd.primes.size(); ++j) {
    if (compose_mod(pf, image, sd.primes[j].factor_q, Integer(q)).empty()) {
      if (found >= 0) throw Error("prime image is not unique");
      found = static_cast<int>(j);
    }
  }
  if (found < 0) throw Error("prime image not found");
  return found;
}

}  // namespace pmc
