#include "pmc/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "pmc/error.hpp"

namespace pmc {

IntervalApprox::IntervalApprox(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw Error("interval endpoints out of order");
}

IntervalApprox IntervalApprox::operator+(const IntervalApprox& o) const {
  return IntervalApprox(lo + o.lo, hi + o.hi);
}

IntervalApprox IntervalApprox::operator-(const IntervalApprox& o) const {
  return IntervalApprox(lo - o.hi, hi - o.lo);
}

IntervalApprox IntervalApprox::operator*(const IntervalApprox& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return IntervalApprox(std::min({a, b, c, d}), std::max({a, b, c, d}));
}

IntervalApprox IntervalApprox::scaled(const Rational& r) const {
  if (r >= 0) return IntervalApprox(lo * r, hi * r);
  return IntervalApprox(hi * r, lo * r);
}

namespace {

// Exact value of an MPFR number as a binary rational.
Rational mpfr_exact(const mpfr_t x) {
  if (mpfr_zero_p(x)) return Rational(0);
  if (!mpfr_number_p(x)) throw Error("non-finite value in enclosure");
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e >= 0) {
    mpz_mul_2exp(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()),
                 static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(mpq_denref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()),
                 static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

std::map<std::tuple<unsigned long, long, unsigned long>, IntervalApprox> g_cos_cache;
std::mutex g_cos_mutex;

}  // namespace

IntervalApprox cos_enclosure(long j, unsigned long n, unsigned long prec) {
  if (n == 0) throw Error("cos_enclosure: zero modulus");
  long r = j % static_cast<long>(n);
  if (r < 0) r += static_cast<long>(n);

  {
    std::lock_guard<std::mutex> lock(g_cos_mutex);
    auto it = g_cos_cache.find({n, r, prec});
    if (it != g_cos_cache.end()) return it->second;
  }

  mpfr_t pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, width;
  mpfr_inits2(static_cast<mpfr_prec_t>(prec), pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, width,
              static_cast<mpfr_ptr>(nullptr));

  // theta = 2*pi*r/n with outward rounding; r >= 0 keeps directions aligned.
  mpfr_const_pi(pi_lo, MPFR_RNDD);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  mpfr_mul_ui(th_lo, pi_lo, 2 * static_cast<unsigned long>(r), MPFR_RNDD);
  mpfr_mul_ui(th_hi, pi_hi, 2 * static_cast<unsigned long>(r), MPFR_RNDU);
  mpfr_div_ui(th_lo, th_lo, n, MPFR_RNDD);
  mpfr_div_ui(th_hi, th_hi, n, MPFR_RNDU);

  // cos at the lower endpoint, then pad by the theta width: cos is
  // 1-Lipschitz, so |cos(theta) - cos(th_lo)| <= th_hi - th_lo.
  mpfr_sub(width, th_hi, th_lo, MPFR_RNDU);
  mpfr_cos(c_lo, th_lo, MPFR_RNDD);
  mpfr_cos(c_hi, th_lo, MPFR_RNDU);
  mpfr_sub(c_lo, c_lo, width, MPFR_RNDD);
  mpfr_add(c_hi, c_hi, width, MPFR_RNDU);

  IntervalApprox out(mpfr_exact(c_lo), mpfr_exact(c_hi));
  mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, width, static_cast<mpfr_ptr>(nullptr));

  std::lock_guard<std::mutex> lock(g_cos_mutex);
  return g_cos_cache.emplace(std::make_tuple(n, r, prec), std::move(out)).first->second;
}

IntervalApprox embed_real_interval(const CyclotomicNumber& z, long t, unsigned long prec) {
  const unsigned long n = z.order();
  IntervalApprox acc;
  const auto& c = z.coords();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    acc = acc + cos_enclosure(static_cast<long>(i) * t, n, prec).scaled(c[i]);
  }
  return acc;
}

int certify_sign(const std::function<IntervalApprox(unsigned long)>& f) {
  for (unsigned long prec = kSignPrecStart; prec <= kSignPrecCap; prec *= 2) {
    IntervalApprox box = f(prec);
    if (box.is_positive()) return 1;
    if (box.is_negative()) return -1;
    if (box.is_point_zero()) return 0;
  }
  throw ZeroSuspected("sign undecided at precision cap");
}

int certify_sign_embedding(const CyclotomicNumber& z, long t) {
  if (z.is_rational()) {
    const Rational& r = z.coords()[0];
    return r > 0 ? 1 : (r < 0 ? -1 : 0);
  }
  return certify_sign([&](unsigned long prec) { return embed_real_interval(z, t, prec); });
}

}  // namespace pmc
