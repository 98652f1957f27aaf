#include "pmc/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "pmc/error.hpp"

namespace pmc {

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  unsigned long m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials, divisor monic. Remainder must be 0.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
  const size_t d = den.size() - 1;
  if (num.size() < den.size()) throw Error("polynomial division underflow");
  std::vector<Integer> quot(num.size() - d, Integer(0));
  for (size_t i = num.size(); i-- > d;) {
    Integer q = num[i];
    if (q == 0) continue;
    quot[i - d] = q;
    for (size_t k = 0; k <= d; ++k) num[i - d + k] -= q * den[k];
  }
  for (const auto& r : num)
    if (r != 0) throw Error("inexact polynomial division");
  return quot;
}

std::map<unsigned long, std::vector<Integer>> g_phi_cache;
std::mutex g_phi_mutex;

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned long n) {
  if (n == 0) throw Error("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  auto it = g_phi_cache.find(n);
  if (it != g_phi_cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up so
  // every divisor is already in the cache.
  std::vector<unsigned long> divisors;
  for (unsigned long d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  for (unsigned long d : divisors) {
    if (g_phi_cache.count(d)) continue;
    std::vector<Integer> poly(d + 1, Integer(0));
    poly[0] = -1;
    poly[d] = 1;
    for (unsigned long e : divisors) {
      if (e >= d || d % e != 0) continue;
      poly = divide_monic(std::move(poly), g_phi_cache.at(e));
    }
    g_phi_cache.emplace(d, std::move(poly));
  }
  return g_phi_cache.at(n);
}

namespace {

// Reduce an arbitrary-length coefficient vector mod Phi_n; result length phi(n).
std::vector<Rational> reduce_mod_phi(unsigned long n, std::vector<Rational> v) {
  const std::vector<Integer>& phi = cyclotomic_polynomial(n);
  const size_t deg = phi.size() - 1;
  for (size_t i = v.size(); i-- > deg;) {
    if (v[i] == 0) continue;
    Rational q = v[i];
    for (size_t k = 0; k < deg; ++k) v[i - deg + k] -= q * Rational(phi[k]);
    v[i] = 0;
  }
  v.resize(deg, Rational(0));
  for (auto& c : v) c.canonicalize();
  return v;
}

}  // namespace

CyclotomicNumber::CyclotomicNumber(unsigned long n, std::vector<Rational> unreduced)
    : n_(n), c_(reduce_mod_phi(n, std::move(unreduced))) {}

CyclotomicNumber CyclotomicNumber::zero(unsigned long n) {
  return CyclotomicNumber(n, std::vector<Rational>(1, Rational(0)));
}

CyclotomicNumber CyclotomicNumber::constant(unsigned long n, const Rational& r) {
  return CyclotomicNumber(n, std::vector<Rational>(1, r));
}

CyclotomicNumber CyclotomicNumber::zeta(unsigned long n, long j) {
  long r = j % static_cast<long>(n);
  if (r < 0) r += static_cast<long>(n);
  std::vector<Rational> v(static_cast<size_t>(r) + 1, Rational(0));
  v.back() = 1;
  return CyclotomicNumber(n, std::move(v));
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (n_ != o.n_) throw Error("cyclotomic order mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  if (n_ != o.n_) throw Error("cyclotomic order mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.n_ != b.n_) throw Error("cyclotomic order mismatch");
  std::vector<Rational> conv(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return CyclotomicNumber(a.n_, std::move(conv));
}

CyclotomicNumber CyclotomicNumber::scaled(const Rational& r) const {
  CyclotomicNumber out = *this;
  for (auto& c : out.c_) {
    c *= r;
    c.canonicalize();
  }
  return out;
}

CyclotomicNumber CyclotomicNumber::galois(long t) const {
  long tm = t % static_cast<long>(n_);
  if (tm < 0) tm += static_cast<long>(n_);
  if (std::gcd(static_cast<unsigned long>(tm), n_) != 1)
    throw Error("galois exponent not prime to order");
  ZetaAccumulator acc(n_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    acc.add_monomial(static_cast<long>(i) * tm, c_[i]);
  }
  return acc.reduce();
}

CyclotomicNumber CyclotomicNumber::promote(unsigned long N) const {
  if (N % n_ != 0) throw Error("promotion target not a multiple of order");
  if (N == n_) return *this;
  const unsigned long step = N / n_;
  ZetaAccumulator acc(N);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    acc.add_monomial(static_cast<long>(i * step), c_[i]);
  }
  return acc.reduce();
}

std::string CyclotomicNumber::str() const {
  std::ostringstream os;
  os << "[n=" << n_ << ";";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].get_str();
  }
  os << "]";
  return os.str();
}

Rational cyclo_to_rational(const CyclotomicNumber& z) {
  if (!z.is_rational()) throw NotRational("irrational cyclotomic value " + z.str());
  return z.coords()[0];
}

void ZetaAccumulator::add_monomial(long j, const Rational& c) {
  long r = j % static_cast<long>(n_);
  if (r < 0) r += static_cast<long>(n_);
  slot_[static_cast<size_t>(r)] += c;
}

void ZetaAccumulator::add_shifted(const CyclotomicNumber& z, long j) {
  if (z.order() != n_) throw Error("cyclotomic order mismatch");
  const auto& c = z.coords();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    add_monomial(static_cast<long>(i) + j, c[i]);
  }
}

CyclotomicNumber ZetaAccumulator::reduce() const {
  return CyclotomicNumber(n_, slot_);
}

}  // namespace pmc
