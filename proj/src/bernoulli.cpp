#include "pmc/bernoulli.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <vector>

namespace pmc {

namespace {

std::mutex g_mutex;
std::vector<Rational> g_table;  // uncorrupted values
std::map<unsigned long, Rational> g_overrides;
std::atomic<unsigned long> g_epoch{0};

// sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1 pins each value from the previous.
void extend_table(unsigned long k) {
  if (g_table.empty()) g_table.push_back(Rational(1));
  while (g_table.size() <= k) {
    const unsigned long m = g_table.size();
    Rational acc(0);
    for (unsigned long j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * g_table[j];
    g_table.push_back(-acc / Rational(static_cast<long>(m) + 1));
  }
}

}  // namespace

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational bernoulli_number(unsigned long k) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_overrides.find(k);
  if (it != g_overrides.end()) return it->second;
  extend_table(k);
  return g_table[k];
}

Rational bernoulli_poly(unsigned long k, const Rational& x) {
  Rational acc(0);
  Rational pw(1);
  for (unsigned long j = 0; j <= k; ++j) {
    acc += Rational(binomial(k, j)) * bernoulli_number(k - j) * pw;
    pw *= x;
  }
  return acc;
}

void override_bernoulli(unsigned long k, const Rational& v) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_overrides[k] = v;
  ++g_epoch;
}

void clear_bernoulli_overrides() {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_overrides.clear();
  ++g_epoch;
}

unsigned long bernoulli_epoch() { return g_epoch.load(); }

}  // namespace pmc
