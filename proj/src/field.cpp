#include "pmc/field.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pmc/abelian_group.hpp"
#include "pmc/error.hpp"
#include "pmc/interval.hpp"
#include "pmc/linalg.hpp"

namespace pmc {

namespace {

// Remainder of a rational-coefficient polynomial mod a monic integer one.
std::vector<Rational> reduce_mod(const std::vector<Integer>& mono, std::vector<Rational> v) {
  const size_t deg = mono.size() - 1;
  for (size_t i = v.size(); i-- > deg;) {
    if (v[i] == 0) continue;
    Rational q = v[i];
    for (size_t k = 0; k < deg; ++k) v[i - deg + k] -= q * Rational(mono[k]);
    v[i] = 0;
  }
  v.resize(deg, Rational(0));
  return v;
}

}  // namespace

AbelianField::Elt AbelianField::one() const { return from_rational(Rational(1)); }

AbelianField::Elt AbelianField::from_rational(const Rational& r) const {
  Elt e = zero();
  e[0] = r;
  return e;
}

AbelianField::Elt AbelianField::eta() const {
  if (degree == 1) return one();  // eta = 1 for the rationals
  Elt e = zero();
  e[1] = 1;
  return e;
}

AbelianField::Elt AbelianField::add(const Elt& a, const Elt& b) const {
  Elt r = a;
  for (int i = 0; i < degree; ++i) r[i] += b[i];
  return r;
}

AbelianField::Elt AbelianField::sub(const Elt& a, const Elt& b) const {
  Elt r = a;
  for (int i = 0; i < degree; ++i) r[i] -= b[i];
  return r;
}

AbelianField::Elt AbelianField::scale(const Elt& a, const Rational& c) const {
  Elt r = a;
  for (auto& x : r) x *= c;
  return r;
}

AbelianField::Elt AbelianField::mul(const Elt& a, const Elt& b) const {
  std::vector<Rational> conv(2 * degree - 1, Rational(0));
  for (int i = 0; i < degree; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < degree; ++j) conv[i + j] += a[i] * b[j];
  }
  return reduce_mod(min_poly, std::move(conv));
}

bool AbelianField::is_integral(const Elt& a) const {
  for (const auto& x : a)
    if (x.get_den() != 1) return false;
  return true;
}

bool AbelianField::is_zero(const Elt& a) const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

const std::vector<Rational>& AbelianField::power_sums() const {
  if (!power_sums_.empty()) return power_sums_;
  const int d = degree;
  // e_i = (-1)^i a_{d-i} are the elementary symmetric functions of the roots.
  std::vector<Rational> e(d + 1, Rational(0));
  for (int i = 0; i <= d; ++i) {
    e[i] = Rational(min_poly[d - i]);
    if (i % 2) e[i] = -e[i];
  }
  std::vector<Rational> p(2 * d - 1 > 0 ? 2 * d - 1 : 1, Rational(0));
  p[0] = d;
  for (int k = 1; k < static_cast<int>(p.size()); ++k) {
    Rational acc(0);
    for (int i = 1; i < k && i <= d; ++i) {
      Rational term = e[i] * p[k - i];
      acc += (i % 2) ? term : -term;
    }
    if (k <= d) {
      Rational tail = Rational(k) * e[k];
      acc += (k % 2) ? tail : -tail;
    }
    p[k] = acc;
  }
  power_sums_ = std::move(p);
  return power_sums_;
}

Rational AbelianField::trace(const Elt& a) const {
  const auto& p = power_sums();
  Rational acc(0);
  for (int i = 0; i < degree; ++i) acc += a[i] * p[i];
  return acc;
}

Rational AbelianField::norm(const Elt& a) const {
  // Determinant of multiplication by a; columns are a * eta^j.
  RationalMatrix m(degree, std::vector<Rational>(degree));
  Elt col = a;
  for (int j = 0; j < degree; ++j) {
    for (int i = 0; i < degree; ++i) m[i][j] = col[i];
    if (j + 1 < degree) {
      std::vector<Rational> shifted(degree + 1, Rational(0));
      for (int i = 0; i < degree; ++i) shifted[i + 1] = col[i];
      col = reduce_mod(min_poly, std::move(shifted));
    }
  }
  return det_rational(std::move(m));
}

const std::vector<std::vector<Rational>>& AbelianField::gram() const {
  if (gram_.empty()) {
    const auto& p = power_sums();
    gram_.assign(degree, std::vector<Rational>(degree));
    for (int i = 0; i < degree; ++i)
      for (int j = 0; j < degree; ++j) gram_[i][j] = p[i + j];
  }
  return gram_;
}

const std::vector<std::vector<Rational>>& AbelianField::gram_inverse() const {
  if (gram_inv_.empty()) gram_inv_ = invert_matrix(gram());
  return gram_inv_;
}

const std::vector<CyclotomicNumber>& AbelianField::eta_power_table() const {
  if (!eta_powers_.empty()) return eta_powers_;
  const unsigned long n = conductor == 1 ? 1 : static_cast<unsigned long>(conductor);
  CyclotomicNumber gen = conductor == 1
                             ? CyclotomicNumber::constant(1, Rational(1))
                             : CyclotomicNumber::zeta(n, 1) + CyclotomicNumber::zeta(n, -1);
  eta_powers_.push_back(CyclotomicNumber::constant(n, Rational(1)));
  for (int j = 1; j < degree; ++j) eta_powers_.push_back(eta_powers_.back() * gen);
  return eta_powers_;
}

CyclotomicNumber AbelianField::to_cyclotomic(const Elt& a) const {
  const auto& pows = eta_power_table();
  CyclotomicNumber acc = CyclotomicNumber::zero(pows[0].order());
  for (int j = 0; j < degree; ++j) {
    if (a[j] == 0) continue;
    acc += pows[j].scaled(a[j]);
  }
  return acc;
}

AbelianField::Elt AbelianField::from_cyclotomic(const CyclotomicNumber& z) const {
  const auto& pows = eta_power_table();
  if (z.order() != pows[0].order()) throw Error("cyclotomic order mismatch for " + name);
  const size_t dim = pows[0].coords().size();
  RationalMatrix a(dim, std::vector<Rational>(degree));
  for (int j = 0; j < degree; ++j)
    for (size_t i = 0; i < dim; ++i) a[i][j] = pows[j].coords()[i];
  auto x = solve_exact(std::move(a), z.coords());
  if (!x) throw Error("value does not lie in " + name);
  return *x;
}

const std::vector<long>& AbelianField::real_places() const {
  if (places_.empty()) {
    if (conductor == 1) {
      places_.push_back(1);
    } else {
      for (long t = 1; 2 * t < conductor; ++t)
        if (std::gcd(t, conductor) == 1) places_.push_back(t);
    }
  }
  return places_;
}

bool AbelianField::totally_positive(const Elt& a) const {
  for (long t : real_places())
    if (certify_sign_embedding(to_cyclotomic(a), t) <= 0) return false;
  return true;
}

AbelianField::Elt AbelianField::galois(const Elt& a, long t) const {
  if (conductor == 1) return a;
  return from_cyclotomic(to_cyclotomic(a).galois(t));
}

std::vector<long> AbelianField::kernel_at_level(long level) const {
  if (level % conductor != 0) throw Error("level not divisible by conductor");
  std::vector<long> out;
  for (long u : unit_group(level).elements)
    if (std::binary_search(kernel_cond.begin(), kernel_cond.end(), u % conductor))
      out.push_back(u);
  return out;
}

int AbelianField::residue_degree(long q) const {
  if (conductor == 1) return 1;
  if (q % conductor == 0 || std::gcd(q, conductor) != 1)
    throw Error("prime is ramified in " + name);
  long x = q % conductor;
  for (int f = 1; f <= degree; ++f) {
    if (std::binary_search(kernel_cond.begin(), kernel_cond.end(), x)) return f;
    x = (x * (q % conductor)) % conductor;
  }
  throw Error("residue degree out of range");
}

std::string AbelianField::elt_str(const Elt& a) const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < degree; ++i) {
    if (i) os << ",";
    os << a[i].get_str();
  }
  os << ")";
  return os.str();
}

AbelianField::Elt subfield_generator(const AbelianField& f, const AbelianField& l) {
  if (l.conductor % f.conductor != 0) throw Error("not a subfield: " + f.name);
  if (f.conductor == 1) return l.one();
  unsigned long n = static_cast<unsigned long>(l.conductor);
  unsigned long step = static_cast<unsigned long>(l.conductor / f.conductor);
  CyclotomicNumber gen = CyclotomicNumber::zeta(n, static_cast<long>(step)) +
                         CyclotomicNumber::zeta(n, -static_cast<long>(step));
  return l.from_cyclotomic(gen);
}

AbelianField::Elt embed_element(const AbelianField& f, const AbelianField& l,
                                const AbelianField::Elt& a) {
  auto gen = subfield_generator(f, l);
  auto acc = l.zero();
  auto pow = l.one();
  for (int j = 0; j < f.degree; ++j) {
    acc = l.add(acc, l.scale(pow, a[j]));
    if (j + 1 < f.degree) pow = l.mul(pow, gen);
  }
  return acc;
}

std::map<std::string, AbelianField> load_field_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open field catalog " + path);

  std::map<std::string, AbelianField> out;
  std::string line;
  AbelianField cur;
  bool open = false;

  auto flush = [&]() {
    if (static_cast<int>(cur.min_poly.size()) != cur.degree + 1 || cur.min_poly.back() != 1)
      throw Error("field " + cur.name + " stored polynomial is not monic of the right degree");
    if (cur.conductor == 1) {
      cur.kernel_cond = {0};
    } else {
      cur.kernel_cond = {1, cur.conductor - 1};
      if (2 * static_cast<unsigned long>(cur.degree) != euler_phi(cur.conductor))
        throw Error("field " + cur.name + " degree does not match its conductor");
    }

    // Recompute the minimal polynomial as the product over the real places
    // and compare with the stored coefficients.
    const unsigned long n = cur.conductor == 1 ? 1 : cur.conductor;
    std::vector<CyclotomicNumber> poly{CyclotomicNumber::constant(n, Rational(1))};
    for (long t : cur.real_places()) {
      CyclotomicNumber root =
          cur.conductor == 1
              ? CyclotomicNumber::constant(1, Rational(1))
              : CyclotomicNumber::zeta(n, t) + CyclotomicNumber::zeta(n, -t);
      std::vector<CyclotomicNumber> next(poly.size() + 1, CyclotomicNumber::zero(n));
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= poly[i] * root;
      }
      poly = std::move(next);
    }
    for (size_t i = 0; i < poly.size(); ++i)
      if (cyclo_to_rational(poly[i]) != Rational(cur.min_poly[i]))
        throw Error("field " + cur.name + " stored polynomial disagrees with its conductor");

    if (!out.emplace(cur.name, cur).second) throw Error("duplicate field " + cur.name);
    cur = AbelianField();
    open = false;
  };

  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "field") {
      if (open) throw Error("missing end before new field");
      std::string ctok, dtok;
      if (!(ls >> cur.name >> ctok >> dtok) || ctok.rfind("cond=", 0) != 0 ||
          dtok.rfind("deg=", 0) != 0)
        throw Error("malformed field header: " + line);
      cur.conductor = std::stol(ctok.substr(5));
      cur.degree = std::stoi(dtok.substr(4));
      open = true;
    } else if (tok == "end") {
      if (!open) throw Error("stray end in catalog");
      flush();
    } else {
      if (!open) throw Error("coefficients outside field block");
      cur.min_poly.push_back(Integer(tok));
      std::string more;
      while (ls >> more) cur.min_poly.push_back(Integer(more));
    }
  }
  if (open) throw Error("unterminated field block " + cur.name);
  return out;
}

AbelianField field_from_kernel(long m, const std::vector<long>& kernel_in,
                               const std::map<std::string, AbelianField>& catalog) {
  const UnitGroup& ug = unit_group(m);
  std::vector<long> kernel = kernel_in;
  std::sort(kernel.begin(), kernel.end());
  for (long x : kernel)
    if (!ug.is_unit(x)) throw Error("kernel contains a non-unit");

  // Conductor: smallest divisor c of m whose 1-congruence classes all lie in
  // the kernel.
  long cond = 0;
  for (long c = 1; c <= m; ++c) {
    if (m % c != 0) continue;
    bool ok = true;
    for (long u : ug.elements)
      if (u % c == 1 % c && !std::binary_search(kernel.begin(), kernel.end(), u)) ok = false;
    if (ok) {
      cond = c;
      break;
    }
  }
  if (cond == 0) throw Error("no conductor found");

  // Reduce the kernel to the conductor.
  std::vector<long> red;
  for (long u : kernel) red.push_back(u % cond);
  std::sort(red.begin(), red.end());
  red.erase(std::unique(red.begin(), red.end()), red.end());

  for (const auto& [name, fld] : catalog) {
    if (fld.conductor != cond) continue;
    if (fld.kernel_cond == red) return fld;
  }
  throw Error("fixed field at conductor " + std::to_string(cond) + " is not in the catalog");
}

}  // namespace pmc
