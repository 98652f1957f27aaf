#include "pmc/group_ring.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "pmc/error.hpp"

namespace pmc {

GroupRingElt::GroupRingElt(long m, Integer mod) : m_(m), mod_(std::move(mod)) {
  if (m_ < 1) throw Error("class modulus must be positive");
  if (mod_ < 2) throw Error("coefficient modulus must be at least 2");
}

void GroupRingElt::put(long cls, Integer c) {
  c %= mod_;
  if (c < 0) c += mod_;
  long key = cls % m_;
  if (key < 0) key += m_;
  if (c == 0)
    terms_.erase(key);
  else
    terms_[key] = std::move(c);
}

void GroupRingElt::add(long cls, const Integer& c) {
  long key = cls % m_;
  if (key < 0) key += m_;
  put(key, coeff(key) + c);
}

void GroupRingElt::add_rational(long cls, const Rational& c) {
  add(cls, rational_mod(c, mod_));
}

Integer GroupRingElt::coeff(long cls) const {
  long key = cls % m_;
  if (key < 0) key += m_;
  auto it = terms_.find(key);
  return it == terms_.end() ? Integer(0) : it->second;
}

GroupRingElt& GroupRingElt::operator+=(const GroupRingElt& o) {
  if (m_ != o.m_ || mod_ != o.mod_) throw Error("group ring mismatch");
  for (const auto& [cls, c] : o.terms_) add(cls, c);
  return *this;
}

GroupRingElt& GroupRingElt::operator-=(const GroupRingElt& o) {
  if (m_ != o.m_ || mod_ != o.mod_) throw Error("group ring mismatch");
  for (const auto& [cls, c] : o.terms_) add(cls, -c);
  return *this;
}

bool GroupRingElt::operator==(const GroupRingElt& o) const {
  return m_ == o.m_ && mod_ == o.mod_ && terms_ == o.terms_;
}

GroupRingElt GroupRingElt::scaled(const Integer& c) const {
  GroupRingElt out(m_, mod_);
  for (const auto& [cls, v] : terms_) out.add(cls, v * c);
  return out;
}

GroupRingElt GroupRingElt::shifted(long g) const {
  long gg = g % m_;
  if (gg < 0) gg += m_;
  if (std::gcd(gg, m_) != 1) throw Error("shift by non-unit class");
  GroupRingElt out(m_, mod_);
  for (const auto& [cls, v] : terms_) out.add((cls * gg) % m_, v);
  return out;
}

GroupRingElt GroupRingElt::mapped(const std::function<long(long)>& f, long new_m,
                                  Integer new_mod) const {
  GroupRingElt out(new_m, std::move(new_mod));
  for (const auto& [cls, v] : terms_) out.add(f(cls), v);
  return out;
}

GroupRingElt GroupRingElt::symmetrized(long s) const {
  long ss = s % m_;
  if (ss < 0) ss += m_;
  if (std::gcd(ss, m_) != 1) throw Error("symmetrize by non-unit class");
  GroupRingElt out(m_, mod_);
  for (const auto& [cls, v] : terms_) out.add(std::min(cls, (cls * ss) % m_), v);
  return out;
}

std::string GroupRingElt::str() const {
  std::ostringstream os;
  os << "(mod " << mod_.get_str() << ")";
  for (const auto& [cls, v] : terms_) os << " " << v.get_str() << "[" << cls << "]";
  return os.str();
}

bool trace_ideal_member(const GroupRingElt& x, const FiniteGroup& sigma,
                        const std::function<long(int, long)>& act, std::string* reason) {
  std::set<long> seen;
  for (const auto& [cls, c] : x.terms()) {
    if (seen.count(cls)) continue;
    long stab = 0;
    std::set<long> orbit;
    for (int s = 0; s < sigma.size(); ++s) {
      long img = act(s, cls);
      if (img == cls) ++stab;
      orbit.insert(img);
      if (x.coeff(img) != c) {
        if (reason)
          *reason = "coefficient not constant on the orbit of class " + std::to_string(cls);
        return false;
      }
    }
    if (static_cast<long>(orbit.size()) * stab != sigma.size())
      throw Error("trace_ideal_member: inconsistent action");
    Integer need = gcd(Integer(stab), x.coeff_modulus());
    if (c % need != 0) {
      if (reason)
        *reason = "coefficient " + c.get_str() + " at class " + std::to_string(cls) +
                  " not divisible by the stabilizer order " + std::to_string(stab);
      return false;
    }
    seen.insert(orbit.begin(), orbit.end());
  }
  return true;
}

}  // namespace pmc
