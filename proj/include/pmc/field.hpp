#ifndef PMC_FIELD_HPP
#define PMC_FIELD_HPP

#include <map>
#include <string>
#include <vector>

#include "pmc/cyclotomic.hpp"
#include "pmc/rational.hpp"

namespace pmc {

// Totally real abelian number field presented by the minimal polynomial of a
// generator eta. For conductor m >= 3 the generator is zeta_m + zeta_m^{-1}
// and the field is the maximal real subfield of the m-th cyclotomic field;
// conductor 1 is the rationals with eta = 1. Elements are power-basis
// coordinate vectors 1, eta, ..., eta^{degree-1}; the basis generates the
// full ring of integers for every catalog field.
class AbelianField {
 public:
  using Elt = std::vector<Rational>;

  std::string name;
  long conductor = 1;
  int degree = 1;
  std::vector<Integer> min_poly;   // monic, ascending, length degree+1
  std::vector<long> kernel_cond;   // units mod conductor fixing the field

  bool is_rationals() const { return conductor == 1; }

  Elt zero() const { return Elt(degree, Rational(0)); }
  Elt one() const;
  Elt from_rational(const Rational& r) const;
  Elt eta() const;  // the generator itself

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt scale(const Elt& a, const Rational& c) const;
  Elt mul(const Elt& a, const Elt& b) const;

  bool is_integral(const Elt& a) const;  // all coordinates integers
  bool is_zero(const Elt& a) const;

  // Trace and norm to Q, exact.
  Rational trace(const Elt& a) const;
  Rational norm(const Elt& a) const;

  // tr(eta^j) for j = 0 .. 2*degree-2, from the Newton recursion.
  const std::vector<Rational>& power_sums() const;
  // Trace form on the power basis and its inverse.
  const std::vector<std::vector<Rational>>& gram() const;
  const std::vector<std::vector<Rational>>& gram_inverse() const;

  CyclotomicNumber to_cyclotomic(const Elt& a) const;
  Elt from_cyclotomic(const CyclotomicNumber& z) const;  // throws if outside the field

  // One unit representative per embedding: t and -t give the same real place.
  const std::vector<long>& real_places() const;
  bool totally_positive(const Elt& a) const;

  // Image of a under zeta -> zeta^t.
  Elt galois(const Elt& a, long t) const;

  // Units mod `level` whose reduction mod the conductor lies in kernel_cond.
  std::vector<long> kernel_at_level(long level) const;

  // Residue degree of an unramified rational prime q (coprime to conductor).
  int residue_degree(long q) const;

  std::string elt_str(const Elt& a) const;

 private:
  mutable std::vector<Rational> power_sums_;
  mutable std::vector<std::vector<Rational>> gram_, gram_inv_;
  mutable std::vector<CyclotomicNumber> eta_powers_;
  mutable std::vector<long> places_;

  const std::vector<CyclotomicNumber>& eta_power_table() const;
};

// Coordinates of eta_F inside L; F must be a subfield of L.
AbelianField::Elt subfield_generator(const AbelianField& f, const AbelianField& l);
// F-element reinterpreted in L via the generator image.
AbelianField::Elt embed_element(const AbelianField& f, const AbelianField& l,
                                const AbelianField::Elt& a);

// Catalog of the supported fields, verified on load: the minimal polynomial
// of zeta_m + zeta_m^{-1} is recomputed in the cyclotomic field and compared
// with the stored one.
std::map<std::string, AbelianField> load_field_catalog(const std::string& path);

// Field fixed by the given subgroup of units mod m: reduces to the conductor
// and matches against the catalog. Only the rationals and maximal real
// subfields are representable.
AbelianField field_from_kernel(long m, const std::vector<long>& kernel,
                               const std::map<std::string, AbelianField>& catalog);

}  // namespace pmc

#endif
