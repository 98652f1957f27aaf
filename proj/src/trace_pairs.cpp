#include "pmc/trace_pairs.hpp"

#include <algorithm>

#include "pmc/error.hpp"

namespace pmc {

std::vector<AbelianField::Elt> trace_elements(const AbelianField& f, long alpha) {
  if (alpha <= 0) throw Error("trace parameter must be positive");
  const int d = f.degree;
  const Rational target = Rational(alpha) * d;
  const auto& p = f.power_sums();
  const auto& ginv = f.gram_inverse();

  // |x_j| <= sqrt((G^-1)_jj) * ||embedding values||_2 <= sqrt((G^-1)_jj) * trace.
  std::vector<long> bound(d);
  for (int j = 0; j < d; ++j)
    bound[j] = floor_isqrt(target * target * ginv[j][j]).get_si();

  std::vector<AbelianField::Elt> out;
  std::vector<long> x(d, 0);
  // Coordinates 1..d-1 run over the box; the trace equation fixes x_0.
  auto rec = [&](auto&& self, int j) -> void {
    if (j == d) {
      Rational partial(0);
      for (int i = 1; i < d; ++i) partial += Rational(x[i]) * p[i];
      Rational x0 = (target - partial) / p[0];
      if (x0.get_den() != 1) return;
      if (x0.get_num() > bound[0] || x0.get_num() < -bound[0]) return;
      AbelianField::Elt cand(d);
      cand[0] = x0;
      for (int i = 1; i < d; ++i) cand[i] = x[i];
      if (!f.totally_positive(cand)) return;
      out.push_back(std::move(cand));
      return;
    }
    for (x[j] = -bound[j]; x[j] <= bound[j]; ++x[j]) self(self, j + 1);
  };
  rec(rec, 1);

  std::sort(out.begin(), out.end());
  for (const auto& e : out)
    if (f.trace(e) != target) throw Error("trace enumeration produced a wrong trace");
  return out;
}

std::vector<TracePair> trace_pairs(const AbelianField& f, long alpha,
                                   const std::vector<long>& avoid) {
  std::vector<TracePair> out;
  for (const auto& elt : trace_elements(f, alpha)) {
    IdealParts support = factor_principal(f, elt, avoid);
    // Walk all divisors of the supported part.
    std::vector<int> exps(support.size(), 0);
    while (true) {
      IdealParts div;
      for (size_t i = 0; i < support.size(); ++i)
        if (exps[i] > 0)
          div.push_back(PrimePowerPart{support[i].q, support[i].f, support[i].index, exps[i]});
      out.push_back(TracePair{elt, std::move(div)});
      size_t j = 0;
      for (; j < exps.size(); ++j) {
        if (++exps[j] <= support[j].e) break;
        exps[j] = 0;
      }
      if (j == exps.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TracePair extend_pair(const AbelianField& f, const TracePair& pr, const AbelianField& l) {
  TracePair out;
  out.alpha = embed_element(f, l, pr.alpha);
  for (const auto& pp : pr.ideal) {
    auto sdl = splitting_data(l, pp.q, 1);
    for (int j : primes_above(f, pp.q, pp.index, l))
      out.ideal.push_back(PrimePowerPart{pp.q, sdl.f, j, pp.e});
  }
  std::sort(out.ideal.begin(), out.ideal.end());

  // The extension is norm-compatible: N_L = N_F^{[L:F]}.
  Integer expected = pow_integer(ideal_norm(pr.ideal), l.degree / f.degree);
  if (ideal_norm(out.ideal) != expected) throw Error("ideal extension lost the norm");
  return out;
}

TracePair galois_pair(const AbelianField& l, const TracePair& pr, long t) {
  TracePair out;
  out.alpha = l.galois(pr.alpha, t);
  for (const auto& pp : pr.ideal)
    out.ideal.push_back(PrimePowerPart{pp.q, pp.f, galois_prime_image(l, pp.q, pp.index, t), pp.e});
  std::sort(out.ideal.begin(), out.ideal.end());
  return out;
}

}  // namespace pmc
