#ifndef PMC_TRACE_PAIRS_HPP
#define PMC_TRACE_PAIRS_HPP

#include <vector>

#include "pmc/field.hpp"
#include "pmc/ideal.hpp"

namespace pmc {

// A totally positive integral element with prescribed trace, together with a
// divisor of its principal ideal supported away from a fixed prime set.
struct TracePair {
  AbelianField::Elt alpha;
  IdealParts ideal;

  bool operator==(const TracePair& o) const { return alpha == o.alpha && ideal == o.ideal; }
  bool operator<(const TracePair& o) const {
    if (alpha != o.alpha) return alpha < o.alpha;
    return ideal < o.ideal;
  }
};

// Every totally positive integral element of trace degree*alpha, sorted by
// coordinates. The box bound comes from the trace form: a coordinate against
// the dual basis is a sum over embeddings weighted by positive values whose
// total is the trace.
std::vector<AbelianField::Elt> trace_elements(const AbelianField& f, long alpha);

// All (element, divisor) pairs for the given trace parameter; divisors run
// over the prime-to-avoid part of each element's principal ideal.
std::vector<TracePair> trace_pairs(const AbelianField& f, long alpha,
                                   const std::vector<long>& avoid);

// Pair of l induced by a pair of the subfield f: the element embeds, the
// ideal extends prime by prime.
TracePair extend_pair(const AbelianField& f, const TracePair& pr, const AbelianField& l);

// Galois twist of a pair of l by the unit class t.
TracePair galois_pair(const AbelianField& l, const TracePair& pr, long t);

}  // namespace pmc

#endif
