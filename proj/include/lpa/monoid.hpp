#ifndef LPA_MONOID_HPP
#define LPA_MONOID_HPP

#include <cstdint>

#include "lpa/pathalg.hpp"

namespace lpa {

// Element of the graph monoid: a nonnegative integer vector over the vertices.
struct MonoidElement {
  std::vector<std::uint64_t> mult; // per vertex

  bool operator==(const MonoidElement& o) const { return mult == o.mult; }
  bool operator<(const MonoidElement& o) const { return mult < o.mult; }
};

MonoidElement mon_zero(const Ctx& c);
MonoidElement mon_vertex(const Ctx& c, int v);
MonoidElement mon_add(const MonoidElement& a, const MonoidElement& b);
std::string mon_to_string(const Ctx& c, const MonoidElement& a);

// One defining relation: replace a copy of v by sum of ranges of s^{-1}(v).
// Error("NotApplicable") if a has no copy of v or v is a sink.
MonoidElement mon_step(const Ctx& c, const MonoidElement& a, int v);

enum class MonVerdict { Equal, NotEqual, Unknown };

struct MonWitness {
  MonVerdict verdict = MonVerdict::Unknown;
  // For Equal: a common element reachable from both sides, plus the vertex
  // sequences (relation firings) leading there.
  MonoidElement meet;
  std::vector<int> steps_from_a, steps_from_b;
  std::uint64_t explored = 0;
};

// Bounded two-sided search through the relation closure. `bound` limits the
// firing depth on each side; NotEqual is only reported when both reachable
// sets are exhausted within the bound.
MonWitness mon_equal(const Ctx& c, const MonoidElement& a, const MonoidElement& b,
                     int bound = 12, std::uint64_t max_states = 100000);

// The V-monoid generators check: for every non-sink v the monoid relation
// matches the module decomposition witnessed in the algebra.
bool vmonoid_generators_check(const Ctx& c);

} // namespace lpa

#endif
