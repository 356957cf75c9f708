#include "lpa/monoid.hpp"

#include <algorithm>

#include "lpa/leavitt.hpp"

namespace lpa {

MonoidElement mon_zero(const Ctx& c) {
  return MonoidElement{std::vector<std::uint64_t>(c.q.vertices.size(), 0)};
}

MonoidElement mon_vertex(const Ctx& c, int v) {
  MonoidElement m = mon_zero(c);
  m.mult[static_cast<std::size_t>(v)] = 1;
  return m;
}

MonoidElement mon_add(const MonoidElement& a, const MonoidElement& b) {
  MonoidElement m = a;
  for (std::size_t i = 0; i < m.mult.size(); ++i) m.mult[i] += b.mult[i];
  return m;
}

std::string mon_to_string(const Ctx& c, const MonoidElement& a) {
  std::string out;
  for (std::size_t v = 0; v < a.mult.size(); ++v) {
    if (a.mult[v] == 0) continue;
    if (!out.empty()) out += " + ";
    if (a.mult[v] != 1) out += std::to_string(a.mult[v]);
    out += c.q.vertices[v];
  }
  return out.empty() ? "0" : out;
}

MonoidElement mon_step(const Ctx& c, const MonoidElement& a, int v) {
  if (c.q.is_sink(v)) fail("NotApplicable", "no relation at a sink");
  if (a.mult[static_cast<std::size_t>(v)] == 0)
    fail("NotApplicable", "element has no copy of the vertex");
  MonoidElement m = a;
  m.mult[static_cast<std::size_t>(v)] -= 1;
  for (int e : c.q.out_edges(v))
    m.mult[static_cast<std::size_t>(c.q.edges[static_cast<std::size_t>(e)].dst)] += 1;
  return m;
}

namespace {

struct Trace {
  MonoidElement parent;
  int fired = -1; // vertex, -1 at the start element
};

std::vector<int> unwind(const std::map<MonoidElement, Trace>& seen,
                        MonoidElement at) {
  std::vector<int> steps;
  while (true) {
    const Trace& t = seen.at(at);
    if (t.fired < 0) break;
    steps.push_back(t.fired);
    at = t.parent;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

} // namespace

MonWitness mon_equal(const Ctx& c, const MonoidElement& a, const MonoidElement& b,
                     int bound, std::uint64_t max_states) {
  MonWitness w;
  std::map<MonoidElement, Trace> seen_a{{a, {a, -1}}}, seen_b{{b, {b, -1}}};
  std::vector<MonoidElement> front_a{a}, front_b{b};
  bool exhausted_a = false, exhausted_b = false;
  if (a == b) {
    w.verdict = MonVerdict::Equal;
    w.meet = a;
    return w;
  }
  int nv = static_cast<int>(c.q.vertices.size());
  for (int depth = 0; depth < bound; ++depth) {
    auto grow = [&](std::map<MonoidElement, Trace>& seen,
                    std::vector<MonoidElement>& front) {
      std::vector<MonoidElement> next;
      for (const auto& m : front) {
        for (int v = 0; v < nv; ++v) {
          if (c.q.is_sink(v) || m.mult[static_cast<std::size_t>(v)] == 0) continue;
          MonoidElement n = mon_step(c, m, v);
          if (seen.count(n)) continue;
          seen.emplace(n, Trace{m, v});
          next.push_back(n);
          ++w.explored;
        }
      }
      front = std::move(next);
    };
    if (!exhausted_a) {
      grow(seen_a, front_a);
      if (front_a.empty()) exhausted_a = true;
    }
    if (!exhausted_b) {
      grow(seen_b, front_b);
      if (front_b.empty()) exhausted_b = true;
    }
    for (const auto& [m, t] : seen_a)
      if (seen_b.count(m)) {
        w.verdict = MonVerdict::Equal;
        w.meet = m;
        w.steps_from_a = unwind(seen_a, m);
        w.steps_from_b = unwind(seen_b, m);
        return w;
      }
    if (exhausted_a && exhausted_b) {
      w.verdict = MonVerdict::NotEqual;
      return w;
    }
    if (w.explored > max_states) break;
  }
  w.verdict = MonVerdict::Unknown;
  return w;
}

bool vmonoid_generators_check(const Ctx& c) {
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v) {
    int vi = static_cast<int>(v);
    if (c.q.is_sink(vi)) continue;
    MonoidElement expect = mon_zero(c);
    for (int e : c.q.out_edges(vi))
      expect.mult[static_cast<std::size_t>(c.q.edges[static_cast<std::size_t>(e)].dst)] += 1;
    if (!(mon_step(c, mon_vertex(c, vi), vi) == expect)) return false;
    ProjectiveWitness pw = projective_witness(c, vi);
    if (!pw.ck2_holds || !pw.ck1_holds) return false;
  }
  return true;
}

} // namespace lpa
