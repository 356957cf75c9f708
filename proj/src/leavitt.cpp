#include "lpa/leavitt.hpp"

#include <algorithm>
#include <random>

namespace lpa {

namespace {

FieldScalar zero_scalar(const Ctx& c) {
  FieldScalar s;
  s.value = Fraction(c.tower.num_vars());
  s.home = c.poset.root;
  return s;
}

Path drop_last(const Quiver& q, const Path& p) {
  Path out = p;
  int e = out.edges.back();
  out.edges.pop_back();
  if (out.edges.empty()) out.anchor = q.edges[static_cast<std::size_t>(e)].src;
  return out;
}

// Is a a prefix of b? On success nu is the remainder (possibly trivial).
bool is_prefix(const Quiver& q, const Path& a, const Path& b, Path& nu) {
  if (a.length() > b.length()) return false;
  if (a.is_trivial()) {
    if (b.source(q) != a.anchor) return false;
    nu = b;
    return true;
  }
  for (int i = 0; i < a.length(); ++i)
    if (a.edges[static_cast<std::size_t>(i)] != b.edges[static_cast<std::size_t>(i)])
      return false;
  nu.edges.assign(b.edges.begin() + a.length(), b.edges.end());
  nu.anchor = nu.edges.empty() ? a.range(q) : -1;
  return true;
}

bool coeff_fits(const Ctx& c, const FieldScalar& s, int cls) {
  for (int v : s.value.vars_used())
    if (!c.tower.var_allowed(v, cls)) return false;
  return true;
}

bool fireable(const Ctx& c, const LeavittElement::Key& k, const FieldScalar& co) {
  const Path& g = k.first;
  const Path& m = k.second;
  if (g.is_trivial() || m.is_trivial()) return false;
  int e = g.edges.back();
  if (e != m.edges.back()) return false;
  int v = c.q.edges[static_cast<std::size_t>(e)].src;
  if (designated_edge(c, v) != e) return false;
  return coeff_fits(c, co, c.cls_of_vertex(v));
}

} // namespace

int designated_edge(const Ctx& c, int v) {
  auto out = c.q.out_edges(v);
  if (out.empty()) fail("SinkVertex", "no designated edge at a sink");
  int pick = -1;
  for (int e : out)
    if (c.cls_of_vertex(c.q.edges[static_cast<std::size_t>(e)].dst) == c.cls_of_vertex(v))
      pick = e;
  return pick >= 0 ? pick : out.back();
}

void LeavittElement::add_raw(const Ctx& c, const Path& gamma, const Path& mu,
                             const FieldScalar& coeff) {
  if (coeff.is_zero()) return;
  if (gamma.range(c.q) != mu.range(c.q))
    fail("AnchorMismatch", "monomial halves must share their range");
  Key k{gamma, mu};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, coeff);
    return;
  }
  FieldScalar s = fs_add(c.tower, it->second, coeff);
  if (s.is_zero())
    terms_.erase(it);
  else
    it->second = s;
}

FieldScalar LeavittElement::coeff(const Ctx& c, const Path& gamma,
                                  const Path& mu) const {
  auto it = terms_.find({gamma, mu});
  return it == terms_.end() ? zero_scalar(c) : it->second;
}

std::string LeavittElement::to_string(const Ctx& c) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, co] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + fs_to_string(c.tower, co) + ") " + k.first.to_string(c.q);
    if (!k.second.is_trivial()) out += " (" + k.second.to_string(c.q) + ")*";
  }
  return out;
}

LeavittElement le_zero() { return {}; }

LeavittElement le_vertex(const Ctx& c, int v) {
  LeavittElement a;
  a.add_raw(c, Path::trivial(v), Path::trivial(v), scalar_int(c.tower, 1));
  return a;
}

LeavittElement le_edge(const Ctx& c, int e) {
  LeavittElement a;
  int r = c.q.edges[static_cast<std::size_t>(e)].dst;
  a.add_raw(c, Path::edge(e), Path::trivial(r), scalar_int(c.tower, 1));
  return a;
}

LeavittElement le_ghost(const Ctx& c, int e) {
  LeavittElement a;
  int r = c.q.edges[static_cast<std::size_t>(e)].dst;
  a.add_raw(c, Path::trivial(r), Path::edge(e), scalar_int(c.tower, 1));
  return a;
}

LeavittElement le_monomial(const Ctx& c, const Path& gamma, const Path& mu,
                           const FieldScalar& coeff) {
  int rng = gamma.range(c.q);
  FieldScalar co = make_scalar(c.tower, coeff.value, c.cls_of_vertex(rng));
  LeavittElement a;
  a.add_raw(c, gamma, mu, co);
  return le_normalize(c, a);
}

LeavittElement le_scale(const Ctx& c, const FieldScalar& s, const LeavittElement& a) {
  LeavittElement out;
  for (const auto& [k, co] : a.terms()) {
    FieldScalar f = fs_mul(c.tower, s, co);
    int cls = c.cls_of_vertex(k.first.range(c.q));
    out.add_raw(c, k.first, k.second, make_scalar(c.tower, f.value, cls));
  }
  return le_normalize(c, out);
}

LeavittElement le_from_pe(const Ctx& c, const PathElement& a) {
  LeavittElement out;
  for (const auto& [p, co] : a.terms())
    out.add_raw(c, p, Path::trivial(p.range(c.q)), co);
  return le_normalize(c, out);
}

LeavittElement le_add(const Ctx& c, const LeavittElement& a, const LeavittElement& b) {
  LeavittElement out = a;
  for (const auto& [k, co] : b.terms()) out.add_raw(c, k.first, k.second, co);
  return le_normalize(c, out);
}

LeavittElement le_neg(const Ctx& c, const LeavittElement& a) {
  return le_scale(c, scalar_int(c.tower, -1), a);
}

LeavittElement le_sub(const Ctx& c, const LeavittElement& a, const LeavittElement& b) {
  return le_add(c, a, le_neg(c, b));
}

LeavittElement le_star(const Ctx& c, const LeavittElement& a) {
  LeavittElement out;
  for (const auto& [k, co] : a.terms()) out.add_raw(c, k.second, k.first, co);
  return le_normalize(c, out);
}

bool le_equal(const LeavittElement& a, const LeavittElement& b) {
  if (a.terms().size() != b.terms().size()) return false;
  auto it = b.terms().begin();
  for (const auto& [k, co] : a.terms()) {
    if (!(it->first == k) || !fs_equal(it->second, co)) return false;
    ++it;
  }
  return true;
}

namespace {

// Fires the CK2 rewrite on one key; contributions are merged into the map.
void fire(const Ctx& c, std::map<LeavittElement::Key, FieldScalar>& terms,
          const LeavittElement::Key& k) {
  auto it = terms.find(k);
  FieldScalar co = it->second;
  terms.erase(it);
  int e0 = k.first.edges.back();
  int v = c.q.edges[static_cast<std::size_t>(e0)].src;
  Path g = drop_last(c.q, k.first);
  Path m = drop_last(c.q, k.second);
  auto put = [&](const Path& a, const Path& b, const FieldScalar& s) {
    if (s.is_zero()) return;
    auto jt = terms.find({a, b});
    if (jt == terms.end())
      terms.emplace(LeavittElement::Key{a, b}, s);
    else {
      FieldScalar t = fs_add(c.tower, jt->second, s);
      if (t.is_zero())
        terms.erase(jt);
      else
        jt->second = t;
    }
  };
  put(g, m, make_scalar(c.tower, co.value, c.cls_of_vertex(v)));
  for (int e : c.q.out_edges(v)) {
    if (e == e0) continue;
    int r = c.q.edges[static_cast<std::size_t>(e)].dst;
    put(g.then(c.q, Path::edge(e)), m.then(c.q, Path::edge(e)),
        make_scalar(c.tower, (-co.value), c.cls_of_vertex(r)));
  }
}

// Reduction by decreasing total length; within one length fireable keys are
// independent of each other, so any order there yields the same fixpoint.
LeavittElement normalize_impl(const Ctx& c, const LeavittElement& raw,
                              std::mt19937_64* rng) {
  std::map<LeavittElement::Key, FieldScalar> terms = raw.terms();
  while (true) {
    std::vector<LeavittElement::Key> cand;
    int best = -1;
    for (const auto& [k, co] : terms) {
      if (!fireable(c, k, co)) continue;
      int len = k.first.length() + k.second.length();
      if (len > best) {
        best = len;
        cand.clear();
      }
      if (len == best) cand.push_back(k);
    }
    if (cand.empty()) break;
    if (rng) std::shuffle(cand.begin(), cand.end(), *rng);
    for (const auto& k : cand) {
      auto it = terms.find(k);
      if (it != terms.end() && fireable(c, k, it->second)) fire(c, terms, k);
    }
  }
  LeavittElement out;
  for (const auto& [k, co] : terms) out.add_raw(c, k.first, k.second, co);
  return out;
}

} // namespace

LeavittElement le_normalize(const Ctx& c, const LeavittElement& raw) {
  return normalize_impl(c, raw, nullptr);
}

LeavittElement le_normalize_shuffled(const Ctx& c, const LeavittElement& raw,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return normalize_impl(c, raw, &rng);
}

LeavittElement le_mul(const Ctx& c, const LeavittElement& a, const LeavittElement& b) {
  return le_normalize(c, le_mul_raw(c, a, b));
}

LeavittElement le_mul_raw(const Ctx& c, const LeavittElement& a, const LeavittElement& b) {
  LeavittElement out;
  for (const auto& [k1, c1] : a.terms())
    for (const auto& [k2, c2] : b.terms()) {
      Path nu;
      if (is_prefix(c.q, k1.second, k2.first, nu)) {
        // mu1 nu = gamma2: gamma1 nu (mu2)*
        FieldScalar co = fs_mul(c.tower, c1, c2);
        out.add_raw(c, k1.first.then(c.q, nu), k2.second, co);
      } else if (is_prefix(c.q, k2.first, k1.second, nu) && !nu.is_trivial()) {
        // gamma2 nu = mu1: gamma1 (mu2 nu)*
        FieldScalar co = fs_mul(c.tower, c1, c2);
        int cls = c.cls_of_vertex(nu.range(c.q));
        out.add_raw(c, k1.first, k2.second.then(c.q, nu),
                    make_scalar(c.tower, co.value, cls));
      }
    }
  return out;
}

LeavittElement map_coefficients(const Ctx& c, const Amalgamation& am,
                                const LeavittElement& a) {
  LeavittElement out;
  for (const auto& [k, co] : a.terms()) out.add_raw(c, k.first, k.second, am.embed(co));
  return out;
}

ProjectiveWitness projective_witness(const Ctx& c, int v) {
  ProjectiveWitness w;
  w.v = v;
  w.edges = c.q.out_edges(v);
  if (w.edges.empty()) fail("SinkVertex", "no projective relation at a sink");
  w.relation_lhs = le_vertex(c, v);
  LeavittElement rhs;
  for (int e : w.edges) rhs = le_add(c, rhs, le_mul(c, le_edge(c, e), le_ghost(c, e)));
  w.relation_rhs = rhs;
  w.ck2_holds = le_equal(w.relation_lhs, rhs);
  w.ck1_holds = true;
  for (int e : w.edges)
    for (int f : w.edges) {
      LeavittElement p = le_mul(c, le_ghost(c, e), le_edge(c, f));
      LeavittElement expect =
          e == f ? le_vertex(c, c.q.edges[static_cast<std::size_t>(e)].dst) : le_zero();
      if (!le_equal(p, expect)) w.ck1_holds = false;
    }
  return w;
}

RelationReport check_defining_relations(const Ctx& c) {
  RelationReport rep;
  int nv = static_cast<int>(c.q.vertices.size());
  for (int v = 0; v < nv; ++v)
    for (int w = 0; w < nv; ++w) {
      LeavittElement p = le_mul(c, le_vertex(c, v), le_vertex(c, w));
      LeavittElement expect = v == w ? le_vertex(c, v) : le_zero();
      if (!le_equal(p, expect)) rep.vertices_orthogonal = false;
    }
  for (std::size_t e = 0; e < c.q.edges.size(); ++e) {
    int ei = static_cast<int>(e);
    int s = c.q.edges[e].src, r = c.q.edges[e].dst;
    if (!le_equal(le_mul(c, le_vertex(c, s), le_edge(c, ei)), le_edge(c, ei)) ||
        !le_equal(le_mul(c, le_edge(c, ei), le_vertex(c, r)), le_edge(c, ei)))
      rep.edge_ranges = false;
    if (!le_equal(le_mul(c, le_vertex(c, r), le_ghost(c, ei)), le_ghost(c, ei)) ||
        !le_equal(le_mul(c, le_ghost(c, ei), le_vertex(c, s)), le_ghost(c, ei)))
      rep.ghost_ranges = false;
  }
  for (std::size_t e = 0; e < c.q.edges.size(); ++e)
    for (std::size_t f = 0; f < c.q.edges.size(); ++f) {
      LeavittElement p =
          le_mul(c, le_ghost(c, static_cast<int>(e)), le_edge(c, static_cast<int>(f)));
      LeavittElement expect =
          e == f ? le_vertex(c, c.q.edges[e].dst) : le_zero();
      if (!le_equal(p, expect)) rep.ck1 = false;
    }
  for (int v = 0; v < nv; ++v) {
    if (c.q.is_sink(v)) continue;
    if (!projective_witness(c, v).ck2_holds) rep.ck2 = false;
  }
  return rep;
}

} // namespace lpa
