#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpa/leavitt.hpp"
#include "lpa/suites.hpp"

using namespace lpa;

namespace {

LeavittElement random_le(const Ctx& c, Rng& r, int max_degree) {
  LeavittElement x = le_zero();
  int nterms = 1 + r.below(3);
  for (int t = 0; t < nterms; ++t) {
    PathElement g = random_pe(c, r, max_degree, true);
    if (g.is_zero()) continue;
    const Path& gamma = g.terms().begin()->first;
    // random ghost path ending at the same vertex
    int target = gamma.range(c.q);
    Path mu = Path::trivial(target);
    for (int l = r.below(max_degree + 1); l > 0; --l) {
      bool extended = false;
      for (std::size_t e = 0; e < c.q.edges.size() && !extended; ++e) {
        int ei = (static_cast<int>(e) + r.below(static_cast<int>(c.q.edges.size()))) %
                 static_cast<int>(c.q.edges.size());
        if (c.q.edges[static_cast<std::size_t>(ei)].dst == mu.source(c.q)) {
          Path ext = Path::edge(ei).then(c.q, mu);
          mu = ext;
          extended = true;
        }
      }
      if (!extended) break;
    }
    x = le_add(c, x, le_monomial(c, gamma, mu, g.terms().begin()->second));
  }
  return x;
}

} // namespace

TEST_CASE("CK1 contraction in the rose") {
  Ctx c = make_graph_R2();
  int w = c.q.vertex_index("w");
  int e1 = c.q.edge_index("e1"), e2 = c.q.edge_index("e2");

  CHECK(le_equal(le_mul(c, le_ghost(c, e1), le_edge(c, e1)), le_vertex(c, w)));
  CHECK(le_mul(c, le_ghost(c, e1), le_edge(c, e2)).is_zero());
}

TEST_CASE("CK2 normal form in the rose") {
  Ctx c = make_graph_R2();
  int w = c.q.vertex_index("w");
  int e1 = c.q.edge_index("e1"), e2 = c.q.edge_index("e2");
  CHECK(designated_edge(c, w) == e2);

  // e2 e2* rewrites to w - e1 e1*
  LeavittElement prod = le_mul(c, le_edge(c, e2), le_ghost(c, e2));
  LeavittElement want = le_sub(c, le_vertex(c, w),
                               le_mul(c, le_edge(c, e1), le_ghost(c, e1)));
  CHECK(le_equal(prod, want));

  // sum of e e* over s^{-1}(w) is w
  LeavittElement sum = le_add(c, le_mul(c, le_edge(c, e1), le_ghost(c, e1)),
                              le_mul(c, le_edge(c, e2), le_ghost(c, e2)));
  CHECK(le_equal(sum, le_vertex(c, w)));
}

TEST_CASE("the involution") {
  Ctx c = make_graph_T();
  int e = c.q.edge_index("f");
  CHECK(le_equal(le_star(c, le_edge(c, e)), le_ghost(c, e)));

  Rng r(47);
  for (int it = 0; it < 25; ++it) {
    LeavittElement x = random_le(c, r, 3);
    LeavittElement y = random_le(c, r, 3);
    CHECK(le_equal(le_star(c, le_star(c, x)), x));
    CHECK(le_equal(le_star(c, le_mul(c, x, y)),
                   le_mul(c, le_star(c, y), le_star(c, x))));
  }
}

TEST_CASE("projective witnesses") {
  Ctx r2 = make_graph_R2();
  ProjectiveWitness w2 = projective_witness(r2, r2.q.vertex_index("w"));
  CHECK(w2.ck1_holds);
  CHECK(w2.ck2_holds);
  CHECK(w2.edges.size() == 2);

  Ctx t = make_graph_T();
  ProjectiveWitness wu = projective_witness(t, t.q.vertex_index("u"));
  CHECK(wu.ck1_holds);
  CHECK(wu.ck2_holds);

  // a sink has no witness
  Quiver q;
  q.add_vertex("a");
  q.add_vertex("b");
  q.add_edge("e", "a", "b");
  Ctx c = Ctx::make(q);
  CHECK_THROWS_WITH_AS(projective_witness(c, q.vertex_index("b")),
                       doctest::Contains("SinkVertex"), Error);
  CHECK_THROWS_WITH_AS(designated_edge(c, q.vertex_index("b")),
                       doctest::Contains("SinkVertex"), Error);
}

TEST_CASE("coefficient mapping into the amalgamated field") {
  Ctx c = make_graph_T();
  Amalgamation am = amalgamate(c.tower);
  int beta = c.q.edge_index("beta");
  int cv = c.cls_of_vertex(c.q.vertex_index("v"));

  LeavittElement x = le_scale(c, scalar_var(c.tower, cv), le_edge(c, beta));
  LeavittElement img = map_coefficients(c, am, x);
  CHECK(img.terms().begin()->second.value == scalar_var(c.tower, cv).value);

  // unital
  LeavittElement one = le_zero();
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v)
    one = le_add(c, one, le_vertex(c, static_cast<int>(v)));
  CHECK(le_equal(map_coefficients(c, am, one), one));

  // multiplicative on random pairs
  Rng r(53);
  for (int it = 0; it < 20; ++it) {
    LeavittElement a = random_le(c, r, 3);
    LeavittElement b = random_le(c, r, 3);
    CHECK(le_equal(map_coefficients(c, am, le_mul(c, a, b)),
                   le_mul(c, map_coefficients(c, am, a), map_coefficients(c, am, b))));
  }
}

TEST_CASE("defining relations reports") {
  CHECK(check_defining_relations(make_graph_T()).ok());
  CHECK(check_defining_relations(make_graph_R2()).ok());
  CHECK(check_defining_relations(make_graph_tree3()).ok());

  // a single vertex without edges: only (V) applies
  Quiver q;
  q.add_vertex("a");
  Ctx c = Ctx::make(q);
  RelationReport rep = check_defining_relations(c);
  CHECK(rep.ok());
}

TEST_CASE("associativity of the normal-form product") {
  Ctx c = make_graph_R2();
  Rng r(59);
  for (int it = 0; it < 20; ++it) {
    LeavittElement x = random_le(c, r, 3);
    LeavittElement y = random_le(c, r, 3);
    LeavittElement z = random_le(c, r, 3);
    CHECK(le_equal(le_mul(c, le_mul(c, x, y), z), le_mul(c, x, le_mul(c, y, z))));
  }
}

TEST_CASE("reduction order does not change the normal form") {
  for (Ctx c : {make_graph_T(), make_graph_R2(), make_graph_tree3()}) {
    Rng r(61);
    for (int it = 0; it < 30; ++it) {
      LeavittElement x = random_le(c, r, 4);
      LeavittElement y = random_le(c, r, 4);
      LeavittElement raw = le_mul_raw(c, x, y);
      LeavittElement a = le_normalize(c, raw);
      for (std::uint64_t s = 0; s < 3; ++s)
        CHECK(le_equal(a, le_normalize_shuffled(c, raw, 1000 * s + static_cast<std::uint64_t>(it))));
    }
  }
}

TEST_CASE("normal forms carry no designated-edge tails") {
  Ctx c = make_graph_R2();
  Rng r(67);
  for (int it = 0; it < 30; ++it) {
    LeavittElement x = le_mul(c, random_le(c, r, 3), random_le(c, r, 3));
    for (const auto& [key, coeff] : x.terms()) {
      const auto& [gamma, mu] = key;
      if (gamma.is_trivial() || mu.is_trivial()) continue;
      int last_g = gamma.edges.back(), last_m = mu.edges.back();
      if (last_g != last_m) continue;
      int v = c.q.edges[static_cast<std::size_t>(last_g)].src;
      bool fits = true;
      for (int var : coeff.value.vars_used())
        if (!c.tower.var_allowed(var, c.cls_of_vertex(v))) fits = false;
      if (fits) CHECK(last_g != designated_edge(c, v));
    }
  }
}
