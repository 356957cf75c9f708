#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpa/scalars.hpp"
#include "lpa/suites.hpp"

using namespace lpa;

namespace {

struct Fixture {
  Ctx c = make_graph_T();
  int cu, cv;
  Fixture() {
    cu = c.cls_of_vertex(c.q.vertex_index("u"));
    cv = c.cls_of_vertex(c.q.vertex_index("v"));
  }
  const FieldTower& t() const { return c.tower; }
};

} // namespace

TEST_CASE("scalar arithmetic") {
  Fixture fx;
  const FieldTower& t = fx.t();
  FieldScalar xu = scalar_var(t, fx.cu);
  FieldScalar xv = scalar_var(t, fx.cv);

  // x_u * (1/x_u) = 1
  FieldScalar one = fs_mul(t, xu, fs_inv(t, xu));
  CHECK(fs_equal(one, scalar_int(t, 1)));

  // (x_u + x_v) + (-x_v) = x_u, but homed at the deeper class [v]
  FieldScalar s = fs_add(t, fs_add(t, xu, xv), fs_neg(t, xv));
  CHECK(s.value == xu.value);
  CHECK(s.home == fx.cv);

  CHECK_THROWS_WITH_AS(fs_inv(t, scalar_int(t, 0)),
                       doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("coercion along the chain") {
  Fixture fx;
  const FieldTower& t = fx.t();
  FieldScalar xu = scalar_var(t, fx.cu);
  FieldScalar xv = scalar_var(t, fx.cv);

  FieldScalar down = fs_coerce(t, xu, fx.cv);
  CHECK(down.value == xu.value);
  CHECK(down.home == fx.cv);

  CHECK_THROWS_WITH_AS(fs_coerce(t, xv, fx.cu),
                       doctest::Contains("NotASubfield"), Error);

  // rationals are homed at the root and coerce everywhere
  FieldScalar seven = scalar_int(t, 7);
  CHECK(seven.home == fx.c.poset.root);
  CHECK(fs_coerce(t, seven, fx.cv).home == fx.cv);
  CHECK(fs_coerce(t, seven, kAmalgam).home == kAmalgam);
}

TEST_CASE("variable allowance encodes the field tower") {
  Fixture fx;
  const FieldTower& t = fx.t();
  // K_[u] = Q(x_u): the deeper variable is not allowed at the root class
  CHECK(t.var_allowed(fx.cu, fx.cu));
  CHECK_FALSE(t.var_allowed(fx.cv, fx.cu));
  // K_[v] = Q(x_u, x_v)
  CHECK(t.var_allowed(fx.cu, fx.cv));
  CHECK(t.var_allowed(fx.cv, fx.cv));
  // the amalgam sees everything
  CHECK(t.var_allowed(fx.cu, kAmalgam));
  CHECK(t.var_allowed(fx.cv, kAmalgam));
}

TEST_CASE("amalgamation of a chain and of a bouquet") {
  // chain [v] < [u]: K = Q(x_u, x_v); the embedding is variable inclusion
  Fixture fx;
  Amalgamation am = amalgamate(fx.t());
  FieldScalar xu = scalar_var(fx.t(), fx.cu);
  CHECK(am.embed(xu).value == xu.value);
  CHECK(am.embed(xu).home == kAmalgam);

  // depth 0: single class, embedding is the identity on values
  Ctx r2 = make_graph_R2();
  Amalgamation am0 = amalgamate(r2.tower);
  FieldScalar xw = scalar_var(r2.tower, 0);
  CHECK(am0.embed(xw).value == xw.value);

  // root with two incomparable children: both embeddings agree on K_root
  Ctx t3 = make_graph_tree3();
  Amalgamation am3 = amalgamate(t3.tower);
  int root = t3.poset.root;
  FieldScalar xr = scalar_var(t3.tower, root);
  for (int cls = 0; cls < t3.poset.num_classes(); ++cls) {
    FieldScalar member = fs_coerce(t3.tower, xr, cls);
    CHECK(am3.embed(member).value == am3.embed(xr).value);
  }
}

TEST_CASE("field axioms on random scalars") {
  Fixture fx;
  const FieldTower& t = fx.t();
  Rng r(11);
  for (int it = 0; it < 40; ++it) {
    FieldScalar a = random_scalar(fx.c, r, fx.cv);
    FieldScalar b = random_scalar(fx.c, r, fx.cv);
    FieldScalar cc = random_scalar(fx.c, r, fx.cu);
    CHECK(fs_equal(fs_add(t, fs_add(t, a, b), cc), fs_add(t, a, fs_add(t, b, cc))));
    CHECK(fs_equal(fs_mul(t, fs_mul(t, a, b), cc), fs_mul(t, a, fs_mul(t, b, cc))));
    CHECK(fs_equal(fs_mul(t, a, fs_add(t, b, cc)),
                   fs_add(t, fs_mul(t, a, b), fs_mul(t, a, cc))));
    if (!a.is_zero())
      CHECK(fs_equal(fs_mul(t, a, fs_inv(t, a)), scalar_int(t, 1)));
  }
}

TEST_CASE("compatibility square: embed after coerce equals embed") {
  Fixture fx;
  Amalgamation am = amalgamate(fx.t());
  Rng r(13);
  for (int it = 0; it < 40; ++it) {
    FieldScalar s = random_scalar(fx.c, r, fx.cu); // s in K_[u], [v] <= [u]
    FieldScalar via_coerce = am.embed(fs_coerce(fx.t(), s, fx.cv));
    FieldScalar direct = am.embed(s);
    CHECK(fs_equal(via_coerce, direct));
  }
}
