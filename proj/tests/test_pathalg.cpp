#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpa/pathalg.hpp"
#include "lpa/suites.hpp"

using namespace lpa;

namespace {

struct Fixture {
  Ctx c = make_graph_T();
  int u, v, alpha, f, beta, cu, cv;
  Fixture() {
    u = c.q.vertex_index("u");
    v = c.q.vertex_index("v");
    alpha = c.q.edge_index("alpha");
    f = c.q.edge_index("f");
    beta = c.q.edge_index("beta");
    cu = c.cls_of_vertex(u);
    cv = c.cls_of_vertex(v);
  }
  FieldScalar xu() const { return scalar_var(c.tower, cu); }
  FieldScalar xv() const { return scalar_var(c.tower, cv); }
};

} // namespace

TEST_CASE("path products concatenate and coerce coefficients") {
  Fixture fx;
  const Ctx& c = fx.c;
  PathElement a = pe_scale(c, fx.xu(), pe_edge(c, fx.alpha));
  PathElement b = pe_edge(c, fx.f);
  PathElement p = pe_mul(c, a, b);
  Path af = Path::edge(fx.alpha).then(c.q, Path::edge(fx.f));
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->first == af);
  FieldScalar co = p.coeff(c, af);
  CHECK(co.value == fx.xu().value);
  CHECK(co.home == fx.cv); // coerced into K_[r(alpha f)] = K_[v]

  // distinct vertices multiply to zero
  CHECK(pe_mul(c, pe_vertex(c, fx.u), pe_vertex(c, fx.v)).is_zero());

  // the sum of vertices is the unit
  PathElement any = pe_add(c, a, pe_vertex(c, fx.v));
  CHECK(pe_equal(pe_mul(c, any, pe_unit(c)), any));
  CHECK(pe_equal(pe_mul(c, pe_unit(c), any), any));
}

TEST_CASE("coefficient membership is enforced on insertion") {
  Fixture fx;
  PathElement p;
  // x_v cannot sit on a path ending at u
  CHECK_THROWS_WITH_AS(p.add(fx.c, Path::edge(fx.alpha), fx.xv()),
                       doctest::Contains("CoefficientMembership"), Error);
  CHECK_NOTHROW(p.add(fx.c, Path::edge(fx.f), fx.xv()));
}

TEST_CASE("augmentation and the invertibility criterion") {
  Fixture fx;
  const Ctx& c = fx.c;

  // 1x1 matrix I - x_u alpha: epsilon = 1, invertible
  Mat m = mat_identity(c, 1, std::vector<int>{fx.u});
  m.at(0, 0) = pe_sub(c, pe_vertex(c, fx.u),
                      pe_scale(c, fx.xu(), pe_edge(c, fx.alpha)));
  CHECK(is_invertible(c, m));

  // [[u]] is invertible only as a matrix over the corner uPu
  Mat corner = Mat::zero(1, 1);
  corner.tags = std::vector<int>{fx.u};
  corner.at(0, 0) = pe_vertex(c, fx.u);
  CHECK(is_invertible(c, corner));
  Mat full = Mat::zero(1, 1);
  full.at(0, 0) = pe_vertex(c, fx.u); // no tags: must act as the full identity
  CHECK_FALSE(is_invertible(c, full));

  // [[alpha]]: epsilon = 0, never invertible
  Mat bad = Mat::zero(1, 1);
  bad.tags = std::vector<int>{fx.u};
  bad.at(0, 0) = pe_edge(c, fx.alpha);
  CHECK_FALSE(is_invertible(c, bad));

  Mat rect = Mat::zero(1, 2);
  CHECK_THROWS_WITH_AS(is_invertible(c, rect), doctest::Contains("NonSquare"),
                       Error);

  // augmentation keeps only trivial paths
  PathElement x = pe_add(c, pe_scale(c, scalar_int(c.tower, 3), pe_vertex(c, fx.u)),
                         pe_edge(c, fx.f));
  AugValue av = augment(c, x);
  REQUIRE(av.at.size() == 1);
  CHECK(av.at.begin()->first == fx.u);
  CHECK(av.at.begin()->second.value == Fraction::from_int(c.tower.num_vars(), 3));
}

TEST_CASE("epsilon is a ring homomorphism") {
  Fixture fx;
  Rng r(3);
  for (int it = 0; it < 30; ++it) {
    PathElement a = random_pe(fx.c, r, 3, true);
    PathElement b = random_pe(fx.c, r, 3, true);
    CHECK(pe_equal(aug_to_pe(fx.c, augment(fx.c, pe_mul(fx.c, a, b))),
                   pe_mul(fx.c, aug_to_pe(fx.c, augment(fx.c, a)),
                          aug_to_pe(fx.c, augment(fx.c, b)))));
    CHECK(pe_equal(aug_to_pe(fx.c, augment(fx.c, pe_add(fx.c, a, b))),
                   pe_add(fx.c, aug_to_pe(fx.c, augment(fx.c, a)),
                          aug_to_pe(fx.c, augment(fx.c, b)))));
  }
}

TEST_CASE("truncated inversion") {
  Fixture fx;
  const Ctx& c = fx.c;

  // geometric series of I - x_u alpha at N = 3
  Mat m = Mat::zero(1, 1);
  m.tags = std::vector<int>{fx.u};
  m.at(0, 0) = pe_sub(c, pe_vertex(c, fx.u),
                      pe_scale(c, fx.xu(), pe_edge(c, fx.alpha)));
  Mat inv = invert_eps_unit(c, m, 3);
  PathElement expect = pe_vertex(c, fx.u);
  FieldScalar coef = scalar_int(c.tower, 1);
  Path p = Path::trivial(fx.u);
  for (int k = 1; k <= 3; ++k) {
    coef = fs_mul(c.tower, coef, fx.xu());
    p = p.then(c.q, Path::edge(fx.alpha));
    expect = pe_add(c, expect, pe_scale(c, coef, pe_path(c, p)));
  }
  CHECK(pe_equal(inv.at(0, 0), expect));

  // strictly nilpotent B: the inverse is I + B exactly
  Mat i2 = mat_identity(c, 2, std::vector<int>{fx.u, fx.v});
  Mat b = Mat::zero(2, 2);
  b.tags = i2.tags;
  b.at(0, 1) = pe_edge(c, fx.f);
  Mat ib = mat_sub(c, i2, b);
  Mat inv2 = invert_eps_unit(c, ib, 8);
  CHECK(mat_equal(inv2, mat_add(c, i2, b)));

  // random 2x2 with eps(B) = 0: two-sided product check mod 6
  Rng r(5);
  for (int it = 0; it < 10; ++it) {
    Mat rb = random_eps_zero(c, r, 2, 2);
    Mat rm = mat_sub(c, mat_identity(c, 2, rb.tags), rb);
    Mat rinv = invert_eps_unit(c, rm, 6);
    Mat prod = mat_truncate(c, mat_mul(c, rm, rinv, 6), 6);
    CHECK(mat_equal(prod, mat_truncate(c, mat_identity(c, 2, rb.tags), 6)));
    Mat prod2 = mat_truncate(c, mat_mul(c, rinv, rm, 6), 6);
    CHECK(mat_equal(prod2, mat_truncate(c, mat_identity(c, 2, rb.tags), 6)));
  }

  Mat notinv = Mat::zero(1, 1);
  notinv.tags = std::vector<int>{fx.u};
  notinv.at(0, 0) = pe_edge(c, fx.alpha);
  CHECK_THROWS_WITH_AS(invert_eps_unit(c, notinv, 4),
                       doctest::Contains("NotInvertible"), Error);
}

TEST_CASE("transduction and tau") {
  Fixture fx;
  const Ctx& c = fx.c;

  // stripping e from e leaves the range vertex
  CHECK(pe_equal(transduce(c, fx.f, pe_edge(c, fx.f)), pe_vertex(c, fx.v)));

  // delta_alpha(x_u alpha f + f) = x_u f
  PathElement in = pe_add(
      c,
      pe_scale(c, fx.xu(),
               pe_path(c, Path::edge(fx.alpha).then(c.q, Path::edge(fx.f)))),
      pe_edge(c, fx.f));
  CHECK(pe_equal(transduce(c, fx.alpha, in),
                 pe_scale(c, fx.xu(), pe_edge(c, fx.f))));

  // tau_alpha(u + 3 x_u u + f) = (1 + 3 x_u) u
  PathElement arg = pe_add(
      c,
      pe_add(c, pe_vertex(c, fx.u),
             pe_scale(c, fs_mul(c.tower, scalar_int(c.tower, 3), fx.xu()),
                      pe_vertex(c, fx.u))),
      pe_edge(c, fx.f));
  FieldScalar want = fs_add(c.tower, scalar_int(c.tower, 1),
                            fs_mul(c.tower, scalar_int(c.tower, 3), fx.xu()));
  CHECK(pe_equal(tau(c, fx.alpha, arg), pe_scale(c, want, pe_vertex(c, fx.u))));

  // exact elements stay exact under transduction
  Rng r(17);
  for (int it = 0; it < 20; ++it) {
    PathElement a = random_pe(c, r, 3, true);
    CHECK_NOTHROW(transduce(c, fx.alpha, a));
    CHECK_NOTHROW(transduce(c, fx.f, a));
  }
}

TEST_CASE("right derivation law") {
  Fixture fx;
  const Ctx& c = fx.c;
  // r = e, s = r(e)
  CHECK(check_right_derivation(c, fx.f, pe_edge(c, fx.f), pe_vertex(c, fx.v)));
  // r = s(e), s = e
  CHECK(check_right_derivation(c, fx.f, pe_vertex(c, fx.u), pe_edge(c, fx.f)));
  // random pairs
  Rng r(23);
  for (int it = 0; it < 60; ++it) {
    PathElement a = random_pe(c, r, 3, true);
    PathElement b = random_pe(c, r, 3, true);
    for (int e = 0; e < static_cast<int>(c.q.edges.size()); ++e)
      CHECK(check_right_derivation(c, e, a, b));
  }
}

TEST_CASE("associativity and distributivity of path products") {
  Fixture fx;
  Rng r(29);
  for (int it = 0; it < 25; ++it) {
    PathElement a = random_pe(fx.c, r, 4, true);
    PathElement b = random_pe(fx.c, r, 4, true);
    PathElement d = random_pe(fx.c, r, 4, true);
    CHECK(pe_equal(pe_mul(fx.c, pe_mul(fx.c, a, b), d),
                   pe_mul(fx.c, a, pe_mul(fx.c, b, d))));
    CHECK(pe_equal(pe_mul(fx.c, a, pe_add(fx.c, b, d)),
                   pe_add(fx.c, pe_mul(fx.c, a, b), pe_mul(fx.c, a, d))));
  }
}

TEST_CASE("series truncation contract") {
  Fixture fx;
  const Ctx& c = fx.c;
  SeriesTruncation s1{pe_add(c, pe_vertex(c, fx.u), pe_edge(c, fx.alpha)), 3};
  SeriesTruncation s2{pe_edge(c, fx.alpha), 2};
  SeriesTruncation p = st_mul(c, s1, s2);
  CHECK(p.degree == 2); // minimum of the degrees
  CHECK(p.pe.max_degree() <= 2);
}
