#include "lpa/ratseries.hpp"

#include <algorithm>

namespace lpa {

namespace {

bool eps_zero(const Mat& m) {
  for (const auto& pe : m.a)
    for (const auto& [p, co] : pe.terms())
      if (p.is_trivial()) return false;
  return true;
}

std::vector<bool> vertex_mask(const Ctx& c, const std::vector<int>& vs) {
  std::vector<bool> in(c.q.vertices.size(), false);
  for (int v : vs) in[static_cast<std::size_t>(v)] = true;
  return in;
}

Mat row_mat(const std::vector<PathElement>& row) {
  Mat m = Mat::zero(1, static_cast<int>(row.size()));
  for (int j = 0; j < m.cols; ++j) m.at(0, j) = row[static_cast<std::size_t>(j)];
  return m;
}

Mat col_mat(const std::vector<PathElement>& col) {
  Mat m = Mat::zero(static_cast<int>(col.size()), 1);
  for (int i = 0; i < m.rows; ++i) m.at(i, 0) = col[static_cast<std::size_t>(i)];
  return m;
}

} // namespace

LinRep make_linrep(const Ctx& c, std::vector<PathElement> lambda, Mat b,
                   std::vector<PathElement> rho) {
  (void)c;
  if (b.rows != b.cols || static_cast<int>(lambda.size()) != b.rows ||
      static_cast<int>(rho.size()) != b.rows)
    fail("NonSquare", "linear representation blocks have mismatched sizes");
  if (!eps_zero(b))
    fail("BadAugmentation", "representation matrix must have zero augmentation");
  LinRep r;
  r.n = b.rows;
  r.lambda = std::move(lambda);
  r.b = std::move(b);
  r.rho = std::move(rho);
  return r;
}

LinRep rep_zero(const Ctx& c) {
  return make_linrep(c, {pe_zero()}, Mat::zero(1, 1), {pe_unit(c)});
}

LinRep rep_from_pe(const Ctx& c, const PathElement& p) {
  return make_linrep(c, {p}, Mat::zero(1, 1), {pe_unit(c)});
}

LinRep rep_scale(const Ctx& c, const FieldScalar& s, const LinRep& r) {
  LinRep out = r;
  for (auto& pe : out.lambda) pe = pe_scale(c, s, pe);
  return out;
}

SeriesTruncation expand(const Ctx& c, const LinRep& r, int degree) {
  std::vector<PathElement> row = r.lambda;
  PathElement acc;
  auto dot_rho = [&](const std::vector<PathElement>& v) {
    PathElement s;
    for (int i = 0; i < r.n; ++i)
      s = pe_add(c, s, pe_mul(c, v[static_cast<std::size_t>(i)],
                              r.rho[static_cast<std::size_t>(i)], degree));
    return s;
  };
  acc = dot_rho(row);
  for (int k = 1; k <= degree; ++k) {
    std::vector<PathElement> next(static_cast<std::size_t>(r.n));
    bool any = false;
    for (int j = 0; j < r.n; ++j) {
      PathElement s;
      for (int i = 0; i < r.n; ++i)
        s = pe_add(c, s, pe_mul(c, row[static_cast<std::size_t>(i)], r.b.at(i, j), degree));
      any = any || !s.is_zero();
      next[static_cast<std::size_t>(j)] = std::move(s);
    }
    if (!any) break;
    row = std::move(next);
    acc = pe_add(c, acc, dot_rho(row));
  }
  return SeriesTruncation{pe_truncate(c, acc, degree), degree};
}

LinRep rep_add(const Ctx& c, const LinRep& a, const LinRep& b) {
  int n = a.n + b.n;
  std::vector<PathElement> lam, rho;
  lam.reserve(static_cast<std::size_t>(n));
  rho.reserve(static_cast<std::size_t>(n));
  Mat m = Mat::zero(n, n);
  for (int i = 0; i < a.n; ++i) {
    lam.push_back(a.lambda[static_cast<std::size_t>(i)]);
    rho.push_back(a.rho[static_cast<std::size_t>(i)]);
    for (int j = 0; j < a.n; ++j) m.at(i, j) = a.b.at(i, j);
  }
  for (int i = 0; i < b.n; ++i) {
    lam.push_back(b.lambda[static_cast<std::size_t>(i)]);
    rho.push_back(b.rho[static_cast<std::size_t>(i)]);
    for (int j = 0; j < b.n; ++j) m.at(a.n + i, a.n + j) = b.b.at(i, j);
  }
  return make_linrep(c, std::move(lam), std::move(m), std::move(rho));
}

LinRep rep_sub(const Ctx& c, const LinRep& a, const LinRep& b) {
  return rep_add(c, a, rep_scale(c, scalar_int(c.tower, -1), b));
}

LinRep rep_mul(const Ctx& c, const LinRep& a, const LinRep& b) {
  // Blocks chosen so the off-diagonal coupling is B1 rho1 lambda2, keeping the
  // augmentation of the whole matrix zero; the k = 0 coupling term moves into
  // lambda as lambda1 rho1 lambda2.
  PathElement s; // lambda1 . rho1
  for (int i = 0; i < a.n; ++i)
    s = pe_add(c, s, pe_mul(c, a.lambda[static_cast<std::size_t>(i)],
                            a.rho[static_cast<std::size_t>(i)]));
  std::vector<PathElement> brho(static_cast<std::size_t>(a.n)); // B1 . rho1
  for (int i = 0; i < a.n; ++i) {
    PathElement t;
    for (int k = 0; k < a.n; ++k)
      t = pe_add(c, t, pe_mul(c, a.b.at(i, k), a.rho[static_cast<std::size_t>(k)]));
    brho[static_cast<std::size_t>(i)] = std::move(t);
  }
  int n = a.n + b.n;
  std::vector<PathElement> lam, rho;
  Mat m = Mat::zero(n, n);
  for (int i = 0; i < a.n; ++i) {
    lam.push_back(a.lambda[static_cast<std::size_t>(i)]);
    rho.push_back(pe_zero());
    for (int j = 0; j < a.n; ++j) m.at(i, j) = a.b.at(i, j);
    for (int j = 0; j < b.n; ++j)
      m.at(i, a.n + j) = pe_mul(c, brho[static_cast<std::size_t>(i)],
                                b.lambda[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < b.n; ++i) {
    lam.push_back(pe_mul(c, s, b.lambda[static_cast<std::size_t>(i)]));
    rho.push_back(b.rho[static_cast<std::size_t>(i)]);
    for (int j = 0; j < b.n; ++j) m.at(a.n + i, a.n + j) = b.b.at(i, j);
  }
  return make_linrep(c, std::move(lam), std::move(m), std::move(rho));
}

LinRep rep_corner_right(const Ctx& c, const LinRep& r, const std::vector<bool>& in) {
  LinRep out = r;
  for (auto& pe : out.rho) pe = pe_filter_range(c, pe, in, true);
  return out;
}

LinRep rep_corner_left(const Ctx& c, const LinRep& r, const std::vector<bool>& in) {
  LinRep out = r;
  for (auto& pe : out.lambda) pe = pe_filter_source(c, pe, in, true);
  return out;
}

bool rep_equal_mod(const Ctx& c, const LinRep& a, const LinRep& b, int degree) {
  return st_equal(expand(c, a, degree), expand(c, b, degree));
}

bool rep_is_zero_mod(const Ctx& c, const LinRep& a, int degree) {
  return expand(c, a, degree).pe.is_zero();
}

SupportSplit split_by_hereditary(const Ctx& c, const Mat& b,
                                 const std::vector<int>& h) {
  if (b.rows != b.cols) fail("NonSquare", "support split needs a square matrix");
  if (!eps_zero(b))
    fail("BadAugmentation", "support split needs zero augmentation");
  if (!is_hereditary(c.q, h))
    fail("NotHereditary", "vertex set admits an exit edge");
  SupportSplit s;
  s.in_h = vertex_mask(c, h);
  s.b1 = Mat::zero(b.rows, b.cols);
  s.b2 = Mat::zero(b.rows, b.cols);
  s.b2_cross = Mat::zero(b.rows, b.cols);
  s.b2_inner = Mat::zero(b.rows, b.cols);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      const PathElement& e = b.at(i, j);
      s.b1.at(i, j) = pe_filter_range(c, e, s.in_h, false);
      s.b2.at(i, j) = pe_filter_range(c, e, s.in_h, true);
      s.b2_cross.at(i, j) = pe_filter_source(c, s.b2.at(i, j), s.in_h, false);
      s.b2_inner.at(i, j) = pe_filter_source(c, s.b2.at(i, j), s.in_h, true);
    }
  s.b2b1_zero = mat_is_zero(mat_mul(c, s.b2, s.b1));
  s.cross_sq_zero = mat_is_zero(mat_mul(c, s.b2_cross, s.b2_cross));
  s.inner_cross_zero = mat_is_zero(mat_mul(c, s.b2_inner, s.b2_cross));
  if (!s.b2b1_zero || !s.cross_sq_zero || !s.inner_cross_zero)
    fail("Internal", "hereditary support split lost orthogonality");
  return s;
}

bool check_inverse_factorization(const Ctx& c, const Mat& b,
                                 const std::vector<int>& h, int degree) {
  SupportSplit s = split_by_hereditary(c, b, h);
  Mat id = mat_identity(c, b.rows);
  Mat inv = invert_eps_unit(c, mat_sub(c, id, b), degree);
  Mat inv1 = invert_eps_unit(c, mat_sub(c, id, s.b1), degree);
  Mat inv2 = invert_eps_unit(c, mat_sub(c, id, s.b2), degree);
  Mat prod = mat_truncate(c, mat_mul(c, inv1, inv2, degree), degree);
  if (!mat_equal(prod, mat_truncate(c, inv, degree))) return false;
  Mat sum = mat_add(c, inv1, mat_mul(c, mat_mul(c, inv1, s.b2, degree), inv2, degree));
  return mat_equal(mat_truncate(c, sum, degree), mat_truncate(c, inv, degree));
}

SeriesTruncation corner_formula(const Ctx& c, const LinRep& x,
                                const std::vector<int>& h, int degree) {
  SupportSplit s = split_by_hereditary(c, x.b, h);
  const auto& in = s.in_h;
  std::vector<PathElement> lamH(static_cast<std::size_t>(x.n));
  std::vector<PathElement> rhoH(static_cast<std::size_t>(x.n));
  for (int i = 0; i < x.n; ++i) {
    lamH[static_cast<std::size_t>(i)] =
        pe_filter_source(c, x.lambda[static_cast<std::size_t>(i)], in, true);
    rhoH[static_cast<std::size_t>(i)] = pe_filter_range(
        c, pe_filter_source(c, x.rho[static_cast<std::size_t>(i)], in, true), in, true);
  }
  PathElement t1;
  for (int i = 0; i < x.n; ++i)
    t1 = pe_add(c, t1, pe_mul(c, lamH[static_cast<std::size_t>(i)],
                              rhoH[static_cast<std::size_t>(i)], degree));
  Mat L = row_mat(lamH);
  Mat C = col_mat(rhoH);
  Mat id = mat_identity(c, x.n);
  Mat inv = invert_eps_unit(c, mat_sub(c, id, s.b2_inner), degree);
  Mat t2m = mat_mul(c, mat_mul(c, mat_mul(c, L, s.b2_inner, degree), inv, degree), C,
                    degree);
  SeriesTruncation result{pe_truncate(c, pe_add(c, t1, t2m.at(0, 0)), degree), degree};
  SeriesTruncation direct = expand(c, x, degree);
  direct.pe = pe_filter_range(c, pe_filter_source(c, direct.pe, in, true), in, true);
  if (!st_equal(result, direct))
    fail("MismatchedCorner", "corner formula disagrees with direct expansion");
  return result;
}

namespace {

// Split a polynomial by its monomial part in the non-root variables; the
// values are polynomials in the root variable alone.
std::map<Monomial, Poly, GradedLexLess> split_deep(const Poly& p, int root_var) {
  std::map<Monomial, Poly, GradedLexLess> out;
  for (const auto& [m, co] : p.terms()) {
    Monomial deep = m;
    Monomial shallow(m.size(), 0);
    if (root_var >= 0 && root_var < static_cast<int>(m.size())) {
      shallow[static_cast<std::size_t>(root_var)] = m[static_cast<std::size_t>(root_var)];
      deep[static_cast<std::size_t>(root_var)] = 0;
    }
    auto it = out.find(deep);
    if (it == out.end()) it = out.emplace(deep, Poly(p.nvars())).first;
    it->second.add_term(shallow, co);
  }
  return out;
}

int fraction_rank(std::vector<std::vector<Fraction>> rows, int cols) {
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(rank)]);
    Fraction inv = rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)].inverse();
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      Fraction f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * inv;
      if (f.is_zero()) continue;
      for (int k = col; k < cols; ++k)
        rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
            rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -
            f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
    }
    ++rank;
  }
  return rank;
}

} // namespace

bool k0_independent(const Ctx& c, const std::vector<SeriesTruncation>& b, int degree) {
  int m = static_cast<int>(b.size());
  if (m == 0) return true;
  int d = degree;
  for (const auto& st : b) d = std::min(d, st.degree);
  std::set<Path> support;
  for (const auto& st : b)
    for (const auto& [p, co] : st.pe.terms())
      if (p.length() <= d) support.insert(p);
  int root_var = c.poset.root;
  int nv = c.tower.num_vars();
  // One equation per (path, deep monomial); unknowns are the m coefficients.
  std::vector<std::vector<Fraction>> rows;
  for (const Path& p : support) {
    std::vector<Fraction> fs(static_cast<std::size_t>(m), Fraction(nv));
    for (int i = 0; i < m; ++i)
      fs[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)].pe.coeff(c, p).value;
    // Clear denominators so each entry becomes a polynomial.
    Poly common = Poly::constant(nv, 1);
    for (const auto& f : fs) common = common * f.den();
    std::map<Monomial, std::vector<Poly>, GradedLexLess> grouped;
    for (int i = 0; i < m; ++i) {
      Poly cleared = fs[static_cast<std::size_t>(i)].num() *
                     poly_div_exact(common, fs[static_cast<std::size_t>(i)].den());
      for (auto& [deep, shallow] : split_deep(cleared, root_var)) {
        auto it = grouped.find(deep);
        if (it == grouped.end())
          it = grouped.emplace(deep, std::vector<Poly>(static_cast<std::size_t>(m), Poly(nv)))
                   .first;
        it->second[static_cast<std::size_t>(i)] = it->second[static_cast<std::size_t>(i)] + shallow;
      }
    }
    for (auto& [deep, polys] : grouped) {
      std::vector<Fraction> row(static_cast<std::size_t>(m), Fraction(nv));
      bool any = false;
      for (int i = 0; i < m; ++i) {
        row[static_cast<std::size_t>(i)] = Fraction::from_poly(polys[static_cast<std::size_t>(i)]);
        any = any || !row[static_cast<std::size_t>(i)].is_zero();
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  // The unknown coefficients live in K_root = Q(x_root); transpose the system
  // so rank m across the equations means only the trivial combination.
  return fraction_rank(std::move(rows), m) == m;
}

CrossingCheck crossing_independence_check(const Ctx& c, int e,
                                          const std::vector<PathElement>& a,
                                          const std::vector<SeriesTruncation>& b,
                                          int degree) {
  if (a.size() != b.size())
    fail("NonSquare", "crossing check needs matching family sizes");
  int re = c.q.edges[static_cast<std::size_t>(e)].dst;
  for (const auto& st : b)
    for (const auto& [p, co] : st.pe.terms())
      if (p.source(c.q) != re)
        fail("AnchorMismatch", "series is not left-anchored at the edge range");
  CrossingCheck out;
  PathElement sum;
  bool any_ae = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    PathElement ae = pe_mul(c, a[i], pe_edge(c, e));
    any_ae = any_ae || !ae.is_zero();
    sum = pe_add(c, sum, pe_mul(c, ae, b[i].pe, degree));
  }
  out.applicable = any_ae && k0_independent(c, b, degree);
  out.nonzero = !pe_truncate(c, sum, degree).is_zero();
  return out;
}

namespace {

PratCert cert_rec(const Ctx& c, const LinRep& x, int degree, int root_cls) {
  PratCert cert;
  cert.root_class = root_cls;
  // Vertices strictly below the current root class.
  std::vector<int> below;
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v) {
    int cl = c.poset.class_of[v];
    if (cl != root_cls && c.poset.less_eq(cl, root_cls)) below.push_back(static_cast<int>(v));
  }
  SupportSplit s = split_by_hereditary(c, x.b, below);
  cert.root_term = make_linrep(c, x.lambda, s.b1, x.rho);
  {
    int n = x.n;
    std::vector<PathElement> lam(static_cast<std::size_t>(2 * n), pe_zero());
    std::vector<PathElement> rho(static_cast<std::size_t>(2 * n), pe_zero());
    Mat m = Mat::zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      lam[static_cast<std::size_t>(i)] = x.lambda[static_cast<std::size_t>(i)];
      rho[static_cast<std::size_t>(n + i)] = x.rho[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = s.b1.at(i, j);
        m.at(i, n + j) = s.b2.at(i, j);
        m.at(n + i, n + j) = s.b2.at(i, j);
      }
    }
    cert.cross_term = make_linrep(c, std::move(lam), std::move(m), std::move(rho));
  }
  cert.has_cross = !rep_is_zero_mod(c, cert.cross_term, degree);
  if (!st_equal(expand(c, x, degree),
                st_add(c, expand(c, cert.root_term, degree),
                       expand(c, cert.cross_term, degree))))
    fail("Internal", "decomposition lost the represented series");

  for (int k : c.poset.lower_covers(root_cls)) {
    cert.lower_covers.push_back(k);
    std::vector<int> hk;
    for (std::size_t v = 0; v < c.q.vertices.size(); ++v)
      if (c.poset.less_eq(c.poset.class_of[v], k)) hk.push_back(static_cast<int>(v));
    std::vector<bool> in = vertex_mask(c, hk);
    std::vector<PathElement> lamH(static_cast<std::size_t>(x.n));
    std::vector<PathElement> rhoH(static_cast<std::size_t>(x.n));
    for (int i = 0; i < x.n; ++i) {
      lamH[static_cast<std::size_t>(i)] =
          pe_filter_source(c, x.lambda[static_cast<std::size_t>(i)], in, true);
      rhoH[static_cast<std::size_t>(i)] = pe_filter_range(
          c, pe_filter_source(c, x.rho[static_cast<std::size_t>(i)], in, true), in, true);
    }
    PathElement t1;
    for (int i = 0; i < x.n; ++i)
      t1 = pe_add(c, t1, pe_mul(c, lamH[static_cast<std::size_t>(i)],
                                rhoH[static_cast<std::size_t>(i)]));
    Mat inner = Mat::zero(x.n, x.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        inner.at(i, j) = pe_filter_range(
            c, pe_filter_source(c, x.b.at(i, j), in, true), in, true);
    std::vector<PathElement> lamp(static_cast<std::size_t>(x.n));
    for (int j = 0; j < x.n; ++j) {
      PathElement t;
      for (int i = 0; i < x.n; ++i)
        t = pe_add(c, t, pe_mul(c, lamH[static_cast<std::size_t>(i)], inner.at(i, j)));
      lamp[static_cast<std::size_t>(j)] = std::move(t);
    }
    LinRep branch = rep_add(c, rep_from_pe(c, t1),
                            make_linrep(c, std::move(lamp), inner, rhoH));
    if (!st_equal(expand(c, branch, degree), corner_formula(c, x, hk, degree)))
      fail("Internal", "branch corner disagrees with the corner formula");
    cert.branch_corners.push_back(branch);
    cert.branch_certs.push_back(
        std::make_shared<PratCert>(cert_rec(c, branch, degree, k)));
  }
  return cert;
}

} // namespace

PratCert prat_membership_certificate(const Ctx& c, const LinRep& x, int degree) {
  if (c.poset.root < 0) fail("NotATree", "poset has not been validated");
  return cert_rec(c, x, degree, c.poset.root);
}

} // namespace lpa
