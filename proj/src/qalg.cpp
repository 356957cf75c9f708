#include "lpa/qalg.hpp"

#include <algorithm>
#include <numeric>

namespace lpa {

namespace {

std::vector<bool> one_vertex(const Ctx& c, int v) {
  std::vector<bool> in(c.q.vertices.size(), false);
  in[static_cast<std::size_t>(v)] = true;
  return in;
}

Path drop_first(const Quiver& q, const Path& p) {
  Path out;
  out.edges.assign(p.edges.begin() + 1, p.edges.end());
  out.anchor = out.edges.empty() ? q.edges[static_cast<std::size_t>(p.edges.front())].dst : -1;
  return out;
}

Path drop_last(const Quiver& q, const Path& p) {
  Path out = p;
  int e = out.edges.back();
  out.edges.pop_back();
  if (out.edges.empty()) out.anchor = q.edges[static_cast<std::size_t>(e)].src;
  return out;
}

bool rho_all_zero(const LinRep& r) {
  for (const auto& pe : r.rho)
    if (!pe.is_zero()) return false;
  return true;
}

} // namespace

LinRep transduce_rep(const Ctx& c, int e, const LinRep& r) {
  // delta(a) = [delta(lambda) + tau(lambda) delta(B)] (I-B)^{-1} rho
  //            + tau(lambda) delta(rho)
  std::vector<PathElement> taul(static_cast<std::size_t>(r.n));
  for (int i = 0; i < r.n; ++i)
    taul[static_cast<std::size_t>(i)] = tau(c, e, r.lambda[static_cast<std::size_t>(i)]);
  std::vector<PathElement> lam(static_cast<std::size_t>(r.n));
  for (int j = 0; j < r.n; ++j) {
    PathElement t = transduce(c, e, r.lambda[static_cast<std::size_t>(j)]);
    for (int i = 0; i < r.n; ++i)
      t = pe_add(c, t, pe_mul(c, taul[static_cast<std::size_t>(i)],
                              transduce(c, e, r.b.at(i, j))));
    lam[static_cast<std::size_t>(j)] = std::move(t);
  }
  PathElement con;
  for (int i = 0; i < r.n; ++i)
    con = pe_add(c, con, pe_mul(c, taul[static_cast<std::size_t>(i)],
                                transduce(c, e, r.rho[static_cast<std::size_t>(i)])));
  LinRep main = make_linrep(c, std::move(lam), r.b, r.rho);
  return con.is_zero() ? main : rep_add(c, main, rep_from_pe(c, con));
}

LinRep tau_rep(const Ctx& c, int e, const LinRep& r) {
  int s = c.q.edges[static_cast<std::size_t>(e)].src;
  int rv = c.q.edges[static_cast<std::size_t>(e)].dst;
  FieldScalar co = expand(c, r, 0).pe.coeff(c, Path::trivial(s));
  PathElement pe;
  if (!co.is_zero()) pe = pe_scale(c, co, pe_vertex(c, rv));
  return rep_from_pe(c, pe);
}

LinRep strip_rep(const Ctx& c, int e, const LinRep& r) {
  // strip(a) = lambda (I-B)^{-1} [strip(rho) + strip(B) tau'(rho)]
  //            + strip(lambda) tau'(rho)
  std::vector<PathElement> taur(static_cast<std::size_t>(r.n));
  for (int i = 0; i < r.n; ++i)
    taur[static_cast<std::size_t>(i)] = tau_mirror(c, e, r.rho[static_cast<std::size_t>(i)]);
  std::vector<PathElement> rho(static_cast<std::size_t>(r.n));
  for (int i = 0; i < r.n; ++i) {
    PathElement t = strip_trailing(c, e, r.rho[static_cast<std::size_t>(i)]);
    for (int j = 0; j < r.n; ++j)
      t = pe_add(c, t, pe_mul(c, strip_trailing(c, e, r.b.at(i, j)),
                              taur[static_cast<std::size_t>(j)]));
    rho[static_cast<std::size_t>(i)] = std::move(t);
  }
  PathElement con;
  for (int i = 0; i < r.n; ++i)
    con = pe_add(c, con, pe_mul(c, strip_trailing(c, e, r.lambda[static_cast<std::size_t>(i)]),
                                taur[static_cast<std::size_t>(i)]));
  LinRep main = make_linrep(c, r.lambda, r.b, std::move(rho));
  return con.is_zero() ? main : rep_add(c, main, rep_from_pe(c, con));
}

QElement q_zero() { return {}; }

QElement q_from_rep(const Ctx& c, const LinRep& a) {
  QElement x;
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v) {
    LinRep f = rep_corner_right(c, a, one_vertex(c, static_cast<int>(v)));
    if (rho_all_zero(f)) continue;
    x.terms.emplace(Path::trivial(static_cast<int>(v)), std::move(f));
  }
  return x;
}

QElement q_vertex(const Ctx& c, int v) {
  QElement x;
  x.terms.emplace(Path::trivial(v), rep_from_pe(c, pe_vertex(c, v)));
  return x;
}

QElement q_edge(const Ctx& c, int e) {
  QElement x;
  int r = c.q.edges[static_cast<std::size_t>(e)].dst;
  x.terms.emplace(Path::trivial(r), rep_from_pe(c, pe_edge(c, e)));
  return x;
}

QElement q_ghost(const Ctx& c, int e) {
  QElement x;
  int r = c.q.edges[static_cast<std::size_t>(e)].dst;
  x.terms.emplace(Path::edge(e), rep_from_pe(c, pe_vertex(c, r)));
  return x;
}

QElement q_from_leavitt(const Ctx& c, const LeavittElement& a) {
  QElement x;
  for (const auto& [k, co] : a.terms()) {
    PathElement pe;
    pe.add(c, k.first, co);
    LinRep r = rep_from_pe(c, pe);
    auto it = x.terms.find(k.second);
    if (it == x.terms.end())
      x.terms.emplace(k.second, std::move(r));
    else
      it->second = rep_add(c, it->second, r);
  }
  return x;
}

QElement q_add(const Ctx& c, const QElement& x, const QElement& y) {
  QElement out = x;
  for (const auto& [mu, r] : y.terms) {
    auto it = out.terms.find(mu);
    if (it == out.terms.end())
      out.terms.emplace(mu, r);
    else
      it->second = rep_add(c, it->second, r);
  }
  return out;
}

QElement q_scale(const Ctx& c, const FieldScalar& s, const QElement& x) {
  QElement out;
  for (const auto& [mu, r] : x.terms) out.terms.emplace(mu, rep_scale(c, s, r));
  return out;
}

QElement q_sub(const Ctx& c, const QElement& x, const QElement& y) {
  return q_add(c, x, q_scale(c, scalar_int(c.tower, -1), y));
}

namespace {

void q_accum(const Ctx& c, QElement& acc, const Path& mu, const LinRep& r) {
  auto it = acc.terms.find(mu);
  if (it == acc.terms.end())
    acc.terms.emplace(mu, r);
  else
    it->second = rep_add(c, it->second, r);
}

// mu* b as a QElement, by the commutation rule e* b = tau_e(b) e* + delta_e(b).
QElement ghost_push(const Ctx& c, const Path& mu, const LinRep& b) {
  if (mu.is_trivial())
    return q_from_rep(c, rep_corner_left(c, b, one_vertex(c, mu.anchor)));
  int e = mu.edges.front();
  Path mu2 = drop_first(c.q, mu);
  QElement out = ghost_push(c, mu2, transduce_rep(c, e, b));
  LinRep t = tau_rep(c, e, b);
  if (!rep_is_zero_mod(c, t, 0)) {
    QElement g1 = ghost_push(c, mu2, t);
    for (const auto& [kappa, r] : g1.terms) {
      if (c.q.edges[static_cast<std::size_t>(e)].dst != kappa.source(c.q)) continue;
      q_accum(c, out, Path::edge(e).then(c.q, kappa), r);
    }
  }
  return out;
}

} // namespace

QElement q_normalize(const Ctx& c, const QElement& x, int degree) {
  std::map<Path, LinRep> terms = x.terms;
  while (true) {
    // Fire the longest reducible ghost keys first; the rewrite only feeds
    // strictly shorter keys or same-length keys with a non-designated tail.
    int best = -1;
    std::vector<Path> cand;
    for (const auto& [mu, a] : terms) {
      if (mu.is_trivial()) continue;
      int e0 = mu.edges.back();
      int w = c.q.edges[static_cast<std::size_t>(e0)].src;
      if (designated_edge(c, w) != e0) continue;
      if (mu.length() < best) continue;
      LinRep b = strip_rep(c, e0, a);
      if (rep_is_zero_mod(c, b, degree)) continue;
      if (mu.length() > best) {
        best = mu.length();
        cand.clear();
      }
      cand.push_back(mu);
    }
    if (cand.empty()) break;
    for (const Path& mu : cand) {
      auto it = terms.find(mu);
      if (it == terms.end()) continue;
      int e0 = mu.edges.back();
      int w = c.q.edges[static_cast<std::size_t>(e0)].src;
      LinRep a = it->second;
      LinRep b = strip_rep(c, e0, a);
      if (rep_is_zero_mod(c, b, degree)) continue;
      LinRep rest = rep_sub(c, a, rep_mul(c, b, rep_from_pe(c, pe_edge(c, e0))));
      terms.erase(it);
      if (!rep_is_zero_mod(c, rest, degree)) {
        auto jt = terms.find(mu);
        if (jt == terms.end())
          terms.emplace(mu, rest);
        else
          jt->second = rep_add(c, jt->second, rest);
      }
      Path mup = drop_last(c.q, mu);
      auto put = [&](const Path& k, const LinRep& r) {
        auto kt = terms.find(k);
        if (kt == terms.end())
          terms.emplace(k, r);
        else
          kt->second = rep_add(c, kt->second, r);
      };
      put(mup, b);
      for (int e : c.q.out_edges(w)) {
        if (e == e0) continue;
        put(mup.then(c.q, Path::edge(e)),
            rep_scale(c, scalar_int(c.tower, -1),
                      rep_mul(c, b, rep_from_pe(c, pe_edge(c, e)))));
      }
    }
  }
  QElement out;
  for (auto& [mu, r] : terms)
    if (!rep_is_zero_mod(c, r, degree)) out.terms.emplace(mu, std::move(r));
  return out;
}

QElement q_mul(const Ctx& c, const QElement& x, const QElement& y, int degree) {
  QElement acc;
  for (const auto& [mu, a] : x.terms)
    for (const auto& [nu, b] : y.terms) {
      QElement g = ghost_push(c, mu, b);
      for (const auto& [kappa, cr] : g.terms) {
        Path key;
        if (nu.is_trivial()) {
          if (nu.anchor != kappa.source(c.q)) continue;
          key = kappa;
        } else {
          if (nu.range(c.q) != kappa.source(c.q)) continue;
          key = nu.then(c.q, kappa);
        }
        q_accum(c, acc, key, rep_mul(c, a, cr));
      }
    }
  return q_normalize(c, acc, degree);
}

bool q_equal(const Ctx& c, const QElement& x, const QElement& y, int degree) {
  QElement a = q_normalize(c, x, degree);
  QElement b = q_normalize(c, y, degree);
  std::set<Path> keys;
  for (const auto& [mu, r] : a.terms) keys.insert(mu);
  for (const auto& [mu, r] : b.terms) keys.insert(mu);
  for (const Path& mu : keys) {
    auto ia = a.terms.find(mu);
    auto ib = b.terms.find(mu);
    SeriesTruncation sa = ia == a.terms.end()
                              ? SeriesTruncation{pe_zero(), degree}
                              : expand(c, ia->second, degree);
    SeriesTruncation sb = ib == b.terms.end()
                              ? SeriesTruncation{pe_zero(), degree}
                              : expand(c, ib->second, degree);
    if (!st_equal(sa, sb)) return false;
  }
  return true;
}

std::string q_to_string(const Ctx& c, const QElement& x, int degree) {
  if (x.terms.empty()) return "0";
  std::string out;
  for (const auto& [mu, r] : x.terms) {
    if (!out.empty()) out += " + ";
    out += "[" + expand(c, r, degree).pe.to_string(c) + "]";
    if (!mu.is_trivial()) out += " (" + mu.to_string(c.q) + ")*";
  }
  return out;
}

LinRep invert_free_polynomial(const Ctx& c, int v, const PathElement& p, int degree) {
  for (const auto& [path, co] : p.terms())
    if (path.source(c.q) != v || path.range(c.q) != v)
      fail("MismatchedCorner", "polynomial is not supported on the corner");
  FieldScalar c0 = p.coeff(c, Path::trivial(v));
  if (c0.is_zero()) fail("ZeroConstantTerm", "no inverse: constant term vanishes");
  PathElement q = pe_sub(c, pe_vertex(c, v), pe_scale(c, fs_inv(c.tower, c0), p));
  Mat b = Mat::zero(1, 1);
  b.at(0, 0) = q;
  LinRep inv = make_linrep(c, {pe_scale(c, fs_inv(c.tower, c0), pe_vertex(c, v))},
                           std::move(b), {pe_vertex(c, v)});
  SeriesTruncation s = expand(c, inv, degree);
  SeriesTruncation want{pe_vertex(c, v), degree};
  if (!st_equal(SeriesTruncation{pe_mul(c, p, s.pe, degree), degree}, want) ||
      !st_equal(SeriesTruncation{pe_mul(c, s.pe, p, degree), degree}, want))
    fail("NotInvertible", "inverse check failed");
  return inv;
}

namespace {

SigmaPrime sp_rec(const Ctx& c, const Mat& a, int root_cls) {
  SigmaPrime d;
  d.root_class = root_cls;
  d.a0 = Mat::zero(a.rows, a.cols);
  d.b = Mat::zero(a.rows, a.cols);
  d.covers = c.poset.lower_covers(root_cls);
  for (int k : d.covers) d.ak.push_back(Mat::zero(a.rows, a.cols));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      for (const auto& [p, co] : a.at(i, j).terms()) {
        int cs = c.cls_of_vertex(p.source(c.q));
        int cr = c.cls_of_vertex(p.range(c.q));
        PathElement one;
        one.add(c, p, co);
        if (cs == root_cls && cr == root_cls)
          d.a0.at(i, j) = pe_add(c, d.a0.at(i, j), one);
        else if (cs == root_cls)
          d.b.at(i, j) = pe_add(c, d.b.at(i, j), one);
        else {
          bool placed = false;
          for (std::size_t k = 0; k < d.covers.size(); ++k)
            if (c.poset.less_eq(cs, d.covers[k])) {
              d.ak[k].at(i, j) = pe_add(c, d.ak[k].at(i, j), one);
              placed = true;
              break;
            }
          if (!placed) fail("Internal", "path source escapes the branch poset");
        }
      }
  // exact orthogonality
  Mat sum = d.b;
  for (const Mat& m : d.ak) sum = mat_add(c, sum, m);
  if (!mat_is_zero(mat_mul(c, sum, d.a0)) || !mat_is_zero(mat_mul(c, d.b, d.b)))
    fail("Internal", "decomposition lost orthogonality");
  Mat aksum = Mat::zero(a.rows, a.cols);
  for (const Mat& m : d.ak) aksum = mat_add(c, aksum, m);
  if (!mat_is_zero(mat_mul(c, aksum, d.b)))
    fail("Internal", "branch parts do not annihilate the crossing part");
  for (std::size_t i = 0; i < d.ak.size(); ++i)
    for (std::size_t j = 0; j < d.ak.size(); ++j)
      if (i != j && !mat_is_zero(mat_mul(c, d.ak[i], d.ak[j])))
        fail("Internal", "branches are not pairwise orthogonal");
  for (std::size_t k = 0; k < d.ak.size(); ++k)
    d.subs.push_back(std::make_shared<SigmaPrime>(sp_rec(c, d.ak[k], d.covers[k])));
  return d;
}

bool sp_check(const Ctx& c, const Mat& a, const SigmaPrime& d, int degree) {
  Mat id = mat_identity(c, a.rows);
  Mat cpart = d.b;
  Mat aksum = Mat::zero(a.rows, a.cols);
  for (const Mat& m : d.ak) aksum = mat_add(c, aksum, m);
  cpart = mat_add(c, cpart, aksum);
  Mat inva = invert_eps_unit(c, mat_sub(c, id, a), degree);
  Mat inv0 = invert_eps_unit(c, mat_sub(c, id, d.a0), degree);
  Mat invc = invert_eps_unit(c, mat_sub(c, id, cpart), degree);
  if (!mat_equal(mat_truncate(c, mat_mul(c, inv0, invc, degree), degree),
                 mat_truncate(c, inva, degree)))
    return false;
  Mat invb = invert_eps_unit(c, mat_sub(c, id, d.b), degree);
  if (!mat_equal(mat_truncate(c, invb, degree),
                 mat_truncate(c, mat_add(c, id, d.b), degree)))
    return false;
  Mat invs = invert_eps_unit(c, mat_sub(c, id, aksum), degree);
  if (!mat_equal(mat_truncate(c, mat_mul(c, invb, invs, degree), degree),
                 mat_truncate(c, invc, degree)))
    return false;
  Mat prod = id;
  for (const Mat& m : d.ak)
    prod = mat_mul(c, prod, invert_eps_unit(c, mat_sub(c, id, m), degree), degree);
  if (!mat_equal(mat_truncate(c, prod, degree), mat_truncate(c, invs, degree)))
    return false;
  for (std::size_t k = 0; k < d.subs.size(); ++k)
    if (!sp_check(c, d.ak[k], *d.subs[k], degree)) return false;
  return true;
}

} // namespace

SigmaPrime sigma_prime_decompose(const Ctx& c, const Mat& a) {
  if (a.rows != a.cols) fail("NonSquare", "decomposition needs a square matrix");
  for (const auto& pe : a.a)
    for (const auto& [p, co] : pe.terms())
      if (p.is_trivial())
        fail("BadAugmentation", "decomposition needs zero augmentation");
  if (c.poset.root < 0) fail("NotATree", "poset has not been validated");
  return sp_rec(c, a, c.poset.root);
}

bool check_sigma_prime_factorization(const Ctx& c, const Mat& a,
                                     const SigmaPrime& d, int degree) {
  return sp_check(c, a, d, degree);
}

DeterminantRemark determinant_remark_check(const Ctx& c, int cls, const Mat& a,
                                           int degree) {
  ClassRestriction res = restriction(c.q, c.poset, cls);
  if (res.vertices.size() != 1 || res.edges.size() != 1)
    fail("NotFreeLoopComponent", "component is not a single loop");
  int v = res.vertices[0];
  int loop = res.edges[0];
  if (c.q.edges[static_cast<std::size_t>(loop)].src != v ||
      c.q.edges[static_cast<std::size_t>(loop)].dst != v)
    fail("NotFreeLoopComponent", "component edge is not a loop");
  for (const auto& pe : a.a)
    for (const auto& [p, co] : pe.terms()) {
      if (p.is_trivial() && p.anchor == v)
        fail("BadAugmentation", "matrix must have zero augmentation");
      if (p.source(c.q) != v || p.range(c.q) != v)
        fail("MismatchedCorner", "entries must be loop polynomials");
      for (int e : p.edges)
        if (e != loop) fail("MismatchedCorner", "entries must be loop polynomials");
    }
  if (a.rows != a.cols) fail("NonSquare", "determinant needs a square matrix");
  int n = a.rows;
  Mat m = Mat::zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PathElement d0 = i == j ? pe_vertex(c, v) : pe_zero();
      m.at(i, j) = pe_sub(c, d0, a.at(i, j));
    }
  // Leibniz sum; entries commute (polynomials in one loop).
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  PathElement det;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    PathElement prod = pe_vertex(c, v);
    for (int i = 0; i < n && !prod.is_zero(); ++i)
      prod = pe_mul(c, prod, m.at(i, perm[static_cast<std::size_t>(i)]));
    if (inversions % 2) prod = pe_neg(c, prod);
    det = pe_add(c, det, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  FieldScalar c0 = det.coeff(c, Path::trivial(v));
  Fraction one = Fraction::from_int(c.tower.num_vars(), 1);
  if (!(c0.value == one))
    fail("Internal", "determinant constant term is not the vertex");
  DeterminantRemark out;
  out.det = det;
  out.inverse = invert_free_polynomial(c, v, det, degree);
  return out;
}

} // namespace lpa
