#include "lpa/pathalg.hpp"

#include <sstream>

namespace lpa {

Ctx Ctx::make(const Quiver& quiver, const CondenseOptions& opts) {
  Ctx c;
  c.q = quiver;
  c.poset = condense(quiver, opts);
  assert_tree(c.poset);
  c.tower = FieldTower(c.poset);
  return c;
}

void PathElement::add(const Ctx& c, const Path& p, const FieldScalar& coeff) {
  if (coeff.is_zero()) return;
  int rc = c.cls_of_vertex(p.range(c.q));
  FieldScalar co = coeff;
  if (co.home != rc) {
    if (c.tower.home_leq(rc, co.home)) {
      co = fs_coerce(c.tower, co, rc);
    } else {
      // the coefficient claims a deeper/incomparable field; it must still be
      // expressible with the variables of K_[r(p)]
      for (int v : co.value.vars_used())
        if (!c.tower.var_allowed(v, rc))
          fail("CoefficientMembership",
               "coefficient uses variables outside K_[r(path)]");
      co.home = rc;
    }
  }
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, co);
  } else {
    it->second.value = it->second.value + co.value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldScalar PathElement::coeff(const Ctx& c, const Path& p) const {
  auto it = terms_.find(p);
  if (it != terms_.end()) return it->second;
  return FieldScalar{Fraction(c.tower.num_vars()),
                     c.cls_of_vertex(p.range(c.q))};
}

std::string PathElement::to_string(const Ctx& c) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, s] : terms_) {
    std::string cs = fs_to_string(c.tower, s);
    bool negated = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
        cs.find(" - ") == std::string::npos) {
      negated = true;
      cs = cs.substr(1);
    }
    if (first) {
      if (negated) os << "-";
    } else {
      os << (negated ? " - " : " + ");
    }
    first = false;
    bool atom = cs.find(' ') == std::string::npos;
    if (cs == "1") {
      os << p.to_string(c.q);
    } else {
      os << (atom ? cs : "(" + cs + ")") << "*" << p.to_string(c.q);
    }
  }
  return os.str();
}

PathElement pe_zero() { return PathElement(); }

PathElement pe_vertex(const Ctx& c, int v) {
  PathElement e;
  e.add(c, Path::trivial(v), scalar_int(c.tower, 1));
  return e;
}

PathElement pe_edge(const Ctx& c, int e) {
  PathElement r;
  r.add(c, Path::edge(e), scalar_int(c.tower, 1));
  return r;
}

PathElement pe_path(const Ctx& c, const Path& p) {
  PathElement r;
  r.add(c, p, scalar_int(c.tower, 1));
  return r;
}

PathElement pe_unit(const Ctx& c) {
  PathElement r;
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v)
    r.add(c, Path::trivial(static_cast<int>(v)), scalar_int(c.tower, 1));
  return r;
}

PathElement pe_scale(const Ctx& c, const FieldScalar& s, const PathElement& a) {
  PathElement r;
  for (auto& [p, co] : a.terms())
    r.add(c, p, FieldScalar{s.value * co.value, co.home});
  return r;
}

PathElement pe_add(const Ctx& c, const PathElement& a, const PathElement& b) {
  PathElement r = a;
  for (auto& [p, co] : b.terms()) r.add(c, p, co);
  return r;
}

PathElement pe_sub(const Ctx& c, const PathElement& a, const PathElement& b) {
  PathElement r = a;
  for (auto& [p, co] : b.terms()) r.add(c, p, FieldScalar{-co.value, co.home});
  return r;
}

PathElement pe_neg(const Ctx& c, const PathElement& a) {
  return pe_sub(c, pe_zero(), a);
}

PathElement pe_mul(const Ctx& c, const PathElement& a, const PathElement& b,
                   int truncate) {
  PathElement r;
  for (auto& [pa, ca] : a.terms())
    for (auto& [pb, cb] : b.terms()) {
      if (!pa.composable(c.q, pb)) continue;
      if (truncate >= 0 && pa.length() + pb.length() > truncate) continue;
      r.add(c, pa.then(c.q, pb), FieldScalar{ca.value * cb.value, cb.home});
    }
  return r;
}

PathElement pe_truncate(const Ctx& c, const PathElement& a, int degree) {
  PathElement r;
  for (auto& [p, co] : a.terms())
    if (p.length() <= degree) r.add(c, p, co);
  return r;
}

bool pe_equal(const PathElement& a, const PathElement& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || ia->second.value != ib->second.value)
      return false;
  }
  return ia == a.terms().end() && ib == b.terms().end();
}

PathElement pe_filter_range(const Ctx& c, const PathElement& a,
                            const std::vector<bool>& in_set, bool keep_inside) {
  PathElement r;
  for (auto& [p, co] : a.terms())
    if (in_set[p.range(c.q)] == keep_inside) r.add(c, p, co);
  return r;
}

PathElement pe_filter_source(const Ctx& c, const PathElement& a,
                             const std::vector<bool>& in_set, bool keep_inside) {
  PathElement r;
  for (auto& [p, co] : a.terms())
    if (in_set[p.source(c.q)] == keep_inside) r.add(c, p, co);
  return r;
}

SeriesTruncation st_add(const Ctx& c, const SeriesTruncation& a,
                        const SeriesTruncation& b) {
  int d = std::min(a.degree, b.degree);
  return SeriesTruncation{
      pe_truncate(c, pe_add(c, a.pe, b.pe), d), d};
}

SeriesTruncation st_mul(const Ctx& c, const SeriesTruncation& a,
                        const SeriesTruncation& b) {
  int d = std::min(a.degree, b.degree);
  return SeriesTruncation{pe_mul(c, a.pe, b.pe, d), d};
}

bool st_equal(const SeriesTruncation& a, const SeriesTruncation& b) {
  int d = std::min(a.degree, b.degree);
  auto trunc_terms = [&](const PathElement& pe) {
    std::map<Path, Fraction> m;
    for (auto& [p, co] : pe.terms())
      if (p.length() <= d) m.emplace(p, co.value);
    return m;
  };
  return trunc_terms(a.pe) == trunc_terms(b.pe);
}

AugValue augment(const Ctx& c, const PathElement& a) {
  AugValue r;
  for (auto& [p, co] : a.terms())
    if (p.is_trivial()) r.at.emplace(p.anchor, co);
  return r;
}

PathElement aug_to_pe(const Ctx& c, const AugValue& a) {
  PathElement r;
  for (auto& [v, s] : a.at) r.add(c, Path::trivial(v), s);
  return r;
}

Mat mat_identity(const Ctx& c, int n, const std::optional<std::vector<int>>& tags) {
  Mat m = Mat::zero(n, n);
  m.tags = tags;
  for (int i = 0; i < n; ++i)
    m.at(i, i) = tags ? pe_vertex(c, (*tags)[i]) : pe_unit(c);
  return m;
}

Mat mat_add(const Ctx& c, const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.rows, x.cols);
  r.tags = x.tags;
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = pe_add(c, x.a[i], y.a[i]);
  return r;
}

Mat mat_sub(const Ctx& c, const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.rows, x.cols);
  r.tags = x.tags;
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = pe_sub(c, x.a[i], y.a[i]);
  return r;
}

Mat mat_mul(const Ctx& c, const Mat& x, const Mat& y, int truncate) {
  if (x.cols != y.rows) fail("Internal", "matrix shape mismatch");
  Mat r = Mat::zero(x.rows, y.cols);
  r.tags = x.tags;
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < y.cols; ++j) {
      PathElement s;
      for (int k = 0; k < x.cols; ++k)
        s = pe_add(c, s, pe_mul(c, x.at(i, k), y.at(k, j), truncate));
      r.at(i, j) = s;
    }
  return r;
}

bool mat_is_zero(const Mat& x) {
  for (auto& e : x.a)
    if (!e.is_zero()) return false;
  return true;
}

bool mat_equal(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!pe_equal(x.a[i], y.a[i])) return false;
  return true;
}

Mat mat_truncate(const Ctx& c, const Mat& x, int degree) {
  Mat r = Mat::zero(x.rows, x.cols);
  r.tags = x.tags;
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = pe_truncate(c, x.a[i], degree);
  return r;
}

namespace {

// The v-component of eps(M) as a dense fraction matrix.
std::vector<std::vector<Fraction>> eps_component(const Ctx& c, const Mat& m, int v) {
  std::vector<std::vector<Fraction>> e(
      m.rows, std::vector<Fraction>(m.cols, Fraction(c.tower.num_vars())));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      auto it = m.at(i, j).terms().find(Path::trivial(v));
      if (it != m.at(i, j).terms().end()) e[i][j] = it->second.value;
    }
  return e;
}

// Gaussian elimination; returns the inverse, or nullopt when singular.
std::optional<std::vector<std::vector<Fraction>>> frac_inverse(
    int nvars, std::vector<std::vector<Fraction>> a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Fraction>> inv(n, std::vector<Fraction>(n, Fraction(nvars)));
  for (int i = 0; i < n; ++i) inv[i][i] = Fraction::from_int(nvars, 1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Fraction d = a[col][col].inverse();
    for (int j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * d;
      inv[col][j] = inv[col][j] * d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Fraction f = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

// Indices participating for vertex v (all of them without tags).
std::vector<int> indices_for_vertex(const Mat& m, int v) {
  std::vector<int> idx;
  for (int i = 0; i < m.rows; ++i)
    if (!m.tags || (*m.tags)[i] == v) idx.push_back(i);
  return idx;
}

} // namespace

bool is_invertible(const Ctx& c, const Mat& m) {
  if (m.rows != m.cols) fail("NonSquare", "is_invertible requires a square matrix");
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v) {
    auto idx = indices_for_vertex(m, static_cast<int>(v));
    if (idx.empty()) continue;
    auto full = eps_component(c, m, static_cast<int>(v));
    std::vector<std::vector<Fraction>> sub(
        idx.size(), std::vector<Fraction>(idx.size(), Fraction(c.tower.num_vars())));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = full[idx[i]][idx[j]];
    if (!frac_inverse(c.tower.num_vars(), sub)) return false;
  }
  return true;
}

Mat invert_eps_unit(const Ctx& c, const Mat& m, int degree) {
  if (m.rows != m.cols) fail("NonSquare", "inversion requires a square matrix");
  if (!is_invertible(c, m)) fail("NotInvertible", "epsilon(M) is not invertible");
  int n = m.rows;

  // eps(M)^{-1} as a matrix over E (vertex-supported entries)
  Mat einv = Mat::zero(n, n);
  einv.tags = m.tags;
  for (std::size_t v = 0; v < c.q.vertices.size(); ++v) {
    auto idx = indices_for_vertex(m, static_cast<int>(v));
    if (idx.empty()) continue;
    auto full = eps_component(c, m, static_cast<int>(v));
    std::vector<std::vector<Fraction>> sub(
        idx.size(), std::vector<Fraction>(idx.size(), Fraction(c.tower.num_vars())));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = full[idx[i]][idx[j]];
    auto inv = frac_inverse(c.tower.num_vars(), sub);
    int cls = c.cls_of_vertex(static_cast<int>(v));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (!(*inv)[i][j].is_zero())
          einv.at(idx[i], idx[j])
              .add(c, Path::trivial(static_cast<int>(v)),
                   FieldScalar{(*inv)[i][j], cls});
  }

  Mat id = mat_identity(c, n, m.tags);
  // B := I - eps(M)^{-1} M  has eps(B) = 0
  Mat b = mat_sub(c, id, mat_mul(c, einv, m, degree));
  // Sum_{k<=degree} B^k
  Mat acc = id;
  Mat powk = id;
  for (int k = 1; k <= degree; ++k) {
    powk = mat_mul(c, powk, b, degree);
    if (mat_is_zero(powk)) break;
    acc = mat_add(c, acc, powk);
  }
  Mat result = mat_mul(c, acc, einv, degree);
  // verify both products
  Mat p1 = mat_truncate(c, mat_mul(c, m, result, degree), degree);
  Mat p2 = mat_truncate(c, mat_mul(c, result, m, degree), degree);
  Mat idt = mat_truncate(c, id, degree);
  if (!mat_equal(p1, idt) || !mat_equal(p2, idt))
    fail("NotInvertible", "truncated inverse failed the product check");
  return result;
}

PathElement transduce(const Ctx& c, int e, const PathElement& a) {
  PathElement r;
  for (auto& [p, co] : a.terms()) {
    if (p.is_trivial() || p.edges.front() != e) continue;
    Path tail;
    if (p.length() == 1) {
      tail = Path::trivial(c.q.edges[e].dst);
    } else {
      tail.edges.assign(p.edges.begin() + 1, p.edges.end());
    }
    r.add(c, tail, co);
  }
  return r;
}

SeriesTruncation transduce(const Ctx& c, int e, const SeriesTruncation& a) {
  return SeriesTruncation{transduce(c, e, a.pe), a.degree - 1};
}

PathElement tau(const Ctx& c, int e, const PathElement& a) {
  int sv = c.q.edges[e].src, rv = c.q.edges[e].dst;
  auto it = a.terms().find(Path::trivial(sv));
  PathElement r;
  if (it != a.terms().end())
    r.add(c, Path::trivial(rv),
          FieldScalar{it->second.value, c.cls_of_vertex(rv)});
  return r;
}

bool check_right_derivation(const Ctx& c, int e, const PathElement& r,
                            const PathElement& s) {
  PathElement lhs = transduce(c, e, pe_mul(c, r, s));
  PathElement rhs = pe_add(c, pe_mul(c, transduce(c, e, r), s),
                           pe_mul(c, tau(c, e, r), transduce(c, e, s)));
  return pe_equal(lhs, rhs);
}

PathElement strip_trailing(const Ctx& c, int e, const PathElement& a) {
  PathElement r;
  int sv = c.q.edges[e].src;
  int target_cls = c.cls_of_vertex(sv);
  for (auto& [p, co] : a.terms()) {
    if (p.is_trivial() || p.edges.back() != e) continue;
    Path head;
    if (p.length() == 1) {
      head = Path::trivial(sv);
    } else {
      head.edges.assign(p.edges.begin(), p.edges.end() - 1);
    }
    for (int v : co.value.vars_used())
      if (!c.tower.var_allowed(v, target_cls))
        fail("CoefficientMembership",
             "right strip would move a coefficient above its field");
    r.add(c, head, FieldScalar{co.value, target_cls});
  }
  return r;
}

PathElement tau_mirror(const Ctx& c, int e, const PathElement& a) {
  int sv = c.q.edges[e].src, rv = c.q.edges[e].dst;
  auto it = a.terms().find(Path::trivial(rv));
  PathElement r;
  if (it != a.terms().end()) {
    int cls = c.cls_of_vertex(sv);
    for (int v : it->second.value.vars_used())
      if (!c.tower.var_allowed(v, cls))
        fail("CoefficientMembership",
             "tau_mirror would move a coefficient above its field");
    r.add(c, Path::trivial(sv), FieldScalar{it->second.value, cls});
  }
  return r;
}

} // namespace lpa
