#include "lpa/poly.hpp"

#include <algorithm>
#include <sstream>

namespace lpa {

namespace {

BigInt int_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

} // namespace

Poly Poly::constant(int nvars, BigInt c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_[Monomial(nvars, 0)] = std::move(c);
  return p;
}

Poly Poly::variable(int nvars, int idx) {
  Poly p(nvars);
  Monomial m(nvars, 0);
  m[idx] = 1;
  p.terms_[m] = 1;
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

BigInt Poly::constant_value() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? BigInt(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(mono_degree(terms_.rbegin()->first));
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return terms_.empty() ? -1 : d;
}

void Poly::add_term(const Monomial& m, const BigInt& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

const BigInt& Poly::leading_coeff() const {
  return terms_.rbegin()->second;
}

BigInt Poly::int_content() const {
  BigInt g = 0;
  for (auto& [m, c] : terms_) g = int_gcd(g, c);
  return g;
}

Poly Poly::divide_by_int(const BigInt& c) const {
  Poly r(nvars_);
  for (auto& [m, co] : terms_) r.terms_[m] = co / c;
  return r;
}

Poly Poly::eval_var_zero(int var) const {
  Poly r(nvars_);
  for (auto& [m, c] : terms_)
    if (m[var] == 0) r.terms_[m] = c;
  return r;
}

std::set<int> Poly::vars_used() const {
  std::set<int> s;
  for (auto& [m, c] : terms_)
    for (int i = 0; i < nvars_; ++i)
      if (m[i] > 0) s.insert(i);
  return s;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print from leading term down
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigInt a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool unit_mono = mono_degree(m) == 0;
    bool printed = false;
    if (a != 1 || unit_mono) {
      os << a;
      printed = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << names[i];
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// gcd machinery

namespace {

int main_var(const Poly& a, const Poly& b) {
  int v = -1;
  auto va = a.vars_used(), vb = b.vars_used();
  if (!va.empty()) v = std::max(v, *va.rbegin());
  if (!vb.empty()) v = std::max(v, *vb.rbegin());
  return v;
}

// View p as a univariate polynomial in `var` with Poly coefficients.
std::vector<Poly> to_univariate(const Poly& p, int var) {
  std::vector<Poly> coeffs(static_cast<std::size_t>(std::max(0, p.degree_in(var)) + 1),
                           Poly(p.nvars()));
  for (auto& [m, c] : p.terms()) {
    Monomial mm = m;
    auto d = mm[var];
    mm[var] = 0;
    coeffs[d].add_term(mm, c);
  }
  while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

Poly from_univariate(const std::vector<Poly>& coeffs, int var, int nvars) {
  Poly r(nvars);
  for (std::size_t d = 0; d < coeffs.size(); ++d)
    for (auto& [m, c] : coeffs[d].terms()) {
      Monomial mm = m;
      mm[var] = static_cast<std::uint32_t>(d);
      r.add_term(mm, c);
    }
  return r;
}

int udeg(const std::vector<Poly>& u) {
  for (int d = static_cast<int>(u.size()) - 1; d >= 0; --d)
    if (!u[d].is_zero()) return d;
  return -1;
}

// Exact pseudo-remainder lc(v)^(deg u - deg v + 1) * u mod v in one
// variable, coefficients in Poly.
std::vector<Poly> pseudo_rem(std::vector<Poly> u, const std::vector<Poly>& v) {
  int dv = udeg(v);
  const Poly& lv = v[dv];
  int du = udeg(u);
  int scale = du - dv + 1;
  while (du >= dv) {
    Poly lu = u[du];
    // u := lv*u - lu * x^(du-dv) * v
    for (auto& c : u) c = c * lv;
    --scale;
    for (int i = 0; i <= dv; ++i)
      u[du - dv + i] = u[du - dv + i] - lu * v[i];
    int nd = udeg(u);
    if (nd == du) fail("Internal", "pseudo_rem failed to reduce degree");
    du = nd;
    u.resize(std::max(du + 1, 1), Poly(lv.nvars()));
    if (du < 0) break;
  }
  for (; scale > 0; --scale)
    for (auto& c : u) c = c * lv;
  u.resize(std::max(du + 1, 1), Poly(lv.nvars()));
  return u;
}

Poly normalize_sign(Poly p) {
  if (!p.is_zero() && p.leading_coeff() < 0) return -p;
  return p;
}

} // namespace

Poly poly_div_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail("DivisionByZero", "exact division by zero polynomial");
  Poly rem = a;
  Poly quot(a.nvars());
  const auto& bl = *b.terms().rbegin();
  while (!rem.is_zero()) {
    const auto& rl = *rem.terms().rbegin();
    Monomial m(a.nvars());
    for (int i = 0; i < a.nvars(); ++i) {
      if (rl.first[i] < bl.first[i]) fail("InexactDivision", "monomial mismatch");
      m[i] = rl.first[i] - bl.first[i];
    }
    if (rl.second % bl.second != 0) fail("InexactDivision", "coefficient mismatch");
    BigInt c = rl.second / bl.second;
    Poly t(a.nvars());
    t.add_term(m, c);
    quot = quot + t;
    rem = rem - t * b;
  }
  return quot;
}

namespace {

Poly gcd_list(const std::vector<Poly>& ps) {
  Poly g(ps.empty() ? 0 : ps.front().nvars());
  for (auto& p : ps) {
    g = poly_gcd(g, p);
    if (g.is_constant() && g.constant_value() == 1) break;
  }
  return g;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  // gcd with a constant is an integer gcd with the other side's content
  if (a.is_constant())
    return Poly::constant(a.nvars(), int_gcd(a.constant_value(), b.int_content()));
  if (b.is_constant())
    return Poly::constant(a.nvars(), int_gcd(b.constant_value(), a.int_content()));
  int var = main_var(a, b);
  if (var < 0) {
    // both constants
    return Poly::constant(a.nvars(), int_gcd(a.constant_value(), b.constant_value()));
  }
  auto ua = to_univariate(a, var);
  auto ub = to_univariate(b, var);
  Poly ca = gcd_list(ua);
  Poly cb = gcd_list(ub);
  Poly cont = poly_gcd(ca, cb);
  auto prim = [&](std::vector<Poly> u, const Poly& c) {
    for (auto& p : u) p = p.is_zero() ? p : poly_div_exact(p, c);
    return u;
  };
  auto u1 = prim(ua, ca);
  auto u2 = prim(ub, cb);
  if (udeg(u1) < udeg(u2)) std::swap(u1, u2);
  // subresultant PRS: divide each pseudo-remainder by the known factor
  // g*h^delta instead of computing its content
  Poly g = Poly::constant(a.nvars(), 1);
  Poly h = Poly::constant(a.nvars(), 1);
  while (true) {
    int delta = udeg(u1) - udeg(u2);
    auto r = pseudo_rem(u1, u2);
    if (udeg(r) < 0) break;
    Poly div = g;
    for (int i = 0; i < delta; ++i) div = div * h;
    for (auto& p : r) p = p.is_zero() ? p : poly_div_exact(p, div);
    u1 = std::move(u2);
    u2 = std::move(r);
    g = u1[static_cast<std::size_t>(udeg(u1))];
    if (delta > 0) {
      Poly num = g;
      for (int i = 1; i < delta; ++i) num = num * g;
      Poly den = Poly::constant(a.nvars(), 1);
      for (int i = 1; i < delta; ++i) den = den * h;
      h = delta == 1 ? num : poly_div_exact(num, den);
    }
  }
  // primitive part of the last nonzero remainder
  Poly c2 = gcd_list(u2);
  for (auto& p : u2) p = p.is_zero() ? p : poly_div_exact(p, c2);
  Poly result = cont * from_univariate(u2, var, a.nvars());
  return normalize_sign(result);
}

// ---------------------------------------------------------------------------
// Fraction

Fraction::Fraction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail("DivisionByZero", "zero denominator");
  normalize();
}

void Fraction::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), 1);
    return;
  }
  if (den_.is_constant()) {
    // only an integer content to cancel
    BigInt g = int_gcd(num_.int_content(), den_.constant_value());
    if (g != 1) {
      num_ = num_.divide_by_int(g);
      den_ = den_.divide_by_int(g);
    }
  } else {
    Poly g = poly_gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value() == 1)) {
      num_ = poly_div_exact(num_, g);
      den_ = poly_div_exact(den_, g);
    }
  }
  if (den_.leading_coeff() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

namespace {

bool is_one(const Poly& p) { return p.is_constant() && p.constant_value() == 1; }

// a/b + sign * c/d with the denominators' common factor cancelled up front,
// keeping the gcd calls on small inputs when b and d share powers.
Fraction frac_add(const Poly& a, const Poly& b, const Poly& cc, const Poly& d,
                  bool negate) {
  if (is_one(b) && is_one(d))
    return Fraction(negate ? a - cc : a + cc, b);
  Poly g = poly_gcd(b, d);
  if (is_one(g)) return Fraction(negate ? a * d - cc * b : a * d + cc * b, b * d);
  Poly b1 = poly_div_exact(b, g);
  Poly d1 = poly_div_exact(d, g);
  Poly t = negate ? a * d1 - cc * b1 : a * d1 + cc * b1;
  return Fraction(std::move(t), b1 * d1 * g);
}

} // namespace

Fraction Fraction::operator+(const Fraction& o) const {
  return frac_add(num_, den_, o.num_, o.den_, false);
}

Fraction Fraction::operator-(const Fraction& o) const {
  return frac_add(num_, den_, o.num_, o.den_, true);
}

Fraction Fraction::operator*(const Fraction& o) const {
  if (is_zero() || o.is_zero()) return Fraction(nvars());
  // cross-cancel before multiplying so normalization sees reduced inputs
  Poly g1 = is_one(o.den_) ? Poly::constant(nvars(), 1) : poly_gcd(num_, o.den_);
  Poly g2 = is_one(den_) ? Poly::constant(nvars(), 1) : poly_gcd(o.num_, den_);
  const Poly& n1 = num_;
  const Poly& n2 = o.num_;
  Poly a = is_one(g1) ? n1 : poly_div_exact(n1, g1);
  Poly b = is_one(g2) ? n2 : poly_div_exact(n2, g2);
  Poly d1 = is_one(g2) ? den_ : poly_div_exact(den_, g2);
  Poly d2 = is_one(g1) ? o.den_ : poly_div_exact(o.den_, g1);
  return Fraction(a * b, d1 * d2);
}

Fraction Fraction::operator-() const { return Fraction(-num_, den_); }

Fraction Fraction::inverse() const {
  if (num_.is_zero()) fail("DivisionByZero", "inverse of zero");
  return Fraction(den_, num_);
}

bool Fraction::operator<(const Fraction& o) const {
  auto key = [](const Poly& p) {
    std::vector<std::pair<Monomial, BigInt>> v(p.terms().begin(), p.terms().end());
    return v;
  };
  auto ka = std::make_pair(key(num_), key(den_));
  auto kb = std::make_pair(key(o.num_), key(o.den_));
  return ka < kb;
}

std::set<int> Fraction::vars_used() const {
  auto s = num_.vars_used();
  auto t = den_.vars_used();
  s.insert(t.begin(), t.end());
  return s;
}

std::string Fraction::to_string(const std::vector<std::string>& names) const {
  std::string n = num_.to_string(names);
  if (den_.is_constant() && den_.constant_value() == 1) return n;
  bool n_atom = num_.terms().size() <= 1;
  bool d_atom = den_.terms().size() == 1 && den_.leading_coeff() == 1;
  std::string d = den_.to_string(names);
  std::string out = n_atom ? n : "(" + n + ")";
  out += "/";
  out += d_atom ? d : "(" + d + ")";
  return out;
}

} // namespace lpa
