#include "lpa/scalars.hpp"

namespace lpa {

FieldTower::FieldTower(const ComponentPoset& poset) : poset_(poset) {
  if (poset_.root < 0) fail("Internal", "FieldTower requires a validated tree");
  int m = poset_.num_classes();
  var_names_.resize(m);
  allowed_.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) {
    var_names_[i] = "x_" + poset_.class_names[i];
    for (int j : poset_.chain_to_root(i)) allowed_[i][j] = true;
  }
}

bool FieldTower::var_allowed(int var, int home) const {
  if (home == kAmalgam) return true;
  return allowed_[home][var];
}

bool FieldTower::comparable(int a, int b) const {
  if (a == b || a == kAmalgam || b == kAmalgam) return true;
  return poset_.comparable(a, b);
}

bool FieldTower::home_leq(int a, int b) const {
  if (a == b || a == kAmalgam) return true;
  if (b == kAmalgam) return false;
  return poset_.less_eq(a, b);
}

int FieldTower::deeper(int a, int b) const {
  if (home_leq(a, b)) return a;
  if (home_leq(b, a)) return b;
  fail("IncomparableHomes",
       "classes '" + poset_.class_names[a] + "' and '" + poset_.class_names[b] +
           "' are incomparable");
}

FieldScalar make_scalar(const FieldTower& t, Fraction f, int home) {
  for (int v : f.vars_used())
    if (!t.var_allowed(v, home))
      fail("NotASubfield", "variable " + t.var_names()[v] +
                               " not available in the declared home field");
  return FieldScalar{std::move(f), home};
}

FieldScalar scalar_int(const FieldTower& t, long v) {
  return FieldScalar{Fraction::from_int(t.num_vars(), BigInt(v)), t.poset().root};
}

FieldScalar scalar_var(const FieldTower& t, int cls) {
  return FieldScalar{Fraction::from_poly(Poly::variable(t.num_vars(), cls)), cls};
}

FieldScalar fs_add(const FieldTower& t, const FieldScalar& a, const FieldScalar& b) {
  return FieldScalar{a.value + b.value, t.deeper(a.home, b.home)};
}

FieldScalar fs_sub(const FieldTower& t, const FieldScalar& a, const FieldScalar& b) {
  return FieldScalar{a.value - b.value, t.deeper(a.home, b.home)};
}

FieldScalar fs_mul(const FieldTower& t, const FieldScalar& a, const FieldScalar& b) {
  return FieldScalar{a.value * b.value, t.deeper(a.home, b.home)};
}

FieldScalar fs_neg(const FieldTower&, const FieldScalar& a) {
  return FieldScalar{-a.value, a.home};
}

FieldScalar fs_inv(const FieldTower&, const FieldScalar& a) {
  return FieldScalar{a.value.inverse(), a.home};
}

FieldScalar fs_coerce(const FieldTower& t, const FieldScalar& a, int target) {
  if (!t.home_leq(target, a.home))
    fail("NotASubfield",
         "cannot coerce: target class is not below the scalar's home");
  FieldScalar r = a;
  r.home = target;
  return r;
}

int tightest_home(const FieldTower& t, const Fraction& f, int hint) {
  auto vars = f.vars_used();
  if (hint == kAmalgam) return kAmalgam;
  // walk the chain from root down to hint, take the shallowest class whose
  // variable set covers the fraction; fall back to amalgam
  auto chain = t.poset().chain_to_root(hint); // ascending: hint .. root
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    bool ok = true;
    for (int v : vars)
      if (!t.var_allowed(v, *it)) {
        ok = false;
        break;
      }
    if (ok) return *it;
  }
  return kAmalgam;
}

bool fs_equal(const FieldScalar& a, const FieldScalar& b) {
  return a.value == b.value;
}

std::string fs_to_string(const FieldTower& t, const FieldScalar& a) {
  return a.value.to_string(t.var_names());
}

Amalgamation amalgamate(const FieldTower& t) { return Amalgamation{&t}; }

} // namespace lpa
