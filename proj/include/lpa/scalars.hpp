#ifndef LPA_SCALARS_HPP
#define LPA_SCALARS_HPP

#include <string>
#include <vector>

#include "lpa/poly.hpp"
#include "lpa/quiver.hpp"

namespace lpa {

// Home class of scalars living in the common amalgamated field (all
// variables allowed). Sits below every class of the tree.
inline constexpr int kAmalgam = -1;

// The poset of fields over a tree-shaped ComponentPoset: one variable per
// class, K_i = Q(x_j : j on the chain [i, root]). Deeper classes see more
// variables, so K_i <= K_j literally as variable-set inclusion when j <= i.
class FieldTower {
public:
  FieldTower() = default;
  explicit FieldTower(const ComponentPoset& poset);

  int num_vars() const { return static_cast<int>(var_names_.size()); }
  const std::vector<std::string>& var_names() const { return var_names_; }
  const ComponentPoset& poset() const { return poset_; }

  bool var_allowed(int var, int home) const; // home may be kAmalgam
  bool comparable(int a, int b) const;
  bool home_leq(int a, int b) const; // a deeper-or-equal (a <= b in the poset)
  int deeper(int a, int b) const;    // Error("IncomparableHomes") if incomparable

private:
  ComponentPoset poset_;
  std::vector<std::string> var_names_; // one per class, index = class index
  std::vector<std::vector<bool>> allowed_; // per class, allowed variable flags
};

// An exact element of K_home: reduced fraction whose variables all lie on the
// chain [home, root].
struct FieldScalar {
  Fraction value;
  int home = kAmalgam;

  bool is_zero() const { return value.is_zero(); }
};

FieldScalar make_scalar(const FieldTower& t, Fraction f, int home);
FieldScalar scalar_int(const FieldTower& t, long v); // home = root
FieldScalar scalar_var(const FieldTower& t, int cls); // x_cls, home = cls

FieldScalar fs_add(const FieldTower& t, const FieldScalar& a, const FieldScalar& b);
FieldScalar fs_sub(const FieldTower& t, const FieldScalar& a, const FieldScalar& b);
FieldScalar fs_mul(const FieldTower& t, const FieldScalar& a, const FieldScalar& b);
FieldScalar fs_neg(const FieldTower& t, const FieldScalar& a);
FieldScalar fs_inv(const FieldTower& t, const FieldScalar& a); // Error("DivisionByZero")

// Reassign the home class downward; Error("NotASubfield") unless i <= home.
FieldScalar fs_coerce(const FieldTower& t, const FieldScalar& a, int target);

// Deepest class on the chain [hint, root] (or amalgam) that can host the
// value; used to re-home results of normal-form rewriting.
int tightest_home(const FieldTower& t, const Fraction& f, int hint);

bool fs_equal(const FieldScalar& a, const FieldScalar& b);
std::string fs_to_string(const FieldTower& t, const FieldScalar& a);

// Lemma-style amalgamation: the common field is Q(all variables); each
// embedding is coercion into kAmalgam, and restrictions agree along the tree.
struct Amalgamation {
  const FieldTower* tower;
  FieldScalar embed(const FieldScalar& s) const {
    FieldScalar r = s;
    r.home = kAmalgam;
    return r;
  }
};
Amalgamation amalgamate(const FieldTower& t);

} // namespace lpa

#endif
