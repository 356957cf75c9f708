#ifndef LPA_POLY_HPP
#define LPA_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

using BigInt = boost::multiprecision::cpp_int;

// Exponent vector; all polynomials in one context share the variable count.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t mono_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (auto e : m) d += e;
  return d;
}

// Graded lexicographic, as a strict "less" comparator.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

// Sparse multivariate polynomial with exact integer coefficients.
class Poly {
public:
  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}
  static Poly constant(int nvars, BigInt c);
  static Poly variable(int nvars, int idx);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  BigInt constant_value() const; // the coefficient of the unit monomial

  int degree() const; // total degree, -1 for zero
  int degree_in(int var) const;
  const std::map<Monomial, BigInt, GradedLexLess>& terms() const { return terms_; }

  void add_term(const Monomial& m, const BigInt& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  const BigInt& leading_coeff() const; // w.r.t. graded lex
  BigInt int_content() const;          // gcd of integer coefficients, >= 0
  Poly divide_by_int(const BigInt& c) const;

  // Substitute x_var = 0.
  Poly eval_var_zero(int var) const;

  std::set<int> vars_used() const;

  std::string to_string(const std::vector<std::string>& names) const;

private:
  int nvars_;
  std::map<Monomial, BigInt, GradedLexLess> terms_;
};

// Exact multivariate gcd (subresultant PRS). Result has a positive
// graded-lex leading coefficient.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact division; throws Error("InexactDivision") if b does not divide a.
Poly poly_div_exact(const Poly& a, const Poly& b);

// Reduced fraction of polynomials. Always normalized: gcd(num,den) trivial and
// the graded-lex leading coefficient of den positive.
class Fraction {
public:
  Fraction() : num_(0), den_(Poly::constant(0, 1)) {}
  explicit Fraction(int nvars)
      : num_(nvars), den_(Poly::constant(nvars, 1)) {}
  Fraction(Poly num, Poly den);
  static Fraction from_int(int nvars, const BigInt& c) {
    return Fraction(Poly::constant(nvars, c), Poly::constant(nvars, 1));
  }
  static Fraction from_poly(Poly p) {
    int nv = p.nvars();
    return Fraction(std::move(p), Poly::constant(nv, 1));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator-() const;
  Fraction inverse() const; // Error("DivisionByZero") if zero
  bool operator==(const Fraction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
  bool operator<(const Fraction& o) const; // arbitrary total order (for maps)

  std::set<int> vars_used() const;
  std::string to_string(const std::vector<std::string>& names) const;

private:
  Poly num_, den_;
  void normalize();
};

} // namespace lpa

#endif
