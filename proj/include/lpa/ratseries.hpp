#ifndef LPA_RATSERIES_HPP
#define LPA_RATSERIES_HPP

#include <memory>

#include "lpa/pathalg.hpp"

namespace lpa {

// Rational series presented as lambda (I - B)^{-1} rho with eps(B) = 0 and
// exact PathElement entries.
struct LinRep {
  int n = 0;
  std::vector<PathElement> lambda, rho;
  Mat b;
};

// Validates eps(B) = 0; Error("BadAugmentation") otherwise.
LinRep make_linrep(const Ctx& c, std::vector<PathElement> lambda, Mat b,
                   std::vector<PathElement> rho);

LinRep rep_zero(const Ctx& c);
LinRep rep_from_pe(const Ctx& c, const PathElement& p); // dim 1, B = 0
LinRep rep_scale(const Ctx& c, const FieldScalar& s, const LinRep& r);

SeriesTruncation expand(const Ctx& c, const LinRep& r, int degree);

LinRep rep_add(const Ctx& c, const LinRep& a, const LinRep& b);
LinRep rep_sub(const Ctx& c, const LinRep& a, const LinRep& b);
LinRep rep_mul(const Ctx& c, const LinRep& a, const LinRep& b);

// Right multiplication by the idempotent sum of a vertex set: filters rho.
LinRep rep_corner_right(const Ctx& c, const LinRep& r, const std::vector<bool>& in);
// Left multiplication: filters lambda sources.
LinRep rep_corner_left(const Ctx& c, const LinRep& r, const std::vector<bool>& in);

bool rep_equal_mod(const Ctx& c, const LinRep& a, const LinRep& b, int degree);
bool rep_is_zero_mod(const Ctx& c, const LinRep& a, int degree);

// Support split of an eps-zero matrix along a hereditary vertex set H:
// B = B1 (ranges outside H) + B2 (ranges in H); B2 = B2' (sources outside H)
// + B2'' (sources in H). The orthogonality identities are verified exactly.
struct SupportSplit {
  std::vector<bool> in_h; // per vertex
  Mat b1, b2, b2_cross, b2_inner;
  bool b2b1_zero = false;
  bool cross_sq_zero = false;
  bool inner_cross_zero = false;
};

SupportSplit split_by_hereditary(const Ctx& c, const Mat& b,
                                 const std::vector<int>& h);

// Verifies (I-B)^{-1} = (I-B1)^{-1}(I-B2)^{-1} and the expanded form
// (I-B)^{-1} = (I-B1)^{-1} + (I-B1)^{-1} B2 (I-B2)^{-1}, both mod degree.
bool check_inverse_factorization(const Ctx& c, const Mat& b,
                                 const std::vector<int>& h, int degree);

// Claim-1 corner formula: evaluates
//   pH lam pH rho pH + pH lam pH B2 pH (I - B2'')^{-1} pH rho pH
// mod degree and asserts it equals pH expand(x) pH; Error("MismatchedCorner")
// on failure (would indicate an implementation bug).
SeriesTruncation corner_formula(const Ctx& c, const LinRep& x,
                                const std::vector<int>& h, int degree);

// Claim-2 style independence test across a crossing edge.
struct CrossingCheck {
  bool applicable = false; // b's independent over K_0 and some a_i e != 0
  bool nonzero = false;    // sum a_i e b_i != 0 mod degree
};
CrossingCheck crossing_independence_check(const Ctx& c, int e,
                                          const std::vector<PathElement>& a,
                                          const std::vector<SeriesTruncation>& b,
                                          int degree);

// K_0-linear independence of truncated series (coefficients may live in any
// K_i; dependence is sought with coefficients in the root field only).
bool k0_independent(const Ctx& c, const std::vector<SeriesTruncation>& b,
                    int degree);

// Decomposition certificate for the inductive rational-closure structure:
// x = root term + cross term, with per-lower-cover corner parts recursing
// down the tree. All equalities verified mod degree on construction.
struct PratCert {
  int root_class = -1;
  LinRep root_term;  // lambda (I-B1)^{-1} rho
  bool has_cross = false;
  LinRep cross_term; // lambda (I-B1)^{-1} B2 (I-B2)^{-1} rho
  std::vector<int> lower_covers;
  std::vector<LinRep> branch_corners; // p_Hk x p_Hk
  std::vector<std::shared_ptr<PratCert>> branch_certs;
};

PratCert prat_membership_certificate(const Ctx& c, const LinRep& x, int degree);

} // namespace lpa

#endif
