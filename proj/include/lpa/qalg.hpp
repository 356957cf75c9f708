#ifndef LPA_QALG_HPP
#define LPA_QALG_HPP

#include "lpa/leavitt.hpp"
#include "lpa/ratseries.hpp"

namespace lpa {

// Right transduction lifted to representations: strips the leading edge and
// keeps a valid representation (zero-augmentation matrix, exact entries).
LinRep transduce_rep(const Ctx& c, int e, const LinRep& r);

// tau_e on a representation: the augmentation value at s(e) moved to r(e),
// as a 0-dimensional-series (vertex multiple) representation.
LinRep tau_rep(const Ctx& c, int e, const LinRep& r);

// Right strip of a trailing edge on representations (the mirror operation);
// Error("CoefficientMembership") can surface for crossing edges.
LinRep strip_rep(const Ctx& c, int e, const LinRep& r);

// Element of the regular algebra: sum of a_mu mu* with a_mu a rational series
// whose paths all end at r(mu).
struct QElement {
  std::map<Path, LinRep> terms; // ghost path -> coefficient
};

QElement q_zero();
QElement q_from_rep(const Ctx& c, const LinRep& a); // split by range vertex
QElement q_vertex(const Ctx& c, int v);
QElement q_edge(const Ctx& c, int e);
QElement q_ghost(const Ctx& c, int e);
QElement q_from_leavitt(const Ctx& c, const LeavittElement& a);

QElement q_add(const Ctx& c, const QElement& x, const QElement& y);
QElement q_scale(const Ctx& c, const FieldScalar& s, const QElement& x);
QElement q_sub(const Ctx& c, const QElement& x, const QElement& y);

// Product via pushing ghost edges through rational coefficients with the
// commutation rule e* b = tau_e(b) e* + delta_e(b); the result is normalized.
QElement q_mul(const Ctx& c, const QElement& x, const QElement& y, int degree);

// CK2 normal form: no coefficient ends (mod degree) with the designated edge
// of its ghost key's last source.
QElement q_normalize(const Ctx& c, const QElement& x, int degree);

bool q_equal(const Ctx& c, const QElement& x, const QElement& y, int degree);
std::string q_to_string(const Ctx& c, const QElement& x, int degree);

// Inverse of a corner polynomial p in v P v with nonzero constant term, as a
// rational series; checks p p^{-1} == v mod degree on both sides.
// Error("ZeroConstantTerm") when the augmentation vanishes at v.
LinRep invert_free_polynomial(const Ctx& c, int v, const PathElement& p, int degree);

// Recursive splitting of a zero-augmentation matrix along the tree: A0 holds
// the paths inside the root component, B the paths leaving it, Ak the paths
// inside the branch under each lower cover. Orthogonality is exact.
struct SigmaPrime {
  int root_class = -1;
  Mat a0, b;
  std::vector<int> covers;
  std::vector<Mat> ak;
  std::vector<std::shared_ptr<SigmaPrime>> subs;
};

SigmaPrime sigma_prime_decompose(const Ctx& c, const Mat& a);

// Verifies the inverse factorization chain of the decomposition mod degree:
// (I-A)^{-1} = (I-A0)^{-1}(I-B-sum Ak)^{-1}, the B/sum split, the per-branch
// product, and (I-B)^{-1} = I+B exactly.
bool check_sigma_prime_factorization(const Ctx& c, const Mat& a,
                                     const SigmaPrime& d, int degree);

// For a free class whose restriction is a single loop: the Leibniz
// determinant of Iv - A lands in v + p with p(0) = 0, and v + p is invertible.
// Error("NotFreeLoopComponent") otherwise.
struct DeterminantRemark {
  PathElement det;
  LinRep inverse;
};
DeterminantRemark determinant_remark_check(const Ctx& c, int cls, const Mat& a,
                                           int degree);

} // namespace lpa

#endif
