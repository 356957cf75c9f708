#ifndef LPA_PATHALG_HPP
#define LPA_PATHALG_HPP

#include <map>
#include <optional>
#include <vector>

#include "lpa/quiver.hpp"
#include "lpa/scalars.hpp"

namespace lpa {

// Shared context for all algebra operations on one quiver.
struct Ctx {
  Quiver q;
  ComponentPoset poset;
  FieldTower tower;

  static Ctx make(const Quiver& quiver, const CondenseOptions& opts = {});
  int cls_of_vertex(int v) const { return poset.class_of[v]; }
};

// Finitely supported K-linear combination of paths, with the membership
// invariant a_gamma in K_[r(gamma)] enforced on insertion.
class PathElement {
public:
  PathElement() = default;

  bool is_zero() const { return terms_.empty(); }
  const std::map<Path, FieldScalar>& terms() const { return terms_; }
  int max_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.length();
  }

  // Adds c * path, coercing the coefficient into K_[r(path)].
  // Error("CoefficientMembership") if the coefficient does not live there.
  void add(const Ctx& c, const Path& p, const FieldScalar& coeff);

  FieldScalar coeff(const Ctx& c, const Path& p) const; // zero scalar if absent

  std::string to_string(const Ctx& c) const;

private:
  std::map<Path, FieldScalar> terms_;
};

PathElement pe_zero();
PathElement pe_vertex(const Ctx& c, int v);
PathElement pe_edge(const Ctx& c, int e);
PathElement pe_path(const Ctx& c, const Path& p);
PathElement pe_unit(const Ctx& c); // sum of all vertices
PathElement pe_scale(const Ctx& c, const FieldScalar& s, const PathElement& a);

PathElement pe_add(const Ctx& c, const PathElement& a, const PathElement& b);
PathElement pe_sub(const Ctx& c, const PathElement& a, const PathElement& b);
PathElement pe_neg(const Ctx& c, const PathElement& a);
// Concatenation product; non-composable pairs vanish; truncate < 0 means exact.
PathElement pe_mul(const Ctx& c, const PathElement& a, const PathElement& b,
                   int truncate = -1);
PathElement pe_truncate(const Ctx& c, const PathElement& a, int degree);
bool pe_equal(const PathElement& a, const PathElement& b);

// Keep only terms whose path range / source lies in the given vertex set.
PathElement pe_filter_range(const Ctx& c, const PathElement& a,
                            const std::vector<bool>& in_set, bool keep_inside);
PathElement pe_filter_source(const Ctx& c, const PathElement& a,
                             const std::vector<bool>& in_set, bool keep_inside);

// Degree-truncated power series: a PathElement plus an explicit degree.
struct SeriesTruncation {
  PathElement pe;
  int degree = 0;
};

SeriesTruncation st_add(const Ctx& c, const SeriesTruncation& a,
                        const SeriesTruncation& b);
SeriesTruncation st_mul(const Ctx& c, const SeriesTruncation& a,
                        const SeriesTruncation& b);
bool st_equal(const SeriesTruncation& a, const SeriesTruncation& b); // common degree

// Augmentation onto the span of vertices.
struct AugValue {
  std::map<int, FieldScalar> at; // vertex -> scalar (no zeros)
};
AugValue augment(const Ctx& c, const PathElement& a);
PathElement aug_to_pe(const Ctx& c, const AugValue& a);

// Matrices over the path algebra.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<PathElement> a;
  // Optional corner tags: vertex per index; when set, the matrix lives in the
  // corner given by those idempotents and "identity" means diag(tags).
  std::optional<std::vector<int>> tags;

  PathElement& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const PathElement& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  static Mat zero(int r, int c) {
    Mat m;
    m.rows = r;
    m.cols = c;
    m.a.resize(static_cast<std::size_t>(r) * c);
    return m;
  }
};

Mat mat_identity(const Ctx& c, int n, const std::optional<std::vector<int>>& tags = {});
Mat mat_add(const Ctx& c, const Mat& x, const Mat& y);
Mat mat_sub(const Ctx& c, const Mat& x, const Mat& y);
Mat mat_mul(const Ctx& c, const Mat& x, const Mat& y, int truncate = -1);
bool mat_is_zero(const Mat& x);
bool mat_equal(const Mat& x, const Mat& y);
Mat mat_truncate(const Ctx& c, const Mat& x, int degree);

// Is epsilon(M) invertible over the commutative algebra E?
// Error("NonSquare") unless rows == cols.
bool is_invertible(const Ctx& c, const Mat& m);

// Truncated inverse of an epsilon-invertible matrix: for M = I - B with
// eps(B) = 0, the geometric sum; in general eps(M)^{-1} is factored out first.
// Verifies M * M^{-1} == I mod degree; Error("NotInvertible") otherwise.
Mat invert_eps_unit(const Ctx& c, const Mat& m, int degree);

// Right transduction: strip a leading edge e. Exact on PathElements.
PathElement transduce(const Ctx& c, int e, const PathElement& a);
SeriesTruncation transduce(const Ctx& c, int e, const SeriesTruncation& a);

// tau_e: the endomorphism sending s(e) to r(e) through the augmentation.
PathElement tau(const Ctx& c, int e, const PathElement& a);

// Exact check of the right derivation law for PathElements.
bool check_right_derivation(const Ctx& c, int e, const PathElement& r,
                            const PathElement& s);

// Right strip of a trailing edge (used by the regular-algebra normal form):
// coefficient of gamma in the result = coefficient of gamma.e in a.
// Error("CoefficientMembership") when a stripped coefficient cannot live at
// K_[s(e)] (possible only for crossing edges).
PathElement strip_trailing(const Ctx& c, int e, const PathElement& a);
// tau', the mirror of tau: eps(a) at r(e), moved to the vertex s(e).
PathElement tau_mirror(const Ctx& c, int e, const PathElement& a);

} // namespace lpa

#endif
