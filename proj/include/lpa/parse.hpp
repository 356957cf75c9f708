#ifndef LPA_PARSE_HPP
#define LPA_PARSE_HPP

#include <string>

#include "lpa/monoid.hpp"
#include "lpa/qalg.hpp"

namespace lpa {

// Parsed graph file: quiver plus declared components/order and the optional
// free/regular annotations. Error("ParseError") carries line information.
struct GraphSpec {
  Quiver q;
  CondenseOptions opts;
  std::vector<std::pair<std::string, bool>> shape_decls; // class name, is_free

  bool has_shape() const { return !shape_decls.empty(); }
};

GraphSpec parse_graph(const std::string& text);
Ctx make_ctx(const GraphSpec& g);

// Free/regular flags per class; classes without a declaration are regular.
std::vector<bool> shape_flags(const Ctx& c, const GraphSpec& g);

// Expression language over a graph: vertices and edges by id, `~e` for ghost
// edges, `x_<class>` scalars, integers, + - * / ( ), `.` products, and
// `inv(expr[, N=k])`. Evaluates to a normalized QElement.
QElement parse_expression(const Ctx& c, const std::string& text, int degree);

// Monoid literals like `2u+3v`.
MonoidElement parse_monoid(const Ctx& c, const std::string& text);

// Deterministic rendering of a normal form, e.g. `w - e1.~e1`.
std::string q_render(const Ctx& c, const QElement& x, int degree);

} // namespace lpa

#endif
