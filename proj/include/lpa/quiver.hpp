#ifndef LPA_QUIVER_HPP
#define LPA_QUIVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

// Finite quiver. Vertices and edges keep their file order; all iteration in
// the library is deterministic in that order.
struct Quiver {
  struct Edge {
    std::string name;
    int src;
    int dst;
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  int add_vertex(const std::string& name);
  int add_edge(const std::string& name, const std::string& src, const std::string& dst);

  int vertex_index(const std::string& name) const; // -1 if absent
  int edge_index(const std::string& name) const;

  std::vector<int> out_edges(int v) const;
  bool is_sink(int v) const { return out_edges(v).empty(); }

  // vertex-level reachability (reflexive)
  std::vector<std::vector<bool>> reachability() const;
};

// Path in a quiver: a sequence of composable edges, or a trivial path anchored
// at a vertex.
struct Path {
  int anchor = -1;        // vertex, only meaningful when edges is empty
  std::vector<int> edges; // edge indices

  static Path trivial(int v) { return Path{v, {}}; }
  static Path edge(int e) { return Path{-1, {e}}; }

  int length() const { return static_cast<int>(edges.size()); }
  bool is_trivial() const { return edges.empty(); }
  int source(const Quiver& q) const {
    return is_trivial() ? anchor : q.edges[edges.front()].src;
  }
  int range(const Quiver& q) const {
    return is_trivial() ? anchor : q.edges[edges.back()].dst;
  }

  // Composition; throws if ranges mismatch.
  Path then(const Quiver& q, const Path& next) const;
  bool composable(const Quiver& q, const Path& next) const {
    return range(q) == next.source(q);
  }

  friend bool operator<(const Path& a, const Path& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.anchor < b.anchor;
  }
  friend bool operator==(const Path& a, const Path& b) {
    return a.anchor == b.anchor && a.edges == b.edges;
  }
  std::string to_string(const Quiver& q) const;
};

// Antisymmetrization of the vertex set: classes with a strict partial order,
// required downstream to be a tree (unique maximum, chains up to the root).
struct ComponentPoset {
  std::vector<std::vector<int>> classes; // each sorted; classes ordered by min vertex
  std::vector<int> class_of;             // per vertex
  std::vector<std::vector<bool>> leq;    // leq[i][j]: class i <= class j (reflexive)
  std::vector<std::string> class_names;  // representative vertex name, or declared id

  int num_classes() const { return static_cast<int>(classes.size()); }
  bool less_eq(int i, int j) const { return leq[i][j]; }
  bool comparable(int i, int j) const { return leq[i][j] || leq[j][i]; }

  // Unique maximum; computed by assert_tree. -1 until validated.
  int root = -1;

  // classes on the interval [i, root], ascending; requires validated tree
  std::vector<int> chain_to_root(int i) const;
  std::vector<int> lower_covers(int i) const;
};

struct CondenseOptions {
  // Optional partition: list of classes, each a list of vertex indices.
  std::optional<std::vector<std::vector<int>>> partition;
  // Extra order pairs (a, b) meaning class-of-a > class-of-b, by class name.
  std::vector<std::pair<std::string, std::string>> order_pairs;
  // Declared class names (parallel to partition entries), optional.
  std::vector<std::string> class_names;
};

// SCC condensation, or validation of a user partition; order is the
// transitive closure of class-level reachability plus declared pairs.
// Throws Error("IncompatiblePartition") when the induced relation fails
// antisymmetry or a vertex is missing from the partition.
ComponentPoset condense(const Quiver& q, const CondenseOptions& opts = {});

// Throws Error("NotATree") with a witness unless the poset has a unique
// maximum and every interval [i, root] is a chain. On success sets p.root.
void assert_tree(ComponentPoset& p);

// Principal lower set of class i.
std::vector<int> lower_set(const ComponentPoset& p, int i);

// Vertices of a lower set J (validated; Error("NotLowerSet") otherwise).
std::vector<int> hereditary_vertices(const Quiver& q, const ComponentPoset& p,
                                     const std::vector<int>& J);

// True when no edge leaves the vertex set.
bool is_hereditary(const Quiver& q, const std::vector<int>& vertex_set);

// Restriction graph E[v]-style data for a class.
struct ClassRestriction {
  std::vector<int> vertices;
  std::vector<int> edges; // internal edges
};
ClassRestriction restriction(const Quiver& q, const ComponentPoset& p, int cls);

struct AbpShape {
  std::vector<bool> is_free; // per class; false = regular
};

// Validates conditions on the I_free / I_reg partition; throws
// Error("ShapeViolation") naming the class and the failed clause.
AbpShape validate_abp_shape(const Quiver& q, const ComponentPoset& p,
                            const std::vector<bool>& is_free);

} // namespace lpa

#endif
