#include "lpa/quiver.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lpa {

int Quiver::add_vertex(const std::string& name) {
  if (vertex_index(name) >= 0) fail("ParseError", "duplicate vertex '" + name + "'");
  vertices.push_back(name);
  return static_cast<int>(vertices.size()) - 1;
}

int Quiver::add_edge(const std::string& name, const std::string& src,
                     const std::string& dst) {
  if (edge_index(name) >= 0) fail("ParseError", "duplicate edge '" + name + "'");
  int s = vertex_index(src), d = vertex_index(dst);
  if (s < 0) fail("ParseError", "edge '" + name + "': unknown vertex '" + src + "'");
  if (d < 0) fail("ParseError", "edge '" + name + "': unknown vertex '" + dst + "'");
  edges.push_back({name, s, d});
  return static_cast<int>(edges.size()) - 1;
}

int Quiver::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int Quiver::edge_index(const std::string& name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<int> Quiver::out_edges(int v) const {
  std::vector<int> r;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].src == v) r.push_back(static_cast<int>(i));
  return r;
}

std::vector<std::vector<bool>> Quiver::reachability() const {
  std::size_t n = vertices.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (auto& e : edges) r[e.src][e.dst] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

Path Path::then(const Quiver& q, const Path& next) const {
  if (!composable(q, next)) fail("Internal", "non-composable paths");
  if (is_trivial()) return next;
  if (next.is_trivial()) return *this;
  Path r = *this;
  r.edges.insert(r.edges.end(), next.edges.begin(), next.edges.end());
  r.anchor = -1;
  return r;
}

std::string Path::to_string(const Quiver& q) const {
  if (is_trivial()) return q.vertices[anchor];
  std::string s;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) s += ".";
    s += q.edges[edges[i]].name;
  }
  return s;
}

std::vector<int> ComponentPoset::chain_to_root(int i) const {
  std::vector<int> chain;
  for (int j = 0; j < num_classes(); ++j)
    if (leq[i][j]) chain.push_back(j);
  // sort ascending along the order (all comparable on a validated tree)
  std::sort(chain.begin(), chain.end(), [&](int a, int b) {
    if (a == b) return false;
    return leq[a][b]; // a < b in the poset first
  });
  return chain;
}

std::vector<int> ComponentPoset::lower_covers(int i) const {
  std::vector<int> covers;
  for (int j = 0; j < num_classes(); ++j) {
    if (j == i || !leq[j][i]) continue;
    bool covered = true;
    for (int k = 0; k < num_classes(); ++k)
      if (k != i && k != j && leq[j][k] && leq[k][i]) {
        covered = false;
        break;
      }
    if (covered) covers.push_back(j);
  }
  return covers;
}

ComponentPoset condense(const Quiver& q, const CondenseOptions& opts) {
  std::size_t n = q.vertices.size();
  std::vector<std::vector<int>> classes;
  std::vector<std::string> names;

  if (opts.partition) {
    std::vector<int> seen(n, 0);
    classes = *opts.partition;
    for (auto& cls : classes) {
      std::sort(cls.begin(), cls.end());
      for (int v : cls) {
        if (v < 0 || v >= static_cast<int>(n) || seen[v])
          fail("IncompatiblePartition", "vertex repeated or out of range");
        seen[v] = 1;
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!seen[v])
        fail("IncompatiblePartition",
             "vertex '" + q.vertices[v] + "' not covered by the partition");
    names = opts.class_names;
  } else {
    // Tarjan SCC, deterministic in file order.
    std::vector<int> index(n, -1), low(n, 0), on(n, 0), comp(n, -1);
    std::vector<int> stack;
    int counter = 0;
    std::function<void(int)> dfs = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on[v] = 1;
      for (auto& e : q.edges) {
        if (e.src != v) continue;
        int w = e.dst;
        if (index[w] < 0) {
          dfs(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::vector<int> cls;
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on[w] = 0;
          cls.push_back(w);
          if (w == v) break;
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(cls);
      }
    };
    for (std::size_t v = 0; v < n; ++v)
      if (index[v] < 0) dfs(static_cast<int>(v));
  }

  // order classes by smallest member for determinism
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  ComponentPoset p;
  p.classes = classes;
  p.class_of.assign(n, -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int v : classes[c]) p.class_of[v] = static_cast<int>(c);

  if (!names.empty()) {
    if (names.size() != classes.size())
      fail("IncompatiblePartition", "class name count mismatch");
    // partition entries may have been reordered; names follow opts.partition order
    // recompute: map original partition order to sorted order via first vertex
    p.class_names.assign(classes.size(), "");
    for (std::size_t i = 0; i < opts.partition->size(); ++i) {
      auto cls = (*opts.partition)[i];
      std::sort(cls.begin(), cls.end());
      for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c] == cls) p.class_names[c] = opts.class_names[i];
    }
  } else {
    for (auto& cls : classes) p.class_names.push_back(q.vertices[cls.front()]);
  }

  // pre-order on classes: edge-level reachability plus declared pairs
  int m = p.num_classes();
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) rel[i][i] = true;
  for (auto& e : q.edges) rel[p.class_of[e.dst]][p.class_of[e.src]] = true; // [dst] <= [src]
  for (auto& [hi, lo] : opts.order_pairs) {
    int a = -1, b = -1;
    for (int i = 0; i < m; ++i) {
      if (p.class_names[i] == hi) a = i;
      if (p.class_names[i] == lo) b = i;
    }
    if (a < 0 || b < 0) fail("ParseError", "order declaration names unknown class");
    rel[b][a] = true;
  }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      if (rel[i][k])
        for (int j = 0; j < m; ++j)
          if (rel[k][j]) rel[i][j] = true;

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && rel[i][j] && rel[j][i])
        fail("IncompatiblePartition",
             "classes '" + p.class_names[i] + "' and '" + p.class_names[j] +
                 "' are mutually reachable but distinct");

  p.leq = rel;
  return p;
}

void assert_tree(ComponentPoset& p) {
  int m = p.num_classes();
  std::vector<int> maxima;
  for (int i = 0; i < m; ++i) {
    bool is_max = true;
    for (int j = 0; j < m; ++j)
      if (j != i && p.leq[i][j]) is_max = false;
    if (is_max) maxima.push_back(i);
  }
  if (maxima.size() != 1) {
    std::string w;
    for (std::size_t k = 0; k < std::min<std::size_t>(2, maxima.size()); ++k)
      w += (k ? "', '" : "'") + p.class_names[maxima[k]];
    fail("NotATree", "no unique maximum; maximal classes " + w + "'");
  }
  int root = maxima[0];
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (p.leq[i][a] && p.leq[i][b] && !p.comparable(a, b))
          fail("NotATree", "interval above '" + p.class_names[i] +
                               "' is not a chain: incomparable '" + p.class_names[a] +
                               "', '" + p.class_names[b] + "'");
  p.root = root;
}

std::vector<int> lower_set(const ComponentPoset& p, int i) {
  std::vector<int> r;
  for (int j = 0; j < p.num_classes(); ++j)
    if (p.leq[j][i]) r.push_back(j);
  return r;
}

bool is_hereditary(const Quiver& q, const std::vector<int>& vertex_set) {
  std::vector<bool> in(q.vertices.size(), false);
  for (int v : vertex_set) in[v] = true;
  for (auto& e : q.edges)
    if (in[e.src] && !in[e.dst]) return false;
  return true;
}

std::vector<int> hereditary_vertices(const Quiver& q, const ComponentPoset& p,
                                     const std::vector<int>& J) {
  std::vector<bool> in(p.num_classes(), false);
  for (int c : J) in[c] = true;
  for (int c : J)
    for (int j = 0; j < p.num_classes(); ++j)
      if (p.leq[j][c] && !in[j])
        fail("NotLowerSet", "class '" + p.class_names[j] + "' below '" +
                                p.class_names[c] + "' missing from J");
  std::vector<int> verts;
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (in[p.class_of[v]]) verts.push_back(static_cast<int>(v));
  return verts;
}

ClassRestriction restriction(const Quiver& q, const ComponentPoset& p, int cls) {
  ClassRestriction r;
  r.vertices = p.classes[cls];
  for (std::size_t e = 0; e < q.edges.size(); ++e)
    if (p.class_of[q.edges[e].src] == cls && p.class_of[q.edges[e].dst] == cls)
      r.edges.push_back(static_cast<int>(e));
  return r;
}

AbpShape validate_abp_shape(const Quiver& q, const ComponentPoset& p,
                            const std::vector<bool>& is_free) {
  if (p.root < 0) fail("Internal", "validate_abp_shape requires a validated tree");
  if (is_free.size() != static_cast<std::size_t>(p.num_classes()))
    fail("ShapeViolation", "partition size mismatch");
  for (int c = 0; c < p.num_classes(); ++c) {
    auto rest = restriction(q, p, c);
    bool minimal = lower_set(p, c).size() == 1;
    if (is_free[c]) {
      if (minimal) {
        // clause (4): minimal components are sinks or regular
        bool sink = rest.vertices.size() == 1 && q.is_sink(rest.vertices.front());
        if (!sink)
          fail("ShapeViolation", "clause (4): minimal free class '" +
                                     p.class_names[c] + "' is not a sink");
      } else {
        // clause (2): single vertex with a single loop
        bool ok = rest.vertices.size() == 1 && rest.edges.size() == 1 &&
                  q.edges[rest.edges.front()].src == rest.vertices.front() &&
                  q.edges[rest.edges.front()].dst == rest.vertices.front();
        if (!ok)
          fail("ShapeViolation", "clause (2): non-minimal free class '" +
                                     p.class_names[c] +
                                     "' is not a single vertex with one loop");
      }
    } else {
      // clause (3): at least two internal edges
      if (rest.edges.size() < 2)
        fail("ShapeViolation", "clause (3): regular class '" + p.class_names[c] +
                                   "' has fewer than two edges");
    }
  }
  AbpShape s;
  s.is_free = is_free;
  return s;
}

} // namespace lpa
