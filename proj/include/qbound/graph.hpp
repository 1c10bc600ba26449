#pragma once

// Vertex-weighted graphs on up to 64 vertices (bitset adjacency rows),
// generators, graph products, the Pauli-induced subgraph, and exact
// (weighted) independence via branch and bound.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "qbound/common.hpp"

namespace qbound {

constexpr int kMaxGraphVertices = 64;
constexpr int kMaxIndependenceVertices = 40;

struct Graph {
  int n = 0;
  std::vector<std::uint64_t> adj;  // adj[i] bit j set iff i ~ j
  std::vector<double> weights;     // one nonnegative weight per vertex

  friend bool operator==(const Graph&, const Graph&) = default;
};

inline Graph graph_empty(int n, std::vector<double> weights = {}) {
  require(n >= 1 && n <= kMaxGraphVertices, "vertex count out of range");
  Graph g;
  g.n = n;
  g.adj.assign(n, 0);
  if (weights.empty()) weights.assign(n, 1.0);
  require(static_cast<int>(weights.size()) == n, "weight vector size mismatch");
  for (double w : weights) require(w >= 0.0, "weights must be nonnegative");
  g.weights = std::move(weights);
  return g;
}

inline void add_edge(Graph& g, int i, int j) {
  require(i >= 0 && i < g.n && j >= 0 && j < g.n && i != j, "bad edge endpoints");
  g.adj[i] |= std::uint64_t(1) << j;
  g.adj[j] |= std::uint64_t(1) << i;
}

inline bool adjacent(const Graph& g, int i, int j) {
  return (g.adj[i] >> j) & 1;
}

inline Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                              std::vector<double> weights = {}) {
  Graph g = graph_empty(n, std::move(weights));
  for (const auto& [i, j] : edges) {
    require(i >= 0 && i < n && j >= 0 && j < n, "edge endpoint out of range");
    require(i != j, "self-loops are not allowed");
    require(!adjacent(g, i, j), "duplicate edge");
    add_edge(g, i, j);
  }
  return g;
}

inline std::vector<std::pair<int, int>> edge_list(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (adjacent(g, i, j)) edges.emplace_back(i, j);
  return edges;
}

inline int edge_count(const Graph& g) {
  int m = 0;
  for (int i = 0; i < g.n; ++i) m += std::popcount(g.adj[i]);
  return m / 2;
}

inline int degree(const Graph& g, int i) { return std::popcount(g.adj[i]); }

inline Graph graph_cycle(int m) {
  require(m >= 3, "cycle needs at least 3 vertices");
  Graph g = graph_empty(m);
  for (int i = 0; i < m; ++i) add_edge(g, i, (i + 1) % m);
  return g;
}

inline Graph graph_complete(int n) {
  Graph g = graph_empty(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) add_edge(g, i, j);
  return g;
}

inline Graph graph_complement(const Graph& g) {
  Graph c = graph_empty(g.n, g.weights);
  const std::uint64_t full =
      (g.n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << g.n) - 1);
  for (int i = 0; i < g.n; ++i)
    c.adj[i] = (~g.adj[i]) & full & ~(std::uint64_t(1) << i);
  return c;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  require(a.n + b.n <= kMaxGraphVertices, "union exceeds vertex limit");
  Graph g = graph_empty(a.n + b.n);
  for (int i = 0; i < a.n; ++i) g.adj[i] = a.adj[i];
  for (int i = 0; i < b.n; ++i) g.adj[a.n + i] = b.adj[i] << a.n;
  for (int i = 0; i < a.n; ++i) g.weights[i] = a.weights[i];
  for (int i = 0; i < b.n; ++i) g.weights[a.n + i] = b.weights[i];
  return g;
}

inline Graph graph_join(const Graph& a, const Graph& b) {
  Graph g = disjoint_union(a, b);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) add_edge(g, i, a.n + j);
  return g;
}

// Lexicographic product G1[G2]: vertex (i, j) -> i * n2 + j; (i, j) ~ (k, l)
// iff i ~ k, or i == k and j ~ l. Result weights are all ones.
inline Graph lexicographic_product(const Graph& a, const Graph& b) {
  require(a.n * b.n <= kMaxGraphVertices, "product exceeds vertex limit");
  Graph g = graph_empty(a.n * b.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j)
      for (int k = 0; k < a.n; ++k)
        for (int l = 0; l < b.n; ++l) {
          if (i == k && j == l) continue;
          const bool e = adjacent(a, i, k) || (i == k && adjacent(b, j, l));
          if (e && i * b.n + j < k * b.n + l) add_edge(g, i * b.n + j, k * b.n + l);
        }
  return g;
}

// XOR product: (i, j) ~ (k, l) iff exactly one of i ~ k, j ~ l holds. This is
// the frustration graph of the elementwise tensor of two representations.
inline Graph xor_product(const Graph& a, const Graph& b) {
  require(a.n * b.n <= kMaxGraphVertices, "product exceeds vertex limit");
  Graph g = graph_empty(a.n * b.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j)
      for (int k = 0; k < a.n; ++k)
        for (int l = 0; l < b.n; ++l) {
          if (i == k && j == l) continue;
          const bool e = adjacent(a, i, k) != adjacent(b, j, l);
          if (e && i * b.n + j < k * b.n + l) add_edge(g, i * b.n + j, k * b.n + l);
        }
  return g;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
  require(!verts.empty(), "induced subgraph needs at least one vertex");
  std::vector<double> w;
  for (int v : verts) {
    require(v >= 0 && v < g.n, "induced subgraph vertex out of range");
    w.push_back(g.weights[v]);
  }
  Graph s = graph_empty(static_cast<int>(verts.size()), std::move(w));
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j)
      if (adjacent(g, verts[i], verts[j])) add_edge(s, i, j);
  return s;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::uint64_t seen = 0;
  for (int s = 0; s < g.n; ++s) {
    if ((seen >> s) & 1) continue;
    std::vector<int> stack = {s}, comp;
    seen |= std::uint64_t(1) << s;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u = 0; u < g.n; ++u)
        if (adjacent(g, v, u) && !((seen >> u) & 1)) {
          seen |= std::uint64_t(1) << u;
          stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const Graph& g) {
  return connected_components(g).size() == 1;
}

inline bool is_cycle_graph(const Graph& g) {
  if (g.n < 3 || !is_connected(g)) return false;
  for (int i = 0; i < g.n; ++i)
    if (degree(g, i) != 2) return false;
  return true;
}

// Pauli-induced subgraph for the standard representation recursion on edge
// (i0, j0). Remaining vertices split into classes
//   V0: adjacent to neither endpoint, V1: adjacent to j0 only,
//   V2: adjacent to both,             V3: adjacent to i0 only,
// and adjacency flips exactly for pairs whose classes differ among V1, V2, V3.
struct PauliInduced {
  Graph sub;                             // on the surviving vertices
  std::vector<int> vertices;             // original ids, ascending = new order
  std::array<std::vector<int>, 4> classes;  // original ids per class
};

inline PauliInduced pauli_induced_subgraph(const Graph& g, int i0, int j0) {
  require(i0 >= 0 && i0 < g.n && j0 >= 0 && j0 < g.n, "vertex out of range");
  require(adjacent(g, i0, j0), "pauli_induced_subgraph needs an edge of the graph");
  PauliInduced out;
  std::vector<int> cls(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    if (v == i0 || v == j0) continue;
    const bool ai = adjacent(g, v, i0), aj = adjacent(g, v, j0);
    int k = 0;
    if (!ai && aj) k = 1;
    else if (ai && aj) k = 2;
    else if (ai && !aj) k = 3;
    cls[v] = k;
    out.classes[k].push_back(v);
    out.vertices.push_back(v);
  }
  if (out.vertices.empty()) {
    out.sub = Graph{};  // empty graph: no surviving vertices
    return out;
  }
  std::vector<double> w;
  for (int v : out.vertices) w.push_back(g.weights[v]);
  out.sub = graph_empty(static_cast<int>(out.vertices.size()), std::move(w));
  for (int a = 0; a < out.sub.n; ++a)
    for (int b = a + 1; b < out.sub.n; ++b) {
      const int u = out.vertices[a], v = out.vertices[b];
      bool e = adjacent(g, u, v);
      const bool flip = cls[u] != 0 && cls[v] != 0 && cls[u] != cls[v];
      if (flip) e = !e;
      if (e) add_edge(out.sub, a, b);
    }
  return out;
}

// Exact maximum-weight independent set by branch and bound. Branch vertex:
// highest original degree, ties by index. Bound: current weight plus sum of
// positive candidate weights.
struct IndependenceResult {
  double value = 0.0;
  std::vector<int> vertices;
};

namespace detail {
struct IndependenceSearch {
  const Graph& g;
  std::vector<int> order;  // vertices by descending degree, ties by index
  double best = 0.0;
  std::uint64_t best_set = 0;

  explicit IndependenceSearch(const Graph& graph) : g(graph) {
    order.resize(g.n);
    for (int i = 0; i < g.n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return degree(g, a) > degree(g, b);
    });
  }

  void run(std::uint64_t cand, double cur, std::uint64_t set) {
    if (cur > best) {
      best = cur;
      best_set = set;
    }
    if (cand == 0) return;
    double bound = cur;
    for (int v = 0; v < g.n; ++v)
      if (((cand >> v) & 1) && g.weights[v] > 0.0) bound += g.weights[v];
    if (bound <= best + 1e-12) return;
    int pick = -1;
    for (int v : order)
      if ((cand >> v) & 1) {
        pick = v;
        break;
      }
    const std::uint64_t bit = std::uint64_t(1) << pick;
    run(cand & ~bit & ~g.adj[pick], cur + g.weights[pick], set | bit);
    run(cand & ~bit, cur, set);
  }
};
}  // namespace detail

inline IndependenceResult weighted_independence(const Graph& g) {
  guard_that(g.n <= kMaxIndependenceVertices,
             "weighted_independence: vertex count exceeds guard");
  detail::IndependenceSearch search(g);
  const std::uint64_t full =
      (g.n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << g.n) - 1);
  search.run(full, 0.0, 0);
  IndependenceResult res;
  res.value = search.best;
  for (int v = 0; v < g.n; ++v)
    if ((search.best_set >> v) & 1) res.vertices.push_back(v);
  return res;
}

inline int independence_number(const Graph& g) {
  Graph u = g;
  u.weights.assign(g.n, 1.0);
  const double v = weighted_independence(u).value;
  return static_cast<int>(v + 0.5);
}

}  // namespace qbound
