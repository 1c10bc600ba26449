#pragma once

// Exhaustive corpus of non-isomorphic graphs on up to 7 vertices, generated
// level-wise: every graph on n vertices arises from one on n-1 vertices by
// attaching a new vertex with some neighbor set, so extending each (n-1)-
// vertex representative by all 2^(n-1) masks and deduplicating by canonical
// form enumerates every isomorphism class exactly once. Canonical form is
// the minimal upper-triangle edge bitmask over all vertex relabelings,
// affordable for n <= 7 (5040 permutations, 21 bits).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "qbound/graph.hpp"

namespace qbound::testing {

namespace detail {

// Upper-triangle bit index for the pair (i, j), i < j, on n vertices.
inline int pair_bit(int n, int i, int j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::uint64_t mask_of(const Graph& g) {
  std::uint64_t m = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (adjacent(g, i, j)) m |= std::uint64_t(1) << pair_bit(g.n, i, j);
  return m;
}

inline std::uint64_t canonical_mask(int n, std::uint64_t mask) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t(0);
  do {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int a = std::min(perm[i], perm[j]);
        const int b = std::max(perm[i], perm[j]);
        if ((mask >> pair_bit(n, a, b)) & 1)
          key |= std::uint64_t(1) << pair_bit(n, i, j);
      }
    best = std::min(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline Graph graph_of(int n, std::uint64_t mask) {
  Graph g = graph_empty(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((mask >> pair_bit(n, i, j)) & 1) add_edge(g, i, j);
  return g;
}

}  // namespace detail

// All non-isomorphic graphs with 1..nmax vertices (nmax <= 7).
inline std::vector<Graph> graph_corpus(int nmax) {
  std::vector<std::set<std::uint64_t>> levels(nmax + 1);
  levels[1] = {0};
  for (int n = 2; n <= nmax; ++n)
    for (const std::uint64_t parent : levels[n - 1])
      for (std::uint64_t nb = 0; nb < (std::uint64_t(1) << (n - 1)); ++nb) {
        // Vertices keep their pair bits when a vertex is appended at the end.
        std::uint64_t mask = 0;
        for (int i = 0; i < n - 1; ++i)
          for (int j = i + 1; j < n - 1; ++j)
            if ((parent >> detail::pair_bit(n - 1, i, j)) & 1)
              mask |= std::uint64_t(1) << detail::pair_bit(n, i, j);
        for (int i = 0; i < n - 1; ++i)
          if ((nb >> i) & 1)
            mask |= std::uint64_t(1) << detail::pair_bit(n, i, n - 1);
        levels[n].insert(detail::canonical_mask(n, mask));
      }
  std::vector<Graph> out;
  for (int n = 1; n <= nmax; ++n)
    for (const std::uint64_t mask : levels[n])
      out.push_back(detail::graph_of(n, mask));
  return out;
}

inline std::vector<Graph> connected_graph_corpus(int nmax) {
  std::vector<Graph> out;
  for (Graph& g : graph_corpus(nmax))
    if (is_connected(g)) out.push_back(std::move(g));
  return out;
}

// Per-level class counts, for asserting the generator against known values.
inline std::vector<int> corpus_counts(const std::vector<Graph>& corpus, int nmax) {
  std::vector<int> counts(nmax + 1, 0);
  for (const Graph& g : corpus) ++counts[g.n];
  return counts;
}

}  // namespace qbound::testing
