#pragma once

// Weighted Lovász number via the trace-normalized SDP:
//   maximize sum_ij sqrt(w_i w_j) X_ij   s.t.  tr X = 1, X_ij = 0 on edges,
//   X >= 0.
// The returned value is the solver's dual objective, which is a certified
// upper bound on the true optimum at any iterate; at convergence it matches
// the primal certificate X to the stated tolerance.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/graph.hpp"
#include "qbound/linalg.hpp"
#include "qbound/sdp.hpp"

namespace qbound {

struct ThetaResult {
  double value = 0.0;       // certified (dual) value
  double primal_value = 0.0;
  RMatrix certificate;      // primal X
  std::string status;
  int iterations = 0;
};

inline ThetaResult lovasz_theta(const Graph& g,
                                const std::vector<double>& weights = {}) {
  guard_that(g.n <= kMaxGraphVertices, "lovasz_theta: vertex count exceeds guard");
  std::vector<double> w = weights.empty() ? g.weights : weights;
  require(static_cast<int>(w.size()) == g.n, "lovasz_theta: weight count");
  for (double wi : w)
    require(wi >= 0.0, "lovasz_theta: weights must be nonnegative");

  const std::size_t n = static_cast<std::size_t>(g.n);
  SdpProblem p;
  p.block_dims = {n};
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(w[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (sq[i] * sq[j] != 0.0) p.objective.push_back({0, i, j, sq[i] * sq[j]});

  SdpConstraint trace;
  for (std::size_t i = 0; i < n; ++i) trace.terms.push_back({0, i, i, 1.0});
  trace.rhs = 1.0;
  p.constraints.push_back(std::move(trace));
  for (const auto& [i, j] : edge_list(g)) {
    SdpConstraint edge;
    edge.terms.push_back(
        {0, static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1.0});
    edge.rhs = 0.0;
    p.constraints.push_back(std::move(edge));
  }

  const SdpSolution s = solve_sdp(p);
  ThetaResult out;
  out.value = s.dual_value;
  out.primal_value = s.primal_value;
  out.certificate = s.blocks[0];
  out.status = s.status;
  out.iterations = s.iterations;
  return out;
}

}  // namespace qbound
