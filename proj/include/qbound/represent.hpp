#pragma once

// Operator representations of graphs: frustration graphs of Pauli families,
// the standard/edge/complete constructions, representation verification,
// families built from orthogonal representations, joint eigenstates of
// commuting strings, and the weight-scaling gadget.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/graph.hpp"
#include "qbound/linalg.hpp"
#include "qbound/pauli.hpp"

namespace qbound {

// Graph with an edge wherever two strings anticommute. Pauli strings always
// either commute or anticommute, so this is total.
inline Graph frustration_graph(const std::vector<PauliString>& strings) {
  require(!strings.empty(), "frustration_graph needs at least one string");
  guard_that(strings.size() <= kMaxGraphVertices,
             "frustration_graph: too many strings");
  const int n = static_cast<int>(strings.size());
  for (const auto& s : strings)
    require(s.n == strings[0].n, "frustration_graph: mixed qubit counts");
  Graph g = graph_empty(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!commutes(strings[i], strings[j])) add_edge(g, i, j);
  return g;
}

namespace detail {

inline constexpr char kClassChar[4] = {'I', 'X', 'Y', 'Z'};

struct StandardSaurBuilder {
  const std::vector<std::pair<int, int>>* seq = nullptr;
  std::size_t seq_pos = 0;

  // Returns original-id -> string; all strings share one qubit count.
  std::map<int, PauliString> build(const Graph& cur, const std::vector<int>& ids) {
    std::map<int, PauliString> out;
    if (edge_count(cur) == 0) {
      for (int id : ids) out[id] = pauli_identity(0);
      return out;
    }

    int i0 = -1, j0 = -1;
    if (seq != nullptr && seq_pos < seq->size()) {
      const auto [u, v] = (*seq)[seq_pos++];
      const auto iu = std::find(ids.begin(), ids.end(), u);
      const auto iv = std::find(ids.begin(), ids.end(), v);
      if (iu == ids.end() || iv == ids.end())
        throw ParseError("edge sequence names a vertex not active at its step");
      i0 = static_cast<int>(iu - ids.begin());
      j0 = static_cast<int>(iv - ids.begin());
      if (!adjacent(cur, i0, j0))
        throw ParseError("edge sequence entry is not an edge of the active graph");
    } else {
      // Lexicographically smallest edge in original ids (ids are ascending).
      for (int a = 0; a < cur.n && i0 < 0; ++a)
        for (int b = a + 1; b < cur.n; ++b)
          if (adjacent(cur, a, b)) {
            i0 = a;
            j0 = b;
            break;
          }
    }

    const PauliInduced pi = pauli_induced_subgraph(cur, i0, j0);
    std::vector<int> sub_ids;
    for (int v : pi.vertices) sub_ids.push_back(ids[v]);
    std::map<int, PauliString> sub;
    if (!pi.vertices.empty()) {
      Graph sub_graph = pi.sub;
      sub = build(sub_graph, sub_ids);
    }
    const int q_sub = sub.empty() ? 0 : sub.begin()->second.n;

    std::vector<int> cls(cur.n, -1);
    for (int k = 0; k < 4; ++k)
      for (int v : pi.classes[k]) cls[v] = k;

    for (int v = 0; v < cur.n; ++v) {
      if (v == i0)
        out[ids[v]] = tensor(pauli_single(1, 0, 'X'), pauli_identity(q_sub));
      else if (v == j0)
        out[ids[v]] = tensor(pauli_single(1, 0, 'Z'), pauli_identity(q_sub));
      else
        out[ids[v]] = tensor(pauli_single(1, 0, kClassChar[cls[v]]), sub.at(ids[v]));
    }
    return out;
  }
};

}  // namespace detail

// Standard representation of G by the edge-removal recursion. The optional
// edge sequence (original vertex ids) fixes which edge each recursion level
// consumes; it may be a prefix, after which the lexicographically smallest
// active edge is used. Every listed edge must be an edge of the graph active
// at its step.
inline std::vector<PauliString> standard_saur(
    const Graph& g,
    const std::optional<std::vector<std::pair<int, int>>>& edge_sequence = {}) {
  detail::StandardSaurBuilder builder;
  if (edge_sequence) builder.seq = &*edge_sequence;
  std::vector<int> ids(g.n);
  for (int i = 0; i < g.n; ++i) ids[i] = i;
  const auto map = builder.build(g, ids);
  if (builder.seq != nullptr && builder.seq_pos < builder.seq->size())
    throw ParseError("edge sequence has entries left after the recursion finished");
  std::vector<PauliString> out;
  for (int i = 0; i < g.n; ++i) out.push_back(map.at(i));
  return out;
}

// Edge representation: one qubit per edge; vertex i carries X on edges it
// starts and Z on edges it ends. The default orientation directs each edge
// from its smaller to its larger endpoint, in lexicographic edge order. A
// custom orientation must list every edge exactly once (as directed pairs);
// its order fixes the qubit order.
inline std::vector<PauliString> edge_saur(
    const Graph& g,
    const std::optional<std::vector<std::pair<int, int>>>& orientation = {}) {
  std::vector<std::pair<int, int>> dir;
  if (orientation) {
    dir = *orientation;
    Graph seen = graph_empty(g.n);
    for (const auto& [t, h] : dir) {
      require(t >= 0 && t < g.n && h >= 0 && h < g.n && t != h,
              "orientation endpoint out of range");
      require(adjacent(g, t, h), "orientation lists a non-edge");
      require(!adjacent(seen, t, h), "orientation lists an edge twice");
      add_edge(seen, t, h);
    }
    require(edge_count(seen) == edge_count(g), "orientation must cover every edge");
  } else {
    dir = edge_list(g);
  }
  const int m = static_cast<int>(dir.size());
  guard_that(m <= kMaxQubits, "edge_saur: too many edges for one register");
  std::vector<PauliString> out;
  for (int v = 0; v < g.n; ++v) {
    PauliString s = pauli_identity(m);
    for (int e = 0; e < m; ++e) {
      const std::uint64_t bit = std::uint64_t(1) << e;
      if (dir[e].first == v) s.x |= bit;
      if (dir[e].second == v) s.z |= bit;
    }
    out.push_back(s);
  }
  return out;
}

// Complete representation: the standard one tensored with Z on a private
// auxiliary qubit per vertex, so every sign pattern of expectations is
// reachable with product states on the auxiliaries.
inline std::vector<PauliString> complete_saur(const Graph& g) {
  const auto base = standard_saur(g);
  const int q = base.empty() ? 0 : base[0].n;
  guard_that(q + g.n <= kMaxQubits, "complete_saur: register too long");
  std::vector<PauliString> out;
  for (int v = 0; v < g.n; ++v)
    out.push_back(tensor(base[v], pauli_single(g.n, v, 'Z')));
  return out;
}

// Representation kinds. U means squares equal the identity (otherwise they
// only need to be contractions); the trailing A drops the commutation
// requirement on non-adjacent pairs.
enum class RepKind { SAUR, SAURA, SAR, SARA };

inline bool rep_kind_unitary(RepKind k) {
  return k == RepKind::SAUR || k == RepKind::SAURA;
}
inline bool rep_kind_needs_commutation(RepKind k) {
  return k == RepKind::SAUR || k == RepKind::SAR;
}

struct RepViolation {
  std::string type;  // "hermitian", "square", "anticommute", "commute"
  int i = -1, j = -1;
  double value = 0.0;
};

struct RepReport {
  bool pass = true;
  std::vector<RepViolation> violations;
};

inline RepReport verify_representation(const std::vector<PauliString>& ops,
                                       const Graph& g, RepKind kind,
                                       double tol = 1e-9) {
  (void)tol;  // string checks are exact
  require(static_cast<int>(ops.size()) == g.n, "operator count != vertex count");
  RepReport rep;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      const bool comm = commutes(ops[i], ops[j]);
      if (adjacent(g, i, j) && comm)
        rep.violations.push_back({"anticommute", i, j, 1.0});
      else if (!adjacent(g, i, j) && !comm && rep_kind_needs_commutation(kind))
        rep.violations.push_back({"commute", i, j, 1.0});
    }
  rep.pass = rep.violations.empty();
  return rep;
}

inline RepReport verify_representation(const std::vector<Matrix>& ops,
                                       const Graph& g, RepKind kind,
                                       double tol = 1e-9) {
  require(static_cast<int>(ops.size()) == g.n, "operator count != vertex count");
  RepReport rep;
  const std::size_t d = ops.empty() ? 0 : ops[0].rows();
  for (int i = 0; i < g.n; ++i) {
    require(ops[i].rows() == d && ops[i].cols() == d, "operator dimension mismatch");
    Matrix herm = ops[i];
    herm -= ops[i].adjoint();
    if (herm.frob_norm() > tol)
      rep.violations.push_back({"hermitian", i, -1, herm.frob_norm()});
    const Matrix sq = ops[i] * ops[i];
    if (rep_kind_unitary(kind)) {
      Matrix dev = sq;
      dev -= Matrix::identity(d);
      if (dev.frob_norm() > tol)
        rep.violations.push_back({"square", i, -1, dev.frob_norm()});
    } else {
      const double excess = eigh(sq).values.back() - 1.0;
      if (excess > tol) rep.violations.push_back({"square", i, -1, excess});
    }
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      const Matrix ab = ops[i] * ops[j];
      const Matrix ba = ops[j] * ops[i];
      if (adjacent(g, i, j)) {
        Matrix anti = ab;
        anti += ba;
        if (anti.frob_norm() > tol)
          rep.violations.push_back({"anticommute", i, j, anti.frob_norm()});
      } else if (rep_kind_needs_commutation(kind)) {
        Matrix comm = ab;
        comm -= ba;
        if (comm.frob_norm() > tol)
          rep.violations.push_back({"commute", i, j, comm.frob_norm()});
      }
    }
  rep.pass = rep.violations.empty();
  return rep;
}

// Orthogonal representation: one real unit vector per vertex, orthogonal
// across every edge, plus a unit handle vector used by theta-style bounds.
struct OrthogonalRepresentation {
  std::vector<std::vector<double>> vectors;
  std::vector<double> handle;
};

// S_i = sum_k v_ik A_k with {A_k} a mutually anticommuting Pauli family:
// Hermitian, S_i^2 = |v_i|^2 = 1, and {S_i, S_j} = 2 <v_i, v_j>, so unit
// vectors orthogonal across edges give a SAURA of the graph.
inline std::vector<Matrix> saura_from_or(const OrthogonalRepresentation& orep) {
  require(!orep.vectors.empty(), "saura_from_or: empty representation");
  const std::size_t r = orep.vectors[0].size();
  for (const auto& v : orep.vectors) {
    require(v.size() == r, "saura_from_or: mixed vector dimensions");
    double norm2 = 0.0;
    for (double c : v) norm2 += c * c;
    require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-10,
            "saura_from_or: vectors must be unit length");
  }
  const auto family = anticommuting_family(static_cast<int>(r));
  std::vector<Matrix> basis;
  for (const auto& a : family) basis.push_back(to_matrix(a));
  const std::size_t d = basis[0].rows();
  std::vector<Matrix> out;
  for (const auto& v : orep.vectors) {
    Matrix s(d, d);
    for (std::size_t k = 0; k < r; ++k) {
      Matrix term = basis[k];
      term *= cplx(v[k], 0.0);
      s += term;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// The Lovasz umbrella for the pentagon: unit vectors with
//   v_i = (t, t' cos(2 pi i / 5), t' sin(2 pi i / 5)),  t = 5^{-1/4},
// orthogonal exactly across the edges {02, 24, 41, 13, 30}.
struct PentagonOr {
  OrthogonalRepresentation orep;
  Graph graph;
};

inline PentagonOr pentagon_or() {
  PentagonOr p;
  const double t = std::pow(5.0, -0.25);
  const double tp = std::sqrt(1.0 - t * t);
  for (int i = 1; i <= 5; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 5.0;
    p.orep.vectors.push_back({t, tp * std::cos(a), tp * std::sin(a)});
  }
  p.orep.handle = {1.0, 0.0, 0.0};
  p.graph = graph_from_edges(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
  return p;
}

// Joint eigenstate of pairwise commuting strings, built by projecting a
// computational basis state with (1 + e_i S_i)/2 factors; each sign e_i is
// chosen +1 when that eigenspace intersection stays nonempty, else -1.
struct IndependentSetState {
  PureState state;
  std::vector<int> signs;  // eigenvalue of each selected string
};

inline IndependentSetState independent_set_state(
    const std::vector<PauliString>& strings, const std::vector<int>& subset) {
  require(!strings.empty(), "independent_set_state: no strings");
  const int n = strings[0].n;
  guard_that(n <= kMaxStateQubits, "independent_set_state: register too large");
  for (int i : subset)
    require(i >= 0 && i < static_cast<int>(strings.size()),
            "independent_set_state: index out of range");
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      require(commutes(strings[subset[a]], strings[subset[b]]),
              "independent_set_state: strings must pairwise commute");

  const std::size_t dim = std::size_t(1) << n;
  for (std::size_t seed = 0; seed < dim; ++seed) {
    PureState psi(dim, cplx(0.0, 0.0));
    psi[seed] = 1.0;
    std::vector<int> signs;
    bool ok = true;
    for (int idx : subset) {
      const PureState sp = apply_pauli(strings[idx], psi);
      PureState plus(dim);
      for (std::size_t k = 0; k < dim; ++k) plus[k] = 0.5 * (psi[k] + sp[k]);
      if (state_norm(plus) > 1e-8) {
        psi = std::move(plus);
        signs.push_back(+1);
      } else {
        for (std::size_t k = 0; k < dim; ++k) psi[k] = 0.5 * (psi[k] - sp[k]);
        if (state_norm(psi) <= 1e-8) {
          ok = false;
          break;
        }
        signs.push_back(-1);
      }
      normalize_state(psi);
    }
    if (ok) return {std::move(psi), std::move(signs)};
  }
  throw NumericalError("independent_set_state: no basis seed survived projection");
}

// Weight-scaling gadget: P_i = S_i (x) Z(w_i) on a private auxiliary qubit,
// Z(w) = w X + sqrt(1 - w^2) Z, together with tau = rho (x) |+><+|^n, so that
// <P_i> on tau equals w_i <S_i> on rho.
struct ScaleGadget {
  std::vector<Matrix> operators;
  Matrix state;
};

inline ScaleGadget scale_gadget(const std::vector<PauliString>& strings,
                                const std::vector<double>& w, const Matrix& rho) {
  require(strings.size() == w.size(), "scale_gadget: weight count mismatch");
  require(!strings.empty(), "scale_gadget: no strings");
  const int n = strings[0].n;
  const int m = static_cast<int>(strings.size());
  guard_that(n + m <= 11, "scale_gadget: dense register too large");
  const std::size_t d = std::size_t(1) << n;
  require(rho.rows() == d && rho.cols() == d, "scale_gadget: state shape mismatch");
  for (double wi : w)
    require(std::abs(wi) <= 1.0, "scale_gadget weights must satisfy |w| <= 1");

  ScaleGadget gadget;
  const Matrix i2 = Matrix::identity(2);
  for (int i = 0; i < m; ++i) {
    Matrix zw(2, 2);
    const double c = std::sqrt(std::max(0.0, 1.0 - w[i] * w[i]));
    zw(0, 0) = c;
    zw(1, 1) = -c;
    zw(0, 1) = w[i];
    zw(1, 0) = w[i];
    Matrix p = to_matrix(strings[i]);
    for (int k = 0; k < m; ++k) p = kron(p, k == i ? zw : i2);
    gadget.operators.push_back(std::move(p));
  }
  Matrix plus(2, 2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  gadget.state = rho;
  for (int k = 0; k < m; ++k) gadget.state = kron(gadget.state, plus);
  return gadget;
}

}  // namespace qbound
