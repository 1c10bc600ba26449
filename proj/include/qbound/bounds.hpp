#pragma once

// Top-level calculus on top of the representation and solver layers:
//   - beta_estimate: certified [lower, upper] intervals for beta(G, w) with
//     graph-operation rules (union, join, cycle, alpha=theta coincidence,
//     user-declared lexicographic factorizations and product embeddings),
//   - gse_bound: Cauchy-Schwarz ground-state-energy bounds with weight
//     choices t in {0,1,2} plus a log-space coordinate-descent refinement,
//   - uncertainty_bound: additive uncertainty relations from theta,
//   - purity_bound / purity_check: purity-resolved bounds,
//   - ladder_dual_check / ladder_value_scan: the four-operator identity with
//     its PSD dual certificate,
//   - five_operator_family: a maximal anticommuting 2-qubit family whose
//     squared expectations sum to 1 on every pure state.
//
// Soundness convention: see-saw values never enter an upper bound; they are
// lower bounds or clearly tagged references.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/graph.hpp"
#include "qbound/linalg.hpp"
#include "qbound/pauli.hpp"
#include "qbound/represent.hpp"
#include "qbound/seesaw.hpp"
#include "qbound/theta.hpp"

namespace qbound {

struct DeclaredLexFactorization {
  Graph outer;  // F1 in G = F1[F2]
  Graph inner;  // F2
};

struct DeclaredProductEmbedding {
  Graph outer;
  Graph inner;
  std::vector<int> vertices;  // G = induced_subgraph(F1[F2], vertices)
};

struct BetaConfig {
  SeeSawConfig seesaw;
  std::optional<DeclaredLexFactorization> declared_lex;
  std::optional<DeclaredProductEmbedding> declared_embedding;
};

struct BetaEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_provenance;  // "see-saw" | "independent-set"
  std::string upper_provenance;  // "theta" | "join-rule" | "union-rule" |
                                 // "cycle-rule" | "alpha-equals-theta" |
                                 // "lexicographic-rule" | "subgraph-of-product"
  std::string upper_witness;     // decomposition note behind the upper bound
  Graph graph;
  std::vector<double> weights;
};

namespace detail {

struct UpperBound {
  double value = 0.0;
  std::string provenance;
  std::string witness;
};

inline bool same_adjacency(const Graph& a, const Graph& b) {
  return a.n == b.n && a.adj == b.adj;
}

inline bool all_ones(const std::vector<double>& w) {
  for (double x : w)
    if (x != 1.0) return false;
  return true;
}

inline bool is_complete_graph(const Graph& g) {
  for (int i = 0; i < g.n; ++i)
    if (degree(g, i) != g.n - 1) return false;
  return true;
}

inline std::string vertex_set_label(const std::vector<int>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vs[i]);
  }
  return s + "}";
}

inline std::optional<double> try_alpha(const Graph& g) {
  if (g.n > 32) return std::nullopt;  // keep branch-and-bound cheap here
  return weighted_independence(g).value;
}

// Certified upper bound on beta(G, w) with weights taken from g.weights.
// Minimum over the applicable rules; see-saw never enters.
inline UpperBound beta_upper(const Graph& g) {
  const std::vector<double>& w = g.weights;
  if (g.n == 1) return {w[0], "alpha-equals-theta", "single vertex"};
  if (edge_count(g) == 0) {
    double total = 0.0;
    for (double x : w) total += x;
    return {total, "alpha-equals-theta", "edgeless graph"};
  }

  // Disjoint components: beta adds up (marginals of any joint state are
  // states of the parts).
  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    double total = 0.0;
    std::string witness;
    for (const auto& comp : comps) {
      const UpperBound part = beta_upper(induced_subgraph(g, comp));
      total += part.value;
      if (!witness.empty()) witness += " + ";
      witness += vertex_set_label(comp) + ":" + part.provenance;
    }
    return {total, "union-rule", witness};
  }

  std::vector<UpperBound> cands;

  if (is_complete_graph(g)) {
    const double mx = *std::max_element(w.begin(), w.end());
    cands.push_back({mx, "alpha-equals-theta", "clique: alpha = theta = max w"});
  } else {
    const ThetaResult th = lovasz_theta(g);
    cands.push_back({th.value, "theta", ""});

    if (all_ones(w) && is_cycle_graph(g))
      cands.push_back({static_cast<double>(g.n / 2), "cycle-rule",
                       "beta(C_m) = alpha(C_m) = floor(m/2)"});

    // Join: complement components. Every vertex of one part sees every
    // vertex of the others, so beta is the maximum over parts.
    const auto co = connected_components(graph_complement(g));
    if (co.size() > 1 && all_ones(w)) {
      double best = 0.0;
      std::string witness;
      for (const auto& part : co) {
        const UpperBound u = beta_upper(induced_subgraph(g, part));
        best = std::max(best, u.value);
        if (!witness.empty()) witness += " | ";
        witness += vertex_set_label(part) + ":" + u.provenance;
      }
      cands.push_back({best, "join-rule", witness});
    }

    // Numerical coincidence alpha = theta pins beta by the sandwich.
    const auto alpha = try_alpha(g);
    if (alpha && th.value <= *alpha + 1e-8)
      cands.push_back(
          {*alpha, "alpha-equals-theta", "alpha matches theta within 1e-8"});
  }

  UpperBound best = cands.front();
  for (const auto& c : cands)
    if (c.value < best.value) best = c;
  return best;
}

inline std::vector<double> unit_weights(int n) {
  return std::vector<double>(static_cast<std::size_t>(n), 1.0);
}

inline Graph with_weights(Graph g, const std::vector<double>& w) {
  require(static_cast<int>(w.size()) == g.n, "weight count mismatch");
  for (double x : w) require(x >= 0.0, "weights must be nonnegative");
  g.weights = w;
  return g;
}

inline UpperBound beta_upper_with_declarations(const Graph& g,
                                               const BetaConfig& cfg) {
  UpperBound best = beta_upper(g);
  if (!cfg.declared_lex && !cfg.declared_embedding) return best;
  require(all_ones(g.weights),
          "declared factorization rules apply to unweighted graphs only");

  const auto product_upper = [](const Graph& outer, const Graph& inner) {
    const UpperBound u1 = beta_upper(with_weights(outer, unit_weights(outer.n)));
    const UpperBound u2 = beta_upper(with_weights(inner, unit_weights(inner.n)));
    return u1.value * u2.value;
  };

  if (cfg.declared_lex) {
    const auto& d = *cfg.declared_lex;
    require(same_adjacency(lexicographic_product(d.outer, d.inner), g),
            "declared lexicographic factorization does not match the graph");
    const double v = product_upper(d.outer, d.inner);
    if (v < best.value)
      best = {v, "lexicographic-rule",
              "G = F1[F2], |F1| = " + std::to_string(d.outer.n) +
                  ", |F2| = " + std::to_string(d.inner.n)};
  }
  if (cfg.declared_embedding) {
    const auto& d = *cfg.declared_embedding;
    require(same_adjacency(
                induced_subgraph(lexicographic_product(d.outer, d.inner),
                                 d.vertices),
                g),
            "declared product embedding does not match the graph");
    const double v = product_upper(d.outer, d.inner);
    if (v < best.value)
      best = {v, "subgraph-of-product",
              "induced subgraph of F1[F2] on " +
                  std::to_string(d.vertices.size()) + " vertices"};
  }
  return best;
}

inline double expect_real(const Matrix& a, const PureState& psi) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s += std::conj(psi[i]) * a(i, j) * psi[j];
  return s.real();
}

inline double expect_real_density(const Matrix& a, const Matrix& rho) {
  return trace_product(a, rho).real();
}

}  // namespace detail

inline BetaEstimate beta_estimate(const Graph& g,
                                  const std::vector<double>& weights = {},
                                  const BetaConfig& cfg = {}) {
  const Graph gw =
      weights.empty() ? g : detail::with_weights(g, weights);
  const detail::UpperBound ub = detail::beta_upper_with_declarations(gw, cfg);

  const std::vector<PauliString> rep = standard_saur(gw);
  const QLowerResult ql = q_lower(rep, gw.weights, cfg.seesaw);

  BetaEstimate est;
  est.lower = ql.value;
  est.upper = ub.value;
  est.lower_provenance =
      ql.provenance.rfind("see-saw", 0) == 0 ? "see-saw" : "independent-set";
  est.upper_provenance = ub.provenance;
  est.upper_witness = ub.witness;
  est.graph = gw;
  est.weights = gw.weights;
  return est;
}

// ---------------------------------------------------------------------------
// Ground-state-energy bounds.

struct GseBoundRow {
  std::string label;  // "t=0" | "t=1" | "t=2" | "optimized"
  std::vector<double> weights;
  double q_upper = 0.0;  // certified upper bound on Q(G, w)
  std::string upper_provenance;
  std::string upper_witness;
  double bound = 0.0;  // sqrt((sum a_i^2 / w_i) * q_upper)
  bool best = false;
};

struct GseBoundReport {
  std::vector<GseBoundRow> rows;
  double best_bound = 0.0;
  // Reference only: the bound formula evaluated with the see-saw lower
  // estimate of beta instead of a certified upper bound.
  double reference_bound = 0.0;
  std::string reference_note =
      "see-saw reference value; not a certified bound";
  Graph graph;
  std::vector<double> coefficients;
  std::vector<PauliString> strings;
};

inline GseBoundReport gse_bound(
    const std::vector<std::pair<double, PauliString>>& terms,
    const SeeSawConfig& seesaw_cfg = {}) {
  require(!terms.empty(), "gse_bound: empty term list");
  std::vector<double> a;
  std::vector<PauliString> strings;
  for (const auto& [c, p] : terms)
    if (c != 0.0) {
      a.push_back(c);
      strings.push_back(p);
    }
  require(!a.empty(), "gse_bound: all coefficients are zero");
  const std::size_t m = a.size();

  GseBoundReport rep;
  rep.graph = frustration_graph(strings);
  rep.coefficients = a;
  rep.strings = strings;

  const auto bound_for = [&](const std::vector<double>& w,
                             const detail::UpperBound& u) {
    double ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) ratio += a[i] * a[i] / w[i];
    return std::sqrt(ratio * u.value);
  };
  const auto make_row = [&](const std::string& label,
                            const std::vector<double>& w) {
    const detail::UpperBound u =
        detail::beta_upper(detail::with_weights(rep.graph, w));
    return GseBoundRow{label,     w,           u.value, u.provenance,
                       u.witness, bound_for(w, u), false};
  };

  for (int t = 0; t <= 2; ++t) {
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i)
      w[i] = t == 0 ? 1.0 : std::pow(std::abs(a[i]), t);
    rep.rows.push_back(make_row("t=" + std::to_string(t), w));
  }

  // Log-space coordinate descent from the best t-row.
  std::size_t start = 0;
  for (std::size_t r = 1; r < rep.rows.size(); ++r)
    if (rep.rows[r].bound < rep.rows[start].bound) start = r;
  std::vector<double> w = rep.rows[start].weights;
  double cur = rep.rows[start].bound;
  for (int it = 0; it < 200; ++it) {
    const std::size_t i = it % m;
    const double delta = 0.5 * std::pow(0.985, it);
    for (const double step : {delta, -delta}) {
      std::vector<double> trial = w;
      trial[i] *= std::exp(step);
      const detail::UpperBound u =
          detail::beta_upper(detail::with_weights(rep.graph, trial));
      const double b = bound_for(trial, u);
      if (b < cur - 1e-15) {
        w = std::move(trial);
        cur = b;
        break;
      }
    }
  }
  rep.rows.push_back(make_row("optimized", w));

  std::size_t best = 0;
  for (std::size_t r = 1; r < rep.rows.size(); ++r)
    if (rep.rows[r].bound < rep.rows[best].bound) best = r;
  rep.rows[best].best = true;
  rep.best_bound = rep.rows[best].bound;

  double suma2 = 0.0;
  for (double c : a) suma2 += c * c;
  const QLowerResult ql =
      q_lower(standard_saur(rep.graph), detail::unit_weights(rep.graph.n),
              seesaw_cfg);
  rep.reference_bound = std::sqrt(suma2 * ql.value);
  return rep;
}

// ---------------------------------------------------------------------------
// Uncertainty bounds.

struct UncertaintyReport {
  double bound = 0.0;       // lambda_min(sum A_i^2) - theta(G, lambda)
  double lambda_min = 0.0;  // smallest eigenvalue of sum A_i^2
  double theta = 0.0;
  std::vector<double> lambda;  // (max |eigenvalue| of A_i)^2 per observable
  bool has_beta_rule = false;  // a rule certified beta(G, lambda) below theta
  double beta_rule_bound = 0.0;
  std::string beta_rule_provenance;
};

inline UncertaintyReport uncertainty_report(const std::vector<Matrix>& obs,
                                            const Graph& g) {
  require(static_cast<int>(obs.size()) == g.n,
          "uncertainty_report: one observable per vertex required");
  UncertaintyReport rep;
  std::vector<Matrix> scaled;
  const std::size_t d = obs[0].rows();
  Matrix sumsq(d, d);
  for (const auto& a : obs) {
    require(a.rows() == d && a.cols() == d,
            "uncertainty_report: dimension mismatch");
    const EighResult e = eigh(a);
    const double top =
        std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    require(top > 0.0, "uncertainty_report: zero observable");
    rep.lambda.push_back(top * top);
    scaled.push_back(a * cplx(1.0 / top, 0.0));
    sumsq += a * a;
  }
  const RepReport check =
      verify_representation(scaled, g, RepKind::SARA, 1e-8);
  require(check.pass,
          "uncertainty_report: observables are not a SARA of the graph");

  rep.lambda_min = min_eigenvalue(sumsq);
  rep.theta = lovasz_theta(g, rep.lambda).value;
  rep.bound = rep.lambda_min - rep.theta;

  const detail::UpperBound u =
      detail::beta_upper(detail::with_weights(g, rep.lambda));
  if (u.provenance != "theta" && u.value < rep.theta - 1e-9) {
    rep.has_beta_rule = true;
    rep.beta_rule_bound = rep.lambda_min - u.value;
    rep.beta_rule_provenance = u.provenance;
  }
  return rep;
}

// Dichotomic shortcut: Pauli strings square to the identity, so
// lambda_min(sum S_i^2) is just the number of observables.
inline UncertaintyReport uncertainty_report(
    const std::vector<PauliString>& obs, const Graph& g) {
  require(static_cast<int>(obs.size()) == g.n,
          "uncertainty_report: one observable per vertex required");
  const RepReport check = verify_representation(obs, g, RepKind::SARA);
  require(check.pass,
          "uncertainty_report: observables are not a SARA of the graph");
  UncertaintyReport rep;
  rep.lambda.assign(obs.size(), 1.0);
  rep.lambda_min = static_cast<double>(obs.size());
  rep.theta = lovasz_theta(g).value;
  rep.bound = rep.lambda_min - rep.theta;
  const detail::UpperBound u =
      detail::beta_upper(detail::with_weights(g, rep.lambda));
  if (u.provenance != "theta" && u.value < rep.theta - 1e-9) {
    rep.has_beta_rule = true;
    rep.beta_rule_bound = rep.lambda_min - u.value;
    rep.beta_rule_provenance = u.provenance;
  }
  return rep;
}

inline double uncertainty_bound(const std::vector<Matrix>& obs,
                                const Graph& g) {
  return uncertainty_report(obs, g).bound;
}

inline double uncertainty_bound(const std::vector<PauliString>& obs,
                                const Graph& g) {
  return uncertainty_report(obs, g).bound;
}

// ---------------------------------------------------------------------------
// Purity bounds.

inline double purity_bound(const Graph& g, int d, double purity,
                           const std::vector<double>& weights = {}) {
  require(d >= 1, "purity_bound: dimension must be positive");
  require(purity >= 1.0 / d - 1e-12 && purity <= 1.0 + 1e-12,
          "purity_bound: purity out of range");
  const double th = lovasz_theta(g, weights).value;
  return std::min((d * purity - 1.0) * th, th);
}

struct PurityCheckReport {
  double lhs = 0.0;     // sum_i <S_i>^2 at the given state
  double purity = 0.0;  // tr rho^2
  double bound = 0.0;   // min{(d purity - 1) theta, theta}
  double theta = 0.0;
  int d = 0;
  bool saura = false;             // family verifies as a SARA with S^2 = 1
  bool trace_orthogonal = false;  // tr(S_i S_j) = d delta_ij
  bool applicable = false;        // either hypothesis holds
  bool pass = false;              // lhs <= bound + 1e-9 (or not applicable)
  Graph graph;
};

inline PurityCheckReport purity_check(const std::vector<Matrix>& ops,
                                      const Matrix& rho) {
  require(!ops.empty(), "purity_check: need at least one operator");
  const std::size_t d = ops[0].rows();
  require(rho.rows() == d && rho.cols() == d, "purity_check: state dimension");

  PurityCheckReport rep;
  rep.d = static_cast<int>(d);

  // Edges where operators anticommute; more edges mean a tighter theta.
  Graph g = graph_empty(static_cast<int>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const Matrix anti = ops[i] * ops[j] + ops[j] * ops[i];
      if (anti.max_abs() < 1e-9)
        add_edge(g, static_cast<int>(i), static_cast<int>(j));
    }
  rep.graph = g;

  rep.saura = verify_representation(ops, g, RepKind::SAURA, 1e-8).pass;
  rep.trace_orthogonal = true;
  for (std::size_t i = 0; i < ops.size() && rep.trace_orthogonal; ++i)
    for (std::size_t j = i; j < ops.size(); ++j) {
      const cplx t = trace_product(ops[i], ops[j]);
      const cplx want = i == j ? cplx(static_cast<double>(d), 0.0) : cplx(0.0);
      if (std::abs(t - want) > 1e-8) {
        rep.trace_orthogonal = false;
        break;
      }
    }
  rep.applicable = rep.saura || rep.trace_orthogonal;

  rep.purity = purity(rho);
  rep.theta = lovasz_theta(g).value;
  rep.bound = std::min((d * rep.purity - 1.0) * rep.theta, rep.theta);
  rep.lhs = 0.0;
  for (const auto& a : ops) {
    const double e = detail::expect_real_density(a, rho);
    rep.lhs += e * e;
  }
  rep.pass = !rep.applicable || rep.lhs <= rep.bound + 1e-9;
  return rep;
}

inline PurityCheckReport purity_check(const std::vector<PauliString>& strings,
                                      const Matrix& rho) {
  std::vector<Matrix> ops;
  for (const auto& p : strings) {
    guard_that(p.n <= kMaxDenseQubits, "purity_check: too many qubits");
    ops.push_back(to_matrix(p));
  }
  return purity_check(ops, rho);
}

// ---------------------------------------------------------------------------
// Ladder identity: max_rho [<1Y>^2 + <XX>^2 + <ZZ>^2 - <YY>^2] = 1.

// PSD dual certificate 1 - XZXZ - Y1Y1 - ZXZX - W with
// W = 1Y1Y + XXXX + ZZZZ - YYYY.
inline double ladder_dual_min_eigenvalue() {
  Matrix k = Matrix::identity(16);
  for (const char* s : {"XZXZ", "YIYI", "ZXZX", "IYIY", "XXXX", "ZZZZ"})
    k -= to_matrix(parse_pauli(s));
  k += to_matrix(parse_pauli("YYYY"));
  return min_eigenvalue(k);
}

inline bool ladder_dual_check() { return ladder_dual_min_eigenvalue() >= -1e-9; }

inline double ladder_value(const PureState& psi) {
  static const Matrix iy = to_matrix(parse_pauli("IY"));
  static const Matrix xx = to_matrix(parse_pauli("XX"));
  static const Matrix zz = to_matrix(parse_pauli("ZZ"));
  static const Matrix yy = to_matrix(parse_pauli("YY"));
  const double a = detail::expect_real(iy, psi);
  const double b = detail::expect_real(xx, psi);
  const double c = detail::expect_real(zz, psi);
  const double e = detail::expect_real(yy, psi);
  return a * a + b * b + c * c - e * e;
}

struct LadderScanResult {
  double max_value = 0.0;
  double bell_value = 0.0;    // at (|00> + |11>)/sqrt 2
  double seesaw_value = 0.0;  // at the see-saw optimum of the positive part
  int samples = 0;
};

inline LadderScanResult ladder_value_scan(int samples, std::uint64_t seed) {
  require(samples >= 0, "ladder_value_scan: negative sample count");
  LadderScanResult out;
  out.samples = samples;

  PureState bell(4, cplx(0.0));
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  out.bell_value = ladder_value(bell);

  // See-saw on the positive part {1Y, XX, ZZ} steers the scan toward the
  // interesting region; the indefinite value is evaluated afterwards.
  const std::vector<Matrix> positive = {to_matrix(parse_pauli("IY")),
                                        to_matrix(parse_pauli("XX")),
                                        to_matrix(parse_pauli("ZZ"))};
  SeeSawConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 200;
  cfg.seed = seed;
  const SeeSawResult ss = seesaw_coefficient(positive, {}, cfg);
  out.seesaw_value = ladder_value(ss.state);

  out.max_value = std::max(out.bell_value, out.seesaw_value);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const PureState psi = random_pure_state(4, rng);
    out.max_value = std::max(out.max_value, ladder_value(psi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Five-operator identity: a maximal anticommuting family of two-qubit Pauli
// strings; the squared expectations sum to exactly 1 on every pure state.

inline std::vector<PauliString> five_operator_family() {
  return {parse_pauli("IX"), parse_pauli("IZ"), parse_pauli("XY"),
          parse_pauli("YY"), parse_pauli("ZY")};
}

inline double five_operator_identity_value(const PureState& psi) {
  double total = 0.0;
  for (const auto& p : five_operator_family()) {
    const double e = detail::expect_real(to_matrix(p), psi);
    total += e * e;
  }
  return total;
}

}  // namespace qbound
