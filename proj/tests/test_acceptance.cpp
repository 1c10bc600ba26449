// Acceptance suite: the ten headline results, one pass/fail line each.
// Every bound checked here is the certified kind: see-saw values only ever
// appear on the lower side of a comparison.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "graph_corpus.hpp"
#include "qbound/bounds.hpp"
#include "qbound/graph.hpp"
#include "qbound/lanczos.hpp"
#include "qbound/linalg.hpp"
#include "qbound/pauli.hpp"
#include "qbound/qupper.hpp"
#include "qbound/represent.hpp"
#include "qbound/seesaw.hpp"
#include "qbound/theta.hpp"

using namespace qbound;

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", v);
  return buf;
}

double theta_anticycle_closed(int m) {
  return 1.0 + 1.0 / std::cos(std::numbers::pi / m);
}

SeeSawConfig cfg(int restarts, int iters, std::uint64_t seed = 3) {
  SeeSawConfig c;
  c.restarts = restarts;
  c.max_iters = iters;
  c.seed = seed;
  return c;
}

// 1. C7bar counterexample: see-saw beats the independence number.
Check criterion_c7bar_seesaw() {
  Check c;
  const Graph g = graph_complement(graph_cycle(7));
  const QLowerResult ql = q_lower(standard_saur(g), {}, cfg(8, 500));
  const double ref = (9.0 + 4.0 * std::sqrt(2.0)) / 7.0;
  c.expect(ql.value >= ref - 1e-6, "lower " + fmt(ql.value) + " < (9+4sqrt2)/7 - 1e-6");
  c.expect(ql.value > 2.0, "lower not strictly above alpha = 2");
  c.note("lower = " + fmt(ql.value));
  return c;
}

// 2. Lovasz numbers of C7bar and C5 from the built-in SDP solver.
Check criterion_theta_values() {
  Check c;
  const double t7 = lovasz_theta(graph_complement(graph_cycle(7))).value;
  const double t5 = lovasz_theta(graph_cycle(5)).value;
  c.expect(std::abs(t7 - theta_anticycle_closed(7)) <= 1e-5,
           "theta(C7bar) = " + fmt(t7));
  c.expect(std::abs(t5 - std::sqrt(5.0)) <= 1e-6, "theta(C5) = " + fmt(t5));
  c.note("theta(C7bar) = " + fmt(t7) + ", theta(C5) = " + fmt(t5));
  return c;
}

// 3. Pentagon SAURA witness at rho = (1 + X)/2.
Check criterion_pentagon_witness() {
  Check c;
  const std::vector<Matrix> ops = saura_from_or(pentagon_or().orep);
  Matrix rho = Matrix::identity(2);
  rho += to_matrix(parse_pauli("X"));
  rho *= cplx(0.5, 0.0);
  double lhs = 0.0;
  for (const auto& s : ops) {
    const double e = trace_product(s, rho).real();
    lhs += e * e;
  }
  c.expect(std::abs(lhs - std::sqrt(5.0)) <= 1e-10,
           "sum of squares = " + fmt(lhs) + " vs sqrt 5");
  c.note("sum <S_i>^2 = " + fmt(lhs));
  return c;
}

// 4. 14-qubit Hamiltonian: Lanczos extremes vs sqrt(7 beta_lower(C7bar)).
Check criterion_h14() {
  Check c;
  const Graph g = graph_complement(graph_cycle(7));
  std::vector<std::pair<double, PauliString>> terms;
  for (const auto& s : edge_saur(g)) terms.push_back({1.0, s});
  const ExtremeEigs eigs =
      extreme_eigs(PauliSumOperator(14, terms), WhichEigs::Both, 1e-9);
  const double ref = 1.0 + 2.0 * std::sqrt(2.0);
  c.expect(std::abs(eigs.max.value - ref) <= 1e-5,
           "lambda_max = " + fmt(eigs.max.value));
  const double lower = q_lower(standard_saur(g), {}, cfg(8, 500)).value;
  c.expect(std::abs(std::sqrt(7.0 * lower) - eigs.max.value) <= 1e-5,
           "sqrt(7 beta_lower) = " + fmt(std::sqrt(7.0 * lower)));
  c.note("lambda_max = " + fmt(eigs.max.value) +
         ", sqrt(7 beta_lower) = " + fmt(std::sqrt(7.0 * lower)));
  return c;
}

// 5. C9bar: see-saw value on the standard SAUR and the certified GSE bound.
Check criterion_c9bar() {
  Check c;
  const Graph g = graph_complement(graph_cycle(9));
  const auto strings = standard_saur(g);
  const QLowerResult ql = q_lower(strings, {}, cfg(48, 500));
  c.expect(std::abs(ql.value - 2.057505) <= 1e-4,
           "see-saw = " + fmt(ql.value) + " vs 2.057505");
  const double certified = std::sqrt(9.0 * lovasz_theta(g).value);
  c.expect(certified >= 4.303201,
           "sqrt(9 theta) = " + fmt(certified) + " < 4.303201");
  c.note("see-saw = " + fmt(ql.value) + " on the " +
         std::to_string(std::size_t(1) << strings[0].n) +
         "-dim standard representation, sqrt(9 theta) = " + fmt(certified));
  return c;
}

// 6. Exact beta for odd cycles via the cycle rule.
Check criterion_cycles() {
  Check c;
  BetaConfig bc;
  bc.seesaw = cfg(4, 300);
  const BetaEstimate c5 = beta_estimate(graph_cycle(5), {}, bc);
  c.expect(std::abs(c5.lower - 2.0) <= 1e-8, "C5 lower = " + fmt(c5.lower));
  c.expect(c5.upper == 2.0 && c5.upper_provenance == "cycle-rule",
           "C5 upper not exactly 2 by the cycle rule");
  const BetaEstimate c7 = beta_estimate(graph_cycle(7), {}, bc);
  c.expect(std::abs(c7.lower - 3.0) <= 1e-8, "C7 lower = " + fmt(c7.lower));
  c.expect(c7.upper == 3.0 && c7.upper_provenance == "cycle-rule",
           "C7 upper not exactly 3 by the cycle rule");
  c.note("beta(C5) = 2, beta(C7) = 3, both ends");
  return c;
}

// 7. Ladder identity: PSD dual certificate and the value-1 ceiling.
Check criterion_ladder() {
  Check c;
  const double mineig = ladder_dual_min_eigenvalue();
  c.expect(mineig >= -1e-9, "dual min eigenvalue = " + fmt(mineig));
  const LadderScanResult scan = ladder_value_scan(10000, 7);
  c.expect(std::abs(scan.bell_value - 1.0) <= 1e-12,
           "bell value = " + fmt(scan.bell_value));
  c.expect(scan.max_value <= 1.0 + 1e-9,
           "random-state maximum = " + fmt(scan.max_value));
  c.note("dual min eig = " + fmt(mineig) + ", max over 10^4 states = " +
         fmt(scan.max_value));
  return c;
}

// 8. Five-operator identity on random pure two-qubit states.
Check criterion_five_operators() {
  Check c;
  Rng rng(5);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const PureState psi = random_pure_state(4, rng);
    worst = std::max(worst, std::abs(five_operator_identity_value(psi) - 1.0));
  }
  c.expect(worst <= 1e-9, "max deviation from 1 is " + fmt(worst));
  c.note("max |value - 1| = " + fmt(worst) + " over 100 states");
  return c;
}

// 9. Property suites over the connected <= 7-vertex corpus plus the
//    rule-vs-see-saw and relaxation-ordering spot checks.
Check criterion_property_suites() {
  Check c;
  const auto corpus = qbound::testing::connected_graph_corpus(7);
  const auto counts = qbound::testing::corpus_counts(corpus, 7);
  const std::vector<int> expected = {0, 1, 1, 2, 6, 21, 112, 853};
  c.expect(counts == expected, "connected corpus counts mismatch");

  const SeeSawConfig light = cfg(2, 30);
  int sandwich_checked = 0;
  for (const Graph& g : corpus) {
    const auto rep = standard_saur(g);
    if (frustration_graph(rep).adj != g.adj) {
      c.expect(false, "frustration(standard_saur) != id on an n=" +
                          std::to_string(g.n) + " graph");
      break;
    }
    const double alpha = independence_number(g);
    const double lower = q_lower(rep, {}, light).value;
    const detail::UpperBound upper = detail::beta_upper(g);
    const double theta = lovasz_theta(g).value;
    const bool ok = alpha <= lower + 1e-9 && lower <= upper.value + 1e-6 &&
                    upper.value <= theta + 1e-6;
    if (!ok) {
      c.expect(false, "sandwich violated on an n=" + std::to_string(g.n) +
                          " graph: alpha=" + fmt(alpha) + " lower=" +
                          fmt(lower) + " upper=" + fmt(upper.value) +
                          " theta=" + fmt(theta));
      break;
    }
    ++sandwich_checked;
  }

  // Graph-operation rules vs direct see-saw.
  BetaConfig bc;
  bc.seesaw = cfg(4, 60);
  const Graph c5 = graph_cycle(5);
  const Graph k2 = graph_complete(2);
  const BetaEstimate join = beta_estimate(graph_join(c5, k2), {}, bc);
  c.expect(join.upper_provenance == "join-rule" &&
               std::abs(join.upper - join.lower) <= 1e-6,
           "join rule vs see-saw: [" + fmt(join.lower) + ", " +
               fmt(join.upper) + "]");
  const BetaEstimate uni = beta_estimate(disjoint_union(c5, k2), {}, bc);
  c.expect(uni.upper_provenance == "union-rule" &&
               std::abs(uni.upper - uni.lower) <= 1e-4,
           "union rule vs see-saw: [" + fmt(uni.lower) + ", " +
               fmt(uni.upper) + "]");
  BetaConfig lex = bc;
  lex.declared_lex = DeclaredLexFactorization{c5, k2};
  const BetaEstimate prod =
      beta_estimate(lexicographic_product(c5, k2), {}, lex);
  c.expect(prod.upper_provenance == "lexicographic-rule" &&
               prod.lower >= 2.0 - 1e-6 && prod.upper == 2.0,
           "lexicographic rule vs see-saw: [" + fmt(prod.lower) + ", " +
               fmt(prod.upper) + "]");

  // Relaxation ordering.
  const std::vector<PauliString> xz = {parse_pauli("X"), parse_pauli("Z")};
  const auto pentagon = standard_saur(c5);
  const double lower_xz = q_lower(xz, {}, cfg(4, 60)).value;
  const double ppt_xz = q_upper_ppt(xz).value;
  const double th_xz = q_upper_threehalf(xz).value;
  c.expect(lower_xz <= ppt_xz + 1e-8 && th_xz <= ppt_xz + 1e-8,
           "relaxation ordering on {X, Z}");
  const double lower_c5 = q_lower(pentagon, {}, cfg(4, 60)).value;
  const double ppt_c5 = q_upper_ppt(pentagon).value;
  const double th_c5 = q_upper_threehalf(pentagon).value;
  c.expect(lower_c5 <= ppt_c5 + 1e-8 && th_c5 <= ppt_c5 + 1e-8,
           "relaxation ordering on the pentagon");

  c.note("sandwich + round-trip on " + std::to_string(sandwich_checked) +
         " connected graphs; rules and relaxation ordering spot-checked");
  return c;
}

// 10. GSE soundness fuzz: certified bounds dominate the spectral radius.
Check criterion_gse_fuzz() {
  Check c;
  Rng rng(29);
  const SeeSawConfig light = cfg(2, 40);
  double worst_margin = 1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const int nq = 4 + static_cast<int>(rng.below(5));  // 4..8 qubits
    const int m = 1 + static_cast<int>(rng.below(5));   // 1..5 terms
    std::vector<std::pair<double, PauliString>> terms;
    for (int k = 0; k < m; ++k) {
      std::string word;
      do {
        word.clear();
        for (int q = 0; q < nq; ++q) word += "IXYZ"[rng.below(4)];
      } while (word.find_first_not_of('I') == std::string::npos);
      double coeff = 0.0;
      while (coeff == 0.0) coeff = 2.0 * rng.uniform() - 1.0;
      terms.push_back({2.0 * coeff, parse_pauli(word)});
    }
    const GseBoundReport rep = gse_bound(terms, light);

    const std::size_t dim = std::size_t(1) << nq;
    Matrix h(dim, dim);
    for (std::size_t i = 0; i < rep.strings.size(); ++i)
      h += to_matrix(rep.strings[i]) * cplx(rep.coefficients[i], 0.0);
    const EighResult e = eigh(h);
    const double radius =
        std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    worst_margin = std::min(worst_margin, rep.best_bound - radius);
    if (radius > rep.best_bound + 1e-8) {
      c.expect(false, "trial " + std::to_string(trial) + ": radius " +
                          fmt(radius) + " exceeds bound " +
                          fmt(rep.best_bound));
      break;
    }
  }
  c.note("50 random Hamiltonians; smallest bound margin = " +
         fmt(worst_margin));
  return c;
}

struct Criterion {
  const char* name;
  double time_limit_s;
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C7bar see-saw counterexample", 5.0, criterion_c7bar_seesaw},
      {"Lovasz numbers of C7bar and C5", 10.0, criterion_theta_values},
      {"pentagon SAURA witness", 5.0, criterion_pentagon_witness},
      {"14-qubit Hamiltonian extremes", 30.0, criterion_h14},
      {"C9bar see-saw and certified bound", 60.0, criterion_c9bar},
      {"odd-cycle beta is exact", 30.0, criterion_cycles},
      {"ladder identity", 30.0, criterion_ladder},
      {"five-operator identity", 5.0, criterion_five_operators},
      {"property suites on the graph corpus", 600.0, criterion_property_suites},
      {"GSE soundness fuzz", 300.0, criterion_gse_fuzz},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > criteria[i].time_limit_s) {
      c.pass = false;
      c.detail += "; exceeded time limit of " +
                  std::to_string(criteria[i].time_limit_s) + " s";
    }
    if (!c.pass) ++failures;
    std::printf("criterion %2zu [%s] %s (%.2f s)%s%s\n", i + 1,
                c.pass ? "PASS" : "FAIL", criteria[i].name, secs,
                c.detail.empty() ? "" : ": ", c.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
