#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qbound/graph.hpp"
#include "qbound/pauli.hpp"
#include "qbound/represent.hpp"
#include "qbound/seesaw.hpp"

using namespace qbound;

namespace {

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

double recompute(const std::vector<PauliString>& strings,
                 const std::vector<double>& w, const PureState& psi) {
  double total = 0.0;
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const double e = expectation(strings[i], psi);
    total += w[i] * e * e;
  }
  return total;
}

void require_monotone(const std::vector<double>& history) {
  for (std::size_t i = 1; i < history.size(); ++i)
    REQUIRE(history[i] >= history[i - 1] - 1e-12);
}

}  // namespace

TEST_CASE("trivial see-saw instances") {
  SeeSawConfig cfg;
  cfg.restarts = 4;
  SECTION("single X reaches 1") {
    const auto r = seesaw_bilinear({parse_pauli("X")}, {1.0}, cfg);
    REQUIRE(r.value == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("a clique is capped at 1") {
    const auto strings =
        std::vector<PauliString>{parse_pauli("X"), parse_pauli("Y"),
                                 parse_pauli("Z")};
    for (const bool bilinear : {true, false}) {
      const auto r = bilinear ? seesaw_bilinear(strings, ones(3), cfg)
                              : seesaw_coefficient(strings, ones(3), cfg);
      REQUIRE(r.value == Catch::Approx(1.0).margin(1e-9));
    }
  }
  SECTION("zero weights give zero") {
    const auto r = seesaw_coefficient(
        {parse_pauli("X"), parse_pauli("Z")}, {0.0, 0.0}, cfg);
    REQUIRE(r.value == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("negative weights are rejected") {
    REQUIRE_THROWS_AS(seesaw_bilinear({parse_pauli("X")}, {-1.0}, cfg),
                      std::invalid_argument);
  }
}

TEST_CASE("anticycle lower bounds from the see-saw") {
  const Graph c7bar = graph_complement(graph_cycle(7));
  const auto strings = standard_saur(c7bar);
  SeeSawConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 3;

  SECTION("bilinear method beats the independence number on C7bar") {
    const auto r = seesaw_bilinear(strings, ones(7), cfg);
    const double paper = (9.0 + 4.0 * std::sqrt(2.0)) / 7.0;
    REQUIRE(r.value >= paper - 1e-6);
    REQUIRE(r.value == Catch::Approx(recompute(strings, ones(7), r.state))
                           .margin(1e-10));
    require_monotone(r.history);
  }
  SECTION("coefficient method agrees") {
    const auto r = seesaw_coefficient(strings, ones(7), cfg);
    REQUIRE(r.value >= (9.0 + 4.0 * std::sqrt(2.0)) / 7.0 - 1e-6);
    REQUIRE(r.coefficients.size() == 7);
    double norm = 0.0;
    for (double c : r.coefficients) norm += c * c;
    REQUIRE(norm == Catch::Approx(1.0).margin(1e-9));
    require_monotone(r.history);
  }
  SECTION("C9bar reaches the reported value") {
    const auto s9 = standard_saur(graph_complement(graph_cycle(9)));
    SeeSawConfig deep;
    deep.restarts = 48;
    deep.max_iters = 500;
    deep.seed = 17;
    const auto r = seesaw_coefficient(s9, ones(9), deep);
    REQUIRE(r.value == Catch::Approx(2.057505).margin(1e-4));
  }
}

TEST_CASE("cycles settle at their independence numbers") {
  SeeSawConfig cfg;
  cfg.restarts = 8;
  const auto c5 = standard_saur(graph_from_edges(
      5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}}));
  const auto r5 = seesaw_coefficient(c5, ones(5), cfg);
  REQUIRE(r5.value == Catch::Approx(2.0).margin(1e-8));

  const auto r7 = q_lower(standard_saur(graph_cycle(7)), ones(7), cfg);
  REQUIRE(r7.value == Catch::Approx(3.0).margin(1e-8));
  REQUIRE(r7.witness.size() == 3);
}

TEST_CASE("q_lower provenance and floors") {
  SeeSawConfig cfg;
  cfg.restarts = 6;
  SECTION("edgeless scalars add up") {
    const std::vector<PauliString> scalars(4, pauli_identity(0));
    const auto r = q_lower(scalars, ones(4), cfg);
    REQUIRE(r.value == Catch::Approx(4.0).margin(1e-12));
  }
  SECTION("anticycle keeps the see-saw provenance") {
    const auto strings = standard_saur(graph_complement(graph_cycle(7)));
    const auto r = q_lower(strings, ones(7), cfg);
    REQUIRE(r.value >= (9.0 + 4.0 * std::sqrt(2.0)) / 7.0 - 1e-6);
    REQUIRE(r.provenance.substr(0, 7) == "see-saw");
  }
  SECTION("weighted pentagon floor is the weighted independence number") {
    const Graph pent =
        graph_from_edges(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
    const auto strings = standard_saur(pent);
    const std::vector<double> w = {1.0, 3.0, 1.0, 1.0, 1.0};
    const auto r = q_lower(strings, w, cfg);
    REQUIRE(r.value >= 4.0 - 1e-9);
  }
}

TEST_CASE("see-saw on dense matrices finds the pentagon optimum") {
  const auto mats = saura_from_or(pentagon_or().orep);
  SeeSawConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 5;
  const auto r = seesaw_bilinear(mats, ones(5), cfg);
  REQUIRE(r.value == Catch::Approx(std::sqrt(5.0)).margin(1e-8));
  const auto r2 = seesaw_coefficient(mats, ones(5), cfg);
  REQUIRE(r2.value == Catch::Approx(std::sqrt(5.0)).margin(1e-8));
}

TEST_CASE("see-saw determinism per seed") {
  const auto strings = standard_saur(graph_complement(graph_cycle(7)));
  SeeSawConfig cfg;
  cfg.restarts = 5;
  cfg.seed = 99;
  const auto a = seesaw_coefficient(strings, ones(7), cfg);
  const auto b = seesaw_coefficient(strings, ones(7), cfg);
  REQUIRE(a.value == b.value);
  REQUIRE(a.iterations == b.iterations);
  REQUIRE(a.coefficients == b.coefficients);
}
