#pragma once

// Text and JSON formats shared by the CLI and any external tooling:
//   - Pauli text: one string per line, optional '+'/'-' prefix, characters
//     I/X/Y/Z, uniform length per file; '#' begins a comment line.
//   - Hamiltonian text: lines of "coefficient whitespace pauli-word",
//     same comment and uniformity rules.
//   - Graph JSON: {"n": int, "edges": [[i,j],...], "weights": [float,...]?}
//     with 0-indexed unordered edge pairs; duplicates and loops rejected.
//   - Report JSON for representation checks, beta estimates, GSE bounds,
//     and SDP instance dumps.
// JSON objects serialize with alphabetically ordered keys, so equal inputs
// (and seeds) produce byte-identical output.

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qbound/bounds.hpp"
#include "qbound/common.hpp"
#include "qbound/graph.hpp"
#include "qbound/pauli.hpp"
#include "qbound/represent.hpp"
#include "qbound/sdp.hpp"

namespace qbound {

using Json = nlohmann::json;

namespace detail {

inline std::string strip(const std::string& line) {
  const auto a = line.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = line.find_last_not_of(" \t\r\n");
  return line.substr(a, b - a + 1);
}

inline bool skippable(const std::string& stripped) {
  return stripped.empty() || stripped[0] == '#';
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pauli text.

inline std::vector<PauliString> parse_pauli_lines(std::istream& in) {
  std::vector<PauliString> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::strip(line);
    if (detail::skippable(s)) continue;
    PauliString p = parse_pauli(s);
    if (!out.empty() && p.n != out.front().n)
      throw ParseError("line " + std::to_string(lineno) +
                       ": pauli strings must share one length");
    out.push_back(p);
  }
  if (out.empty()) throw ParseError("no pauli strings found");
  return out;
}

inline std::vector<PauliString> parse_pauli_text(const std::string& text) {
  std::istringstream in(text);
  return parse_pauli_lines(in);
}

inline std::string format_pauli_lines(const std::vector<PauliString>& strings) {
  std::string out;
  for (const auto& p : strings) {
    out += to_string(p);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hamiltonian text.

inline std::vector<std::pair<double, PauliString>> parse_hamiltonian_lines(
    std::istream& in) {
  std::vector<std::pair<double, PauliString>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::strip(line);
    if (detail::skippable(s)) continue;
    std::istringstream row(s);
    double coeff = 0.0;
    std::string word, extra;
    if (!(row >> coeff >> word) || (row >> extra))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"coefficient pauli-word\"");
    PauliString p = parse_pauli(word);
    if (!out.empty() && p.n != out.front().second.n)
      throw ParseError("line " + std::to_string(lineno) +
                       ": pauli strings must share one length");
    out.push_back({coeff, std::move(p)});
  }
  if (out.empty()) throw ParseError("no hamiltonian terms found");
  return out;
}

inline std::vector<std::pair<double, PauliString>> parse_hamiltonian_text(
    const std::string& text) {
  std::istringstream in(text);
  return parse_hamiltonian_lines(in);
}

// ---------------------------------------------------------------------------
// Graph JSON.

inline Graph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("graph json: expected an object with integer field 'n'");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxGraphVertices)
    throw ParseError("graph json: vertex count out of range");

  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array())
      throw ParseError("graph json: 'edges' must be an array of pairs");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw ParseError("graph json: each edge must be an integer pair");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }
  std::vector<double> weights;
  if (j.contains("weights")) {
    if (!j["weights"].is_array())
      throw ParseError("graph json: 'weights' must be an array of numbers");
    for (const auto& w : j["weights"]) {
      if (!w.is_number()) throw ParseError("graph json: weights must be numbers");
      weights.push_back(w.get<double>());
    }
  }
  try {
    return graph_from_edges(n, edges, std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  }
}

inline Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.n;
  j["edges"] = Json::array();
  for (const auto& [a, b] : edge_list(g)) j["edges"].push_back({a, b});
  j["weights"] = g.weights;
  return j;
}

// ---------------------------------------------------------------------------
// Report JSON.

inline Json rep_report_to_json(const RepReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["violations"] = Json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back(
        {{"i", v.i}, {"j", v.j}, {"expected", v.type}, {"found", v.value}});
  return j;
}

inline Json beta_estimate_to_json(const BetaEstimate& e) {
  Json j;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["lower_provenance"] = e.lower_provenance;
  j["upper_provenance"] = e.upper_provenance;
  j["upper_witness"] = e.upper_witness;
  j["graph"] = graph_to_json(e.graph);
  j["weights"] = e.weights;
  return j;
}

inline Json gse_report_to_json(const GseBoundReport& r) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"label", row.label},
                         {"weights", row.weights},
                         {"q_upper", row.q_upper},
                         {"upper_provenance", row.upper_provenance},
                         {"upper_witness", row.upper_witness},
                         {"bound", row.bound},
                         {"best", row.best}});
  j["best_bound"] = r.best_bound;
  j["reference_bound"] = r.reference_bound;
  j["reference_note"] = r.reference_note;
  j["graph"] = graph_to_json(r.graph);
  j["coefficients"] = r.coefficients;
  j["strings"] = Json::array();
  for (const auto& p : r.strings) j["strings"].push_back(to_string(p));
  return j;
}

inline Json sdp_to_json(const SdpProblem& p) {
  const auto terms_to_json = [](const std::vector<SdpTerm>& terms) {
    Json arr = Json::array();
    for (const auto& t : terms)
      arr.push_back({{"block", t.block},
                     {"i", t.i},
                     {"j", t.j},
                     {"value", t.value}});
    return arr;
  };
  Json j;
  j["blocks"] = p.block_dims;
  j["objective"] = terms_to_json(p.objective);
  j["constraints"] = Json::array();
  for (const auto& c : p.constraints)
    j["constraints"].push_back({{"terms", terms_to_json(c.terms)}, {"rhs", c.rhs}});
  return j;
}

}  // namespace qbound
