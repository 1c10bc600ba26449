#pragma once

// See-saw lower bounds on Q({S_i}, w): the bilinear two-state method and the
// coefficient-vector method, with deterministic and Haar restarts, plus the
// q_lower combiner that folds in the independent-set witness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/graph.hpp"
#include "qbound/lanczos.hpp"
#include "qbound/linalg.hpp"
#include "qbound/pauli.hpp"
#include "qbound/represent.hpp"

namespace qbound {

struct SeeSawConfig {
  int restarts = 32;
  int max_iters = 500;
  double rel_tol = 1e-12;
  std::uint64_t seed = 1;
};

struct SeeSawResult {
  double value = 0.0;       // sum_i w_i <S_i>^2 at `state` (the certificate)
  double functional = 0.0;  // method objective at the fixpoint
  PureState state;
  std::vector<double> coefficients;  // coefficient method only
  std::vector<double> history;       // objective per iteration, winning restart
  int iterations = 0;
  std::string method;
};

namespace detail {

// Uniform access to a family of Hermitian operators: expectations on pure
// states and the eigenvector of largest |eigenvalue| of real combinations.
class DenseOpSet {
 public:
  explicit DenseOpSet(std::vector<Matrix> mats) : mats_(std::move(mats)) {
    require(!mats_.empty(), "see-saw needs at least one operator");
    dim_ = mats_[0].rows();
    for (const auto& m : mats_) {
      require(m.rows() == dim_ && m.cols() == dim_,
              "see-saw operators must share one dimension");
      require(m.is_hermitian(1e-10), "see-saw operators must be Hermitian");
    }
  }

  std::size_t size() const { return mats_.size(); }
  std::size_t dim() const { return dim_; }

  double expect(std::size_t i, const PureState& psi) const {
    cplx s(0.0, 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
      cplx row(0.0, 0.0);
      for (std::size_t c = 0; c < dim_; ++c) row += mats_[i](r, c) * psi[c];
      s += std::conj(psi[r]) * row;
    }
    return s.real();
  }

  PureState top_abs_eigvec(const std::vector<double>& coeff) const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < mats_.size(); ++i) {
      if (coeff[i] == 0.0) continue;
      Matrix t = mats_[i];
      t *= cplx(coeff[i], 0.0);
      m += t;
    }
    const EighResult e = eigh(m);
    const std::size_t pick =
        std::abs(e.values.front()) > std::abs(e.values.back()) ? 0 : dim_ - 1;
    PureState v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[r] = e.vectors(r, pick);
    return v;
  }

 private:
  std::vector<Matrix> mats_;
  std::size_t dim_ = 0;
};

// Pauli-string backend: matrix-free expectations; dense eigensolver for small
// registers, Lanczos beyond.
class StringOpSet {
 public:
  explicit StringOpSet(std::vector<PauliString> strings, std::uint64_t seed)
      : strings_(std::move(strings)), seed_(seed) {
    require(!strings_.empty(), "see-saw needs at least one operator");
    n_ = strings_[0].n;
    for (const auto& s : strings_)
      require(s.n == n_, "see-saw strings must share one register");
    guard_that(n_ <= kMaxStateQubits, "see-saw: register too large");
    if (n_ <= 6) {
      std::vector<Matrix> mats;
      for (const auto& s : strings_) mats.push_back(to_matrix(s));
      dense_.emplace(std::move(mats));
    }
  }

  std::size_t size() const { return strings_.size(); }
  std::size_t dim() const { return std::size_t(1) << n_; }

  double expect(std::size_t i, const PureState& psi) const {
    return expectation(strings_[i], psi);
  }

  PureState top_abs_eigvec(const std::vector<double>& coeff) const {
    if (dense_) return dense_->top_abs_eigvec(coeff);
    std::vector<std::pair<double, PauliString>> terms;
    for (std::size_t i = 0; i < strings_.size(); ++i)
      if (coeff[i] != 0.0) terms.push_back({coeff[i], strings_[i]});
    if (terms.empty()) {
      PureState v(dim(), cplx(0.0, 0.0));
      v[0] = 1.0;
      return v;
    }
    const PauliSumOperator op(n_, std::move(terms));
    const ExtremeEigs ee = extreme_eigs(op, WhichEigs::Both, 1e-10, 500, seed_);
    return std::abs(ee.min.value) > std::abs(ee.max.value)
               ? ee.min.vector
               : ee.max.vector;
  }

 private:
  std::vector<PauliString> strings_;
  int n_ = 0;
  std::uint64_t seed_ = 0;
  std::optional<DenseOpSet> dense_;
};

template <typename Ops>
double weighted_square_sum(const Ops& ops, const std::vector<double>& w,
                           const PureState& psi) {
  double total = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const double e = ops.expect(i, psi);
    total += w[i] * e * e;
  }
  return total;
}

template <typename Ops>
void check_weights(const Ops& ops, const std::vector<double>& w) {
  require(w.size() == ops.size(), "see-saw: weight count mismatch");
  for (double wi : w)
    require(wi >= 0.0, "see-saw weights must be nonnegative");
}

// Empty weight vectors mean all-ones throughout the public entry points.
inline std::vector<double> ones_if_empty(std::vector<double> w, std::size_t n) {
  if (w.empty()) w.assign(n, 1.0);
  return w;
}

// One bilinear run from a given state; returns the history of the bilinear
// functional F(rho1, rho2) = sum_i w_i <S_i>_1 <S_i>_2.
template <typename Ops>
std::vector<double> bilinear_run(const Ops& ops, const std::vector<double>& w,
                                 const SeeSawConfig& cfg, PureState& psi1,
                                 PureState& psi2) {
  const std::size_t m = ops.size();
  std::vector<double> coeff(m), history;
  psi2 = psi1;
  double prev = -1.0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < m; ++i) coeff[i] = w[i] * ops.expect(i, psi1);
    psi2 = ops.top_abs_eigvec(coeff);
    double f = 0.0;
    for (std::size_t i = 0; i < m; ++i) coeff[i] = w[i] * ops.expect(i, psi2);
    psi1 = ops.top_abs_eigvec(coeff);
    for (std::size_t i = 0; i < m; ++i)
      f += coeff[i] * ops.expect(i, psi1);
    // Each half-step maximizes |F|; the sign settles at the fixpoint.
    f = std::abs(f);
    history.push_back(f);
    if (it > 0 && f - prev <= cfg.rel_tol * std::max(1.0, std::abs(f))) break;
    prev = f;
  }
  return history;
}

// One coefficient run. If `from_state` is set, the first half-step derives c
// from it; otherwise c starts at normalized sqrt(w).
template <typename Ops>
std::vector<double> coefficient_run(const Ops& ops,
                                    const std::vector<double>& w,
                                    const SeeSawConfig& cfg,
                                    const PureState* from_state,
                                    PureState& psi,
                                    std::vector<double>& coeff) {
  const std::size_t m = ops.size();
  std::vector<double> sqw(m);
  for (std::size_t i = 0; i < m; ++i) sqw[i] = std::sqrt(w[i]);

  coeff.assign(m, 0.0);
  if (from_state != nullptr) {
    psi = *from_state;
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      coeff[i] = sqw[i] * ops.expect(i, psi);
      norm += coeff[i] * coeff[i];
    }
    norm = std::sqrt(norm);
    if (norm > 1e-300)
      for (double& c : coeff) c /= norm;
  }
  if (from_state == nullptr || std::count(coeff.begin(), coeff.end(), 0.0) ==
                                   static_cast<std::ptrdiff_t>(m)) {
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm += w[i];
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m; ++i)
      coeff[i] = norm > 1e-300 ? sqw[i] / norm : 0.0;
  }

  std::vector<double> scaled(m), history;
  double prev = -1.0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < m; ++i) scaled[i] = coeff[i] * sqw[i];
    psi = ops.top_abs_eigvec(scaled);
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      coeff[i] = sqw[i] * ops.expect(i, psi);
      norm += coeff[i] * coeff[i];
    }
    norm = std::sqrt(norm);
    if (norm > 1e-300)
      for (double& c : coeff) c /= norm;
    // After the c-update the functional equals sqrt(sum_i w_i <S_i>^2).
    history.push_back(norm * norm);
    if (it > 0 &&
        norm * norm - prev <= cfg.rel_tol * std::max(1.0, norm * norm))
      break;
    prev = norm * norm;
  }
  return history;
}

// Deterministic first start: the eigenvector of largest |eigenvalue| of
// sum_i w_i S_i, which already attains sqrt(Q) when the optimum is flat.
template <typename Ops>
PureState deterministic_start(const Ops& ops, const std::vector<double>& w) {
  return ops.top_abs_eigvec(w);
}

template <typename Ops>
SeeSawResult seesaw_engine(const Ops& ops, const std::vector<double>& w,
                           const SeeSawConfig& cfg, bool bilinear,
                           const PureState* witness) {
  check_weights(ops, w);
  require(cfg.restarts >= 1 && cfg.max_iters >= 1, "see-saw config invalid");

  SeeSawResult best;
  best.method = bilinear ? "bilinear" : "coefficient";
  best.value = -1.0;
  Rng rng(cfg.seed);

  for (int r = 0; r < cfg.restarts; ++r) {
    PureState start;
    bool coeff_default_start = false;
    if (r == 0 && !bilinear) {
      coeff_default_start = true;  // c = normalized sqrt(w)
    } else if (r == 0) {
      start = deterministic_start(ops, w);
    } else if (r == 1 && witness != nullptr) {
      start = *witness;
    } else {
      start = random_pure_state(ops.dim(), rng);
    }

    SeeSawResult cur;
    cur.method = best.method;
    if (bilinear) {
      PureState psi2;
      cur.state = start;
      cur.history = bilinear_run(ops, w, cfg, cur.state, psi2);
      const double v1 = weighted_square_sum(ops, w, cur.state);
      const double v2 = weighted_square_sum(ops, w, psi2);
      if (v2 > v1) cur.state = psi2;
      cur.functional = cur.history.empty() ? 0.0 : cur.history.back();
    } else {
      cur.history = coefficient_run(
          ops, w, cfg, coeff_default_start ? nullptr : &start, cur.state,
          cur.coefficients);
      cur.functional = cur.history.empty() ? 0.0 : cur.history.back();
    }
    cur.value = weighted_square_sum(ops, w, cur.state);
    cur.iterations = static_cast<int>(cur.history.size());
    if (cur.value > best.value) best = std::move(cur);
  }
  return best;
}

inline const PureState* witness_state_or_null(
    const std::vector<PauliString>& strings, const std::vector<double>& w,
    PureState& storage, std::vector<int>& witness_set) {
  try {
    const Graph g = frustration_graph(strings);
    Graph gw = g;
    gw.weights = w;
    const IndependenceResult ind = weighted_independence(gw);
    witness_set = ind.vertices;
    storage = independent_set_state(strings, ind.vertices).state;
    return &storage;
  } catch (const GuardError&) {
    return nullptr;  // oversized register or vertex count: skip this restart
  }
}

}  // namespace detail

inline SeeSawResult seesaw_bilinear(const std::vector<PauliString>& strings,
                                    const std::vector<double>& w = {},
                                    const SeeSawConfig& cfg = {}) {
  const auto wv = detail::ones_if_empty(w, strings.size());
  const detail::StringOpSet ops(strings, cfg.seed);
  PureState witness;
  std::vector<int> witness_set;
  const PureState* wp =
      detail::witness_state_or_null(strings, wv, witness, witness_set);
  return detail::seesaw_engine(ops, wv, cfg, true, wp);
}

inline SeeSawResult seesaw_bilinear(const std::vector<Matrix>& mats,
                                    const std::vector<double>& w = {},
                                    const SeeSawConfig& cfg = {}) {
  const detail::DenseOpSet ops(mats);
  return detail::seesaw_engine(ops, detail::ones_if_empty(w, mats.size()), cfg,
                               true, nullptr);
}

inline SeeSawResult seesaw_coefficient(const std::vector<PauliString>& strings,
                                       const std::vector<double>& w = {},
                                       const SeeSawConfig& cfg = {}) {
  const auto wv = detail::ones_if_empty(w, strings.size());
  const detail::StringOpSet ops(strings, cfg.seed);
  PureState witness;
  std::vector<int> witness_set;
  const PureState* wp =
      detail::witness_state_or_null(strings, wv, witness, witness_set);
  return detail::seesaw_engine(ops, wv, cfg, false, wp);
}

inline SeeSawResult seesaw_coefficient(const std::vector<Matrix>& mats,
                                       const std::vector<double>& w = {},
                                       const SeeSawConfig& cfg = {}) {
  const detail::DenseOpSet ops(mats);
  return detail::seesaw_engine(ops, detail::ones_if_empty(w, mats.size()), cfg,
                               false, nullptr);
}

struct QLowerResult {
  double value = 0.0;
  std::string provenance;  // "see-saw(bilinear)" etc. or "independent-set"
  PureState state;
  std::vector<int> witness;  // independent set behind the witness value
  SeeSawResult best_seesaw;
};

// Best lower bound on Q({S_i}, w): both see-saw methods plus the
// independent-set witness, with the winner recorded.
inline QLowerResult q_lower(const std::vector<PauliString>& strings,
                            const std::vector<double>& w = {},
                            const SeeSawConfig& cfg = {}) {
  const auto wv = detail::ones_if_empty(w, strings.size());
  const detail::StringOpSet ops(strings, cfg.seed);
  detail::check_weights(ops, wv);
  QLowerResult out;

  PureState witness;
  const PureState* wp =
      detail::witness_state_or_null(strings, wv, witness, out.witness);
  if (wp != nullptr) {
    out.value = detail::weighted_square_sum(ops, wv, witness);
    out.provenance = "independent-set";
    out.state = witness;
  }

  for (const bool bilinear : {true, false}) {
    SeeSawResult r = detail::seesaw_engine(ops, wv, cfg, bilinear, wp);
    if (r.value > out.value) {
      out.value = r.value;
      out.provenance =
          bilinear ? "see-saw(bilinear)" : "see-saw(coefficient)";
      out.state = r.state;
      out.best_seesaw = std::move(r);
    }
  }
  return out;
}

}  // namespace qbound
