#pragma once

// Matrix-free extreme eigenpairs of Pauli-sum operators: Lanczos with full
// reorthogonalization, seeded starts, and Ritz-residual convergence.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/linalg.hpp"
#include "qbound/pauli.hpp"

namespace qbound {

enum class WhichEigs { Min, Max, Both };

struct RitzPair {
  double value = 0.0;
  PureState vector;
  int iterations = 0;
};

struct ExtremeEigs {
  RitzPair min;  // filled for Min/Both
  RitzPair max;  // filled for Max/Both
};

namespace detail {

inline cplx state_dot(const PureState& a, const PureState& b) {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Largest Ritz pair of the operator given by `apply`.
template <typename Apply>
RitzPair lanczos_top(Apply&& apply, std::size_t dim, double tol, int max_iters,
                     Rng& rng) {
  if (dim == 1) {
    PureState v{cplx(1.0, 0.0)};
    PureState w(1);
    apply(v, w);
    return {w[0].real(), std::move(v), 0};
  }

  std::vector<PureState> basis;
  std::vector<double> alpha, beta;
  PureState v = random_pure_state(dim, rng);
  PureState w(dim);
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  double best_theta = 0.0, best_resid = 0.0;

  for (int it = 1; it <= max_iters; ++it) {
    basis.push_back(v);
    apply(v, w);
    alpha.push_back(state_dot(v, w).real());
    // Full reorthogonalization; the projections on the last two basis vectors
    // are the classic alpha/beta subtractions, the rest mend drift. Two
    // passes handle cancellation.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const cplx c = state_dot(b, w);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
      }
    const double bnorm = state_norm(w);

    const std::size_t k = alpha.size();
    const bool check = k == basis.size() && (k < 100 || it % 5 == 0 ||
                                             bnorm < 1e-13 || it == max_iters);
    if (check) {
      tridiag_eigh(alpha, beta, values, vectors);
      best_theta = values[k - 1];
      best_resid = bnorm * std::abs(vectors[k - 1][k - 1]);
      if (best_resid < tol || bnorm < 1e-13 || it == max_iters ||
          k == dim) {
        PureState x(dim, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < k; ++i) {
          const double c = vectors[i][k - 1];
          for (std::size_t j = 0; j < dim; ++j) x[j] += c * basis[i][j];
        }
        normalize_state(x);
        PureState hx(dim);
        apply(x, hx);
        double resid = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
          resid += std::norm(hx[j] - best_theta * x[j]);
        resid = std::sqrt(resid);
        const double scale = std::max(1.0, std::abs(best_theta));
        if (resid < tol * scale || bnorm < 1e-13 || k == dim)
          return {best_theta, std::move(x), it};
        if (it == max_iters) break;
      }
    }
    if (bnorm < 1e-13) break;  // invariant subspace already accepted above
    beta.push_back(bnorm);
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / bnorm;
  }

  std::ostringstream msg;
  msg << "lanczos: no convergence after " << max_iters
      << " iterations; best estimate " << best_theta << " (Ritz residual "
      << best_resid << ")";
  throw NumericalError(msg.str());
}

}  // namespace detail

// Extreme eigenvalues (and Ritz vectors) of a Pauli-sum operator. The two
// spectrum ends come from separate Lanczos runs on H and -H.
inline ExtremeEigs extreme_eigs(const PauliSumOperator& h,
                                WhichEigs which = WhichEigs::Both,
                                double tol = 1e-8, int max_iters = 500,
                                std::uint64_t seed = 1) {
  guard_that(h.n <= kMaxStateQubits, "extreme_eigs: register too large");
  const std::size_t dim = h.dim();
  ExtremeEigs out;
  if (which == WhichEigs::Max || which == WhichEigs::Both) {
    Rng rng(seed);
    out.max = detail::lanczos_top(
        [&](const PureState& in, PureState& o) { h.apply(in.data(), o.data()); },
        dim, tol, max_iters, rng);
  }
  if (which == WhichEigs::Min || which == WhichEigs::Both) {
    Rng rng(seed + 0x9E3779B97F4A7C15ULL);
    out.min = detail::lanczos_top(
        [&](const PureState& in, PureState& o) {
          h.apply(in.data(), o.data());
          for (auto& c : o) c = -c;
        },
        dim, tol, max_iters, rng);
    out.min.value = -out.min.value;
  }
  return out;
}

}  // namespace qbound
