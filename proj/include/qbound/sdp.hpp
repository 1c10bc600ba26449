#pragma once

// Dense primal-dual interior-point solver for small block-diagonal SDPs in
// the form  maximize tr(C X)  s.t.  tr(A_k X) = b_k,  X >= 0.
//
// The dual iterate stays exactly feasible (Z = A^T(y) - C with Z > 0), so the
// dual objective b^T y is a certified upper bound on the primal optimum at
// every iteration, converged or not. Primal infeasibility of the X iterate is
// absorbed into the Newton right-hand side and vanishes along the run.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/linalg.hpp"

namespace qbound {

// One entry of a symmetric matrix: value at (i, j) and mirrored at (j, i).
struct SdpTerm {
  std::size_t block = 0;
  std::size_t i = 0, j = 0;
  double value = 0.0;
};

struct SdpConstraint {
  std::vector<SdpTerm> terms;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<std::size_t> block_dims;
  std::vector<SdpTerm> objective;
  std::vector<SdpConstraint> constraints;

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (std::size_t d : block_dims) t += d;
    return t;
  }
};

struct SdpOptions {
  int max_iters = 200;
  double tol_gap = 1e-9;    // relative duality gap
  double tol_feas = 1e-9;   // primal residual, relative to 1 + |b|
};

struct SdpSolution {
  std::string status;  // "optimal" or "max_iterations" or "stalled"
  double primal_value = 0.0;
  double dual_value = 0.0;  // certified bound on the maximum
  double gap = 0.0;
  double primal_residual = 0.0;
  std::vector<RMatrix> blocks;  // primal X per block
  std::vector<double> dual;     // y per constraint
  int iterations = 0;
};

namespace detail {

inline void add_terms(std::vector<RMatrix>& mats,
                      const std::vector<SdpTerm>& terms, double scale) {
  for (const auto& t : terms) {
    mats[t.block](t.i, t.j) += scale * t.value;
    if (t.i != t.j) mats[t.block](t.j, t.i) += scale * t.value;
  }
}

inline double inner_with(const std::vector<RMatrix>& x,
                         const std::vector<SdpTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) {
    s += t.value * x[t.block](t.i, t.j);
    if (t.i != t.j) s += t.value * x[t.block](t.j, t.i);
  }
  return s;
}

inline double blocks_inner(const std::vector<RMatrix>& a,
                           const std::vector<RMatrix>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += rtrace_product(a[k], b[k]);
  return s;
}

// Largest step in (0, 1] keeping x + alpha dx positive definite, with a
// safety margin; 0 when even tiny steps fail.
inline double psd_step(const std::vector<RMatrix>& x,
                       const std::vector<RMatrix>& dx) {
  double alpha = 1.0;
  RMatrix trial, chol;
  while (alpha > 1e-12) {
    bool ok = true;
    for (std::size_t b = 0; b < x.size() && ok; ++b) {
      trial = x[b];
      trial.axpy(alpha, dx[b]);
      ok = cholesky(trial, chol);
    }
    if (ok) return 0.98 * alpha;
    alpha *= 0.8;
  }
  return 0.0;
}

// Frobenius inner product of two symmetric sparse term lists. Each term
// stands for the positions (i,j) and (j,i); term lists must not repeat a
// position within one matrix.
inline double sparse_inner(const std::vector<SdpTerm>& a,
                           const std::vector<SdpTerm>& b) {
  double s = 0.0;
  for (const auto& tk : a)
    for (const auto& tl : b) {
      if (tk.block != tl.block) continue;
      const bool match = (tk.i == tl.i && tk.j == tl.j) ||
                         (tk.i == tl.j && tk.j == tl.i);
      if (!match) continue;
      s += tk.value * tl.value * (tk.i == tk.j ? 1.0 : 2.0);
    }
  return s;
}

// Upper-triangle layout offsets per block, for vectorized inner products.
inline std::vector<std::size_t> upper_offsets(const SdpProblem& p) {
  std::vector<std::size_t> off(p.block_dims.size() + 1, 0);
  for (std::size_t b = 0; b < p.block_dims.size(); ++b)
    off[b + 1] = off[b] + p.block_dims[b] * (p.block_dims[b] + 1) / 2;
  return off;
}

// Vectorize a term list over the concatenated upper triangles, scaling
// off-diagonal entries by sqrt 2 so that dot products equal tr(A B).
inline void upper_vectorize(const SdpProblem& p,
                            const std::vector<std::size_t>& off,
                            const std::vector<SdpTerm>& terms,
                            std::vector<double>& out) {
  const double sqrt2 = std::sqrt(2.0);
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& t : terms) {
    const std::size_t a = std::min(t.i, t.j), b = std::max(t.i, t.j);
    const std::size_t d = p.block_dims[t.block];
    const std::size_t idx = off[t.block] + a * d - a * (a - 1) / 2 + (b - a);
    out[idx] += t.value * (a == b ? 1.0 : sqrt2);
  }
}

// Dual start: least-squares y with A^T(y) ~ C + theta I, escalating theta
// until Z = A^T(y) - C is safely positive definite.
inline std::vector<double> feasible_dual_start(const SdpProblem& p) {
  const std::size_t m = p.constraints.size();
  const std::vector<std::size_t> off = upper_offsets(p);
  const std::size_t nup = off.back();

  RMatrix gram(m);
  std::vector<double> with_c(m), with_id(m);
  if ((m + 1) * nup <= (std::size_t{1} << 22)) {
    // Dense vectorized path: Gram entries are plain dot products.
    std::vector<std::vector<double>> vecs(m, std::vector<double>(nup));
    for (std::size_t k = 0; k < m; ++k)
      upper_vectorize(p, off, p.constraints[k].terms, vecs[k]);
    std::vector<double> cvec(nup);
    upper_vectorize(p, off, p.objective, cvec);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t l = k; l < m; ++l) {
        double s = 0.0;
        for (std::size_t i = 0; i < nup; ++i) s += vecs[k][i] * vecs[l][i];
        gram(k, l) = gram(l, k) = s;
      }
      double s = 0.0;
      for (std::size_t i = 0; i < nup; ++i) s += vecs[k][i] * cvec[i];
      with_c[k] = s;
    }
  } else {
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t l = k; l < m; ++l)
        gram(k, l) = gram(l, k) =
            sparse_inner(p.constraints[k].terms, p.constraints[l].terms);
      with_c[k] = sparse_inner(p.constraints[k].terms, p.objective);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    double tr = 0.0;
    for (const auto& t : p.constraints[k].terms)
      if (t.i == t.j) tr += t.value;
    with_id[k] = tr;
  }

  double cnorm = 0.0;
  for (const auto& t : p.objective)
    cnorm += t.value * t.value * (t.i == t.j ? 1.0 : 2.0);
  cnorm = std::sqrt(cnorm);

  RMatrix chol;
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double theta =
        (attempt == 0 ? 0.0 : (1.0 + cnorm) * std::pow(4.0, attempt - 1));
    std::vector<double> h(m);
    for (std::size_t k = 0; k < m; ++k) h[k] = with_c[k] + theta * with_id[k];
    RMatrix sys = gram;
    for (std::size_t k = 0; k < m; ++k)
      sys(k, k) += 1e-12 * (1.0 + gram(k, k));
    std::vector<double> y;
    try {
      y = lu_solve(sys, h);
    } catch (const NumericalError&) {
      continue;
    }
    std::vector<RMatrix> z;
    for (std::size_t d : p.block_dims) z.emplace_back(d);
    for (std::size_t k = 0; k < m; ++k)
      add_terms(z, p.constraints[k].terms, y[k]);
    add_terms(z, p.objective, -1.0);
    bool ok = true;
    for (const auto& zb : z) {
      RMatrix shifted = zb;
      for (std::size_t i = 0; i < shifted.size(); ++i)
        shifted(i, i) -= 1e-8 * (1.0 + theta);
      if (!cholesky(shifted, chol)) {
        ok = false;
        break;
      }
    }
    if (ok) return y;
  }
  throw NumericalError("sdp: no strictly feasible dual start found");
}

}  // namespace detail

inline SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt = {}) {
  guard_that(p.total_dim() <= 256, "solve_sdp: total dimension exceeds guard");
  require(!p.block_dims.empty(), "solve_sdp: no blocks");
  require(!p.constraints.empty(), "solve_sdp: need at least one constraint");
  for (const auto& c : p.constraints)
    for (const auto& t : c.terms)
      require(t.block < p.block_dims.size() && t.i < p.block_dims[t.block] &&
                  t.j < p.block_dims[t.block],
              "solve_sdp: constraint entry out of range");
  for (const auto& t : p.objective)
    require(t.block < p.block_dims.size() && t.i < p.block_dims[t.block] &&
                t.j < p.block_dims[t.block],
            "solve_sdp: objective entry out of range");

  const std::size_t m = p.constraints.size();
  const std::size_t nb = p.block_dims.size();
  const double ntot = static_cast<double>(p.total_dim());

  std::vector<double> b(m);
  double bnorm = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    b[k] = p.constraints[k].rhs;
    bnorm += b[k] * b[k];
  }
  bnorm = std::sqrt(bnorm);

  // Primal start: identity scaled to a plausible magnitude.
  std::vector<RMatrix> X, Z;
  for (std::size_t d : p.block_dims) {
    X.emplace_back(d);
    Z.emplace_back(d);
  }
  const double xscale = std::max(1.0, bnorm);
  for (auto& xb : X)
    for (std::size_t i = 0; i < xb.size(); ++i) xb(i, i) = xscale;

  // Dual start: exactly feasible with Z > 0.
  std::vector<double> y = detail::feasible_dual_start(p);
  for (std::size_t k = 0; k < m; ++k)
    detail::add_terms(Z, p.constraints[k].terms, y[k]);
  detail::add_terms(Z, p.objective, -1.0);

  SdpSolution sol;
  std::vector<RMatrix> Zi(nb), dX(nb), dZ(nb);
  std::vector<RMatrix> W(nb);

  // Split each constraint into sparse triplets and per-block dense matrices;
  // for nearly-dense blocks, W_l = Z^-1 A_l X is cheaper as two matrix
  // products than as rank-one updates per triplet.
  struct DensePart {
    std::size_t block;
    RMatrix a;
  };
  std::vector<std::vector<SdpTerm>> wl_sparse(m);
  std::vector<std::vector<DensePart>> wl_dense(m);
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<std::size_t> cnt(nb, 0);
    for (const auto& t : p.constraints[l].terms) ++cnt[t.block];
    for (std::size_t bidx = 0; bidx < nb; ++bidx)
      if (cnt[bidx] >= p.block_dims[bidx] && p.block_dims[bidx] >= 8)
        wl_dense[l].push_back({bidx, RMatrix(p.block_dims[bidx])});
    for (const auto& t : p.constraints[l].terms) {
      bool routed = false;
      for (auto& part : wl_dense[l])
        if (part.block == t.block) {
          part.a(t.i, t.j) += t.value;
          if (t.i != t.j) part.a(t.j, t.i) += t.value;
          routed = true;
          break;
        }
      if (!routed) wl_sparse[l].push_back(t);
    }
  }

  for (int it = 1; it <= opt.max_iters; ++it) {
    for (std::size_t bidx = 0; bidx < nb; ++bidx) Zi[bidx] = spd_inverse(Z[bidx]);

    const double mu_full = detail::blocks_inner(X, Z) / ntot;
    const double sigma = it <= 2 ? 0.5 : 0.3;
    const double mu = sigma * mu_full;

    // Schur system M dy = mu * a - b with a_k = tr(A_k Z^-1),
    // M_kl = tr(A_k Z^-1 A_l X).
    RMatrix M(m);
    std::vector<double> rhs(m);
    for (std::size_t k = 0; k < m; ++k)
      rhs[k] = mu * detail::inner_with(Zi, p.constraints[k].terms) - b[k];

    for (std::size_t l = 0; l < m; ++l) {
      // W_l = Z^-1 A_l X, built from the sparse entries of A_l.
      for (std::size_t bidx = 0; bidx < nb; ++bidx) {
        W[bidx] = RMatrix(p.block_dims[bidx]);
      }
      for (const auto& part : wl_dense[l])
        W[part.block] += rmul(Zi[part.block], rmul(part.a, X[part.block]));
      for (const auto& t : wl_sparse[l]) {
        const std::size_t d = p.block_dims[t.block];
        auto& Wb = W[t.block];
        const auto& Zb = Zi[t.block];
        const auto& Xb = X[t.block];
        for (std::size_t r = 0; r < d; ++r) {
          const double zri = Zb(r, t.i);
          const double zrj = Zb(r, t.j);
          for (std::size_t c = 0; c < d; ++c) {
            Wb(r, c) += t.value * (zri * Xb(t.j, c) +
                                   (t.i != t.j ? zrj * Xb(t.i, c) : 0.0));
          }
        }
      }
      for (std::size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (const auto& t : p.constraints[k].terms) {
          s += t.value * W[t.block](t.j, t.i);
          if (t.i != t.j) s += t.value * W[t.block](t.i, t.j);
        }
        M(k, l) = s;
      }
    }

    std::vector<double> dy;
    try {
      dy = lu_solve(M, rhs);
    } catch (const NumericalError&) {
      sol.status = "stalled";
      break;
    }

    // dZ = A^T(dy); dX = mu Z^-1 - X - Z^-1 dZ X, symmetrized.
    for (std::size_t bidx = 0; bidx < nb; ++bidx)
      dZ[bidx] = RMatrix(p.block_dims[bidx]);
    for (std::size_t k = 0; k < m; ++k)
      detail::add_terms(dZ, p.constraints[k].terms, dy[k]);

    for (std::size_t bidx = 0; bidx < nb; ++bidx) {
      const std::size_t d = p.block_dims[bidx];
      RMatrix t = rmul(Zi[bidx], rmul(dZ[bidx], X[bidx]));
      dX[bidx] = RMatrix(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          dX[bidx](i, j) = mu * Zi[bidx](i, j) - X[bidx](i, j) - t(i, j);
      dX[bidx].symmetrize();
    }

    const double ap = detail::psd_step(X, dX);
    const double ad = detail::psd_step(Z, dZ);
    if (ap == 0.0 && ad == 0.0) {
      sol.status = "stalled";
      break;
    }
    for (std::size_t bidx = 0; bidx < nb; ++bidx) {
      X[bidx].axpy(ap, dX[bidx]);
      Z[bidx].axpy(ad, dZ[bidx]);
    }
    for (std::size_t k = 0; k < m; ++k) y[k] += ad * dy[k];

    // Progress metrics.
    double primal = detail::inner_with(X, p.objective);
    double dualv = 0.0;
    for (std::size_t k = 0; k < m; ++k) dualv += b[k] * y[k];
    double res = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double r = b[k] - detail::inner_with(X, p.constraints[k].terms);
      res = std::max(res, std::abs(r));
    }
    const double gap = std::abs(dualv - primal) /
                       (1.0 + std::abs(dualv) + std::abs(primal));
    sol.iterations = it;
    sol.primal_value = primal;
    sol.dual_value = dualv;
    sol.gap = gap;
    sol.primal_residual = res;
    if (gap < opt.tol_gap && res < opt.tol_feas * (1.0 + bnorm)) {
      sol.status = "optimal";
      break;
    }
  }
  if (sol.status.empty()) sol.status = "max_iterations";
  sol.blocks = std::move(X);
  sol.dual = std::move(y);
  return sol;
}

}  // namespace qbound
