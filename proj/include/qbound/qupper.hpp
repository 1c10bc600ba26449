#pragma once

// Certified upper bounds on Q({S_i}, w) = max_rho sum_i w_i <S_i>_rho^2 via
// semidefinite extension programs.
//
// PPT level: maximize tr[gamma  sum_i w_i (S_i x S_i)] over states gamma on
// H (x) H with unit trace, gamma >= 0, gamma^{T2} >= 0 and swap symmetry
// F gamma = gamma.  For a pure state psi the choice gamma = |psi psi><psi psi|
// is feasible with objective sum_i w_i <S_i>^2, and Q is attained on pure
// states (the objective is convex in rho), so the program value bounds Q from
// above.  Swap symmetry is enforced by restricting gamma to the symmetric
// subspace (dimension s = d(d+1)/2); the PPT block Y = gamma^{T2} is a second
// variable tied to the first by trace pairings against a Hermitian basis.
//
// 3/2 level: the same with a third tensor factor, tau on H (x) H (x) H fully
// symmetric (restriction to Sym^3), gamma = tr_3 tau, and gamma^{T2} >= 0.
// Every feasible gamma of the 3/2 level is feasible at the PPT level, so the
// hierarchy is monotone by construction.
//
// Complex Hermitian data enters the real solver through the embedding
// R(M) = [[Re M, -Im M], [Im M, Re M]], which is a *-homomorphism; optima of
// the embedded program coincide with the complex ones.  The reported value is
// the solver's dual objective and is a certified upper bound at any iterate.

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/linalg.hpp"
#include "qbound/pauli.hpp"
#include "qbound/sdp.hpp"

namespace qbound {

namespace detail {

// Orthonormal basis of the symmetric subspace of C^d (x) C^d, as columns.
inline Matrix sym2_isometry(std::size_t d) {
  const std::size_t s = d * (d + 1) / 2;
  Matrix v(d * d, s);
  std::size_t col = 0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k; l < d; ++l) {
      if (k == l) {
        v(k * d + k, col) = 1.0;
      } else {
        v(k * d + l, col) = inv_sqrt2;
        v(l * d + k, col) = inv_sqrt2;
      }
      ++col;
    }
  return v;
}

// Orthonormal basis of the fully symmetric subspace of (C^d)^(x3).
inline Matrix sym3_isometry(std::size_t d) {
  const std::size_t s3 = d * (d + 1) * (d + 2) / 6;
  Matrix v(d * d * d, s3);
  std::size_t col = 0;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k; l < d; ++l)
      for (std::size_t m = l; m < d; ++m) {
        std::set<std::size_t> rows;
        const std::size_t idx[3] = {k, l, m};
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms)
          rows.insert((idx[p[0]] * d + idx[p[1]]) * d + idx[p[2]]);
        const double amp = 1.0 / std::sqrt(static_cast<double>(rows.size()));
        for (std::size_t r : rows) v(r, col) = amp;
        ++col;
      }
  return v;
}

// [[Re, -Im], [Im, Re]] embedding of a complex matrix.  For Hermitian input
// the result is real symmetric, and tr(R(A) R(B)) = 2 tr(AB).
inline RMatrix real_embed(const Matrix& m) {
  const std::size_t n = m.rows();
  RMatrix r(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = m(i, j);
      r(i, j) = v.real();
      r(i, n + j) = -v.imag();
      r(n + i, j) = v.imag();
      r(n + i, n + j) = v.real();
    }
  return r;
}

// Append the upper triangle of (scale * m) as symmetric-entry triplets.
inline void add_real_terms(std::vector<SdpTerm>& out, std::size_t block,
                           const RMatrix& m, double scale) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = scale * 0.5 * (m(i, j) + m(j, i));
      if (std::abs(v) > 1e-13) out.push_back({block, i, j, v});
    }
}

// Enumerate a Hermitian operator basis of a D-dimensional space and hand each
// element to `fn`.  Elements: E_pp; E_pq + E_qp; i E_pq - i E_qp  (p < q).
template <typename Fn>
inline void for_each_hermitian_basis(std::size_t D, Fn&& fn) {
  for (std::size_t p = 0; p < D; ++p)
    for (std::size_t q = p; q < D; ++q) {
      if (p == q) {
        Matrix e(D, D);
        e(p, p) = 1.0;
        fn(e);
      } else {
        Matrix re(D, D);
        re(p, q) = 1.0;
        re(q, p) = 1.0;
        fn(re);
        Matrix im(D, D);
        im(p, q) = cplx(0.0, 1.0);
        im(q, p) = cplx(0.0, -1.0);
        fn(im);
      }
    }
}

struct ExtensionLevel {
  bool three_half = false;
};

inline void check_qupper_inputs(const std::vector<Matrix>& ops,
                                const std::vector<double>& w) {
  require(!ops.empty(), "q_upper: need at least one operator");
  const std::size_t d = ops[0].rows();
  for (const auto& a : ops) {
    require(a.rows() == d && a.cols() == d, "q_upper: dimension mismatch");
    require(a.is_hermitian(1e-9 * (1.0 + a.max_abs())),
            "q_upper: operators must be Hermitian");
  }
  require(w.size() == ops.size(), "q_upper: weight count mismatch");
  for (double wi : w) require(wi >= 0.0, "q_upper: weights must be nonnegative");
}

// Build and solve the shared two-block extension program.
inline SdpSolution solve_extension_program(const std::vector<Matrix>& ops,
                                           const std::vector<double>& w,
                                           const std::vector<Matrix>& cuts,
                                           ExtensionLevel level) {
  check_qupper_inputs(ops, w);
  const std::size_t d = ops[0].rows();
  const std::size_t D = d * d;

  // M = sum_i w_i S_i (x) S_i on H (x) H.
  Matrix m_op(D, D);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (w[i] == 0.0) continue;
    m_op += kron(ops[i], ops[i]) * cplx(w[i], 0.0);
  }
  for (const auto& a : cuts) {
    require(a.rows() == D && a.cols() == D, "q_upper: cut dimension mismatch");
    require(a.is_hermitian(1e-9 * (1.0 + a.max_abs())),
            "q_upper: cuts must be Hermitian");
  }

  // Isometry onto the symmetrized variable and the objective/compression map.
  const Matrix v = level.three_half ? sym3_isometry(d) : sym2_isometry(d);
  const Matrix vdag = v.adjoint();
  const std::size_t s = v.cols();

  SdpProblem p;
  p.block_dims = {2 * s, 2 * D};
  for (std::size_t c = 0; c < cuts.size(); ++c) p.block_dims.push_back(1);

  // Objective tr(gamma M) expressed on the reduced variable.
  const Matrix obj_reduced =
      level.three_half ? vdag * kron(m_op, Matrix::identity(d)) * v
                       : vdag * m_op * v;
  add_real_terms(p.objective, 0, real_embed(obj_reduced), 0.5);

  // tr of the real embedding is twice the complex trace.
  SdpConstraint trace;
  for (std::size_t i = 0; i < 2 * s; ++i) trace.terms.push_back({0, i, i, 1.0});
  trace.rhs = 2.0;
  p.constraints.push_back(std::move(trace));

  // Tie the PPT block Y to gamma^{T2}: for every Hermitian basis element E,
  //   tr(E Y) = tr(E^{T2} gamma) = tr(G x_tilde)  with G the compression of
  // E^{T2} (PPT level) or of E^{T2} (x) 1 (3/2 level) onto the symmetric
  // subspace.
  const Matrix id_d = Matrix::identity(d);
  for_each_hermitian_basis(D, [&](const Matrix& e) {
    const Matrix ept = partial_transpose(e, d, d, 2);
    const Matrix g =
        level.three_half ? vdag * kron(ept, id_d) * v : vdag * ept * v;
    SdpConstraint link;
    add_real_terms(link.terms, 1, real_embed(e), 1.0);
    add_real_terms(link.terms, 0, real_embed(g), -1.0);
    link.rhs = 0.0;
    p.constraints.push_back(std::move(link));
  });

  // Each cut tr(A gamma) >= 0 becomes tr(A gamma) - slack = 0, slack >= 0.
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Matrix a_reduced =
        level.three_half ? vdag * kron(cuts[c], id_d) * v : vdag * cuts[c] * v;
    SdpConstraint cut;
    add_real_terms(cut.terms, 0, real_embed(a_reduced), 0.5);
    cut.terms.push_back({2 + c, 0, 0, -1.0});
    cut.rhs = 0.0;
    p.constraints.push_back(std::move(cut));
  }

  return solve_sdp(p);
}

}  // namespace detail

struct QUpperResult {
  double value = 0.0;       // certified (dual) upper bound on Q
  double primal_value = 0.0;
  std::string status;
  int iterations = 0;
};

inline QUpperResult q_upper_ppt(const std::vector<Matrix>& ops,
                                const std::vector<double>& weights = {},
                                const std::vector<Matrix>& cuts = {}) {
  require(!ops.empty(), "q_upper_ppt: need at least one operator");
  const std::size_t d = ops[0].rows();
  guard_that(d * d <= 256, "q_upper_ppt: dimension guard (d^2 <= 256)");
  std::vector<double> w =
      weights.empty() ? std::vector<double>(ops.size(), 1.0) : weights;
  const SdpSolution s =
      detail::solve_extension_program(ops, w, cuts, {.three_half = false});
  return {s.dual_value, s.primal_value, s.status, s.iterations};
}

inline QUpperResult q_upper_ppt(const std::vector<PauliString>& strings,
                                const std::vector<double>& weights = {},
                                const std::vector<Matrix>& cuts = {}) {
  std::vector<Matrix> ops;
  ops.reserve(strings.size());
  for (const auto& p : strings) {
    guard_that(p.n <= kMaxDenseQubits, "q_upper_ppt: too many qubits");
    ops.push_back(to_matrix(p));
  }
  return q_upper_ppt(ops, weights, cuts);
}

// Experimental tier: the 3/2 level of the hierarchy.
inline QUpperResult q_upper_threehalf(const std::vector<Matrix>& ops,
                                      const std::vector<double>& weights = {},
                                      const std::vector<Matrix>& cuts = {}) {
  require(!ops.empty(), "q_upper_threehalf: need at least one operator");
  const std::size_t d = ops[0].rows();
  guard_that(d * d * d <= 256, "q_upper_threehalf: dimension guard (d^3 <= 256)");
  std::vector<double> w =
      weights.empty() ? std::vector<double>(ops.size(), 1.0) : weights;
  const SdpSolution s =
      detail::solve_extension_program(ops, w, cuts, {.three_half = true});
  return {s.dual_value, s.primal_value, s.status, s.iterations};
}

inline QUpperResult q_upper_threehalf(const std::vector<PauliString>& strings,
                                      const std::vector<double>& weights = {},
                                      const std::vector<Matrix>& cuts = {}) {
  std::vector<Matrix> ops;
  ops.reserve(strings.size());
  for (const auto& p : strings) {
    guard_that(p.n <= kMaxDenseQubits, "q_upper_threehalf: too many qubits");
    ops.push_back(to_matrix(p));
  }
  return q_upper_threehalf(ops, weights, cuts);
}

}  // namespace qbound
