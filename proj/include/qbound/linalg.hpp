#pragma once

// Dense linear algebra: complex matrices, a cyclic Jacobi Hermitian eigensolver,
// real symmetric factorizations for the SDP solver, partial transpose/trace,
// and random state generation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qbound/common.hpp"

namespace qbound {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  Matrix& operator+=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        const cplx* brow = &b.a_[k * b.cols_];
        cplx* crow = &c.a_[i * c.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frob_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
  }

  bool is_hermitian(double tol = 1e-10) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
          return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

// tr(a * b) without forming the product.
inline cplx trace_product(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows() && a.rows() == b.cols(), "trace_product shape");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

struct EighResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector of values[j]
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Off-diagonal entries are
// annihilated with complex Givens rotations until the off-diagonal Frobenius
// norm falls below eps * ||H||_F.
inline EighResult eigh(Matrix h, double eps = 1e-14, int max_sweeps = 60) {
  const std::size_t n = h.rows();
  require(n == h.cols(), "eigh needs a square matrix");
  require(h.is_hermitian(1e-8 * (1.0 + h.max_abs())), "eigh needs Hermitian input");
  Matrix v = Matrix::identity(n);
  const double scale = std::max(1.0, h.frob_norm());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (std::sqrt(2.0 * off) <= eps * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx hpq = h(p, q);
        const double apq = std::abs(hpq);
        if (apq <= 1e-300) continue;
        const cplx w = hpq / apq;  // phase so that conj(w) * hpq is real
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx wc = std::conj(w);

        // Column rotation: col_p' = c*col_p - s*conj(w)*col_q,
        //                  col_q' = s*col_p + c*conj(w)*col_q.
        for (std::size_t r = 0; r < n; ++r) {
          const cplx hp = h(r, p), hq = h(r, q);
          h(r, p) = c * hp - s * wc * hq;
          h(r, q) = s * hp + c * wc * hq;
          const cplx vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - s * wc * vq;
          v(r, q) = s * vp + c * wc * vq;
        }
        // Row rotation by the adjoint.
        for (std::size_t r = 0; r < n; ++r) {
          const cplx hp = h(p, r), hq = h(q, r);
          h(p, r) = c * hp - s * w * hq;
          h(q, r) = s * hp + c * w * hq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
      }
    }
  }

  EighResult res;
  res.values.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.values[i] = h(i, i).real();
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h(a, a).real() < h(b, b).real();
  });
  std::sort(res.values.begin(), res.values.end());
  res.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, j) = v(i, order[j]);
  return res;
}

inline double min_eigenvalue(const Matrix& h) {
  return eigh(h).values.front();
}

inline bool is_psd(const Matrix& h, double tol = 1e-9) {
  return min_eigenvalue(h) >= -tol;
}

// Partial transpose on subsystem `part` (1 or 2) of a (d1*d2)-dim operator.
inline Matrix partial_transpose(const Matrix& m, std::size_t d1, std::size_t d2,
                                int part = 2) {
  require(m.rows() == d1 * d2 && m.cols() == d1 * d2, "partial_transpose shape");
  require(part == 1 || part == 2, "partial_transpose part must be 1 or 2");
  Matrix out(d1 * d2, d1 * d2);
  for (std::size_t a = 0; a < d1; ++a)
    for (std::size_t b = 0; b < d2; ++b)
      for (std::size_t c = 0; c < d1; ++c)
        for (std::size_t d = 0; d < d2; ++d) {
          if (part == 2)
            out(a * d2 + b, c * d2 + d) = m(a * d2 + d, c * d2 + b);
          else
            out(a * d2 + b, c * d2 + d) = m(c * d2 + b, a * d2 + d);
        }
  return out;
}

// Trace out subsystem `part` (1 or 2) of a (d1*d2)-dim operator.
inline Matrix partial_trace(const Matrix& m, std::size_t d1, std::size_t d2,
                            int part) {
  require(m.rows() == d1 * d2 && m.cols() == d1 * d2, "partial_trace shape");
  require(part == 1 || part == 2, "partial_trace part must be 1 or 2");
  if (part == 2) {
    Matrix out(d1, d1);
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t c = 0; c < d1; ++c) {
        cplx t = 0.0;
        for (std::size_t b = 0; b < d2; ++b) t += m(a * d2 + b, c * d2 + b);
        out(a, c) = t;
      }
    return out;
  }
  Matrix out(d2, d2);
  for (std::size_t b = 0; b < d2; ++b)
    for (std::size_t d = 0; d < d2; ++d) {
      cplx t = 0.0;
      for (std::size_t a = 0; a < d1; ++a) t += m(a * d2 + b, a * d2 + d);
      out(b, d) = t;
    }
  return out;
}

// Swap operator F on C^d (x) C^d, F |i,j> = |j,i>.
inline Matrix swap_operator(std::size_t d) {
  Matrix f(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  return f;
}

using PureState = std::vector<cplx>;

inline double state_norm(const PureState& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline void normalize_state(PureState& v) {
  const double n = state_norm(v);
  require(n > 0.0, "cannot normalize the zero vector");
  for (auto& x : v) x /= n;
}

inline PureState random_pure_state(std::size_t dim, Rng& rng) {
  PureState v(dim);
  for (auto& x : v) x = rng.complex_normal();
  normalize_state(v);
  return v;
}

// Wishart-distributed density matrix of the given rank.
inline Matrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  require(rank >= 1 && rank <= dim, "random_density rank out of range");
  Matrix g(dim, rank);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  Matrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= cplx(1.0 / tr, 0.0);
  return rho;
}

inline Matrix density_from_state(const PureState& v) {
  Matrix rho(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) rho(i, j) = v[i] * std::conj(v[j]);
  return rho;
}

inline double purity(const Matrix& rho) {
  return trace_product(rho, rho).real();
}

// ---------------------------------------------------------------------------
// Real symmetric matrices for the interior-point SDP solver.

class RMatrix {
 public:
  RMatrix() = default;
  explicit RMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static RMatrix identity(std::size_t n) {
    RMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  RMatrix& operator+=(const RMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  RMatrix& operator-=(const RMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  RMatrix& operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  void axpy(double alpha, const RMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += alpha * o.a_[k];
  }

  void symmetrize() {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
        (*this)(i, j) = m;
        (*this)(j, i) = m;
      }
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

inline RMatrix rmul(const RMatrix& a, const RMatrix& b) {
  const std::size_t n = a.size();
  RMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = &b.data()[k * n];
      double* crow = &c.data()[i * n];
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  return c;
}

inline double rtrace_product(const RMatrix& a, const RMatrix& b) {
  const std::size_t n = a.size();
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
  return t;
}

// Cholesky factorization A = L L^T. Returns false if A is not positive
// definite (within a tiny pivot floor).
inline bool cholesky(const RMatrix& a, RMatrix& l) {
  const std::size_t n = a.size();
  l = RMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return true;
}

inline bool is_positive_definite(const RMatrix& a) {
  RMatrix l;
  return cholesky(a, l);
}

// Solve L L^T x = b in place.
inline void cholesky_solve(const RMatrix& l, std::vector<double>& b) {
  const std::size_t n = l.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * b[k];
    b[ii] = s / l(ii, ii);
  }
}

// Inverse of a symmetric positive definite matrix via Cholesky.
inline RMatrix spd_inverse(const RMatrix& a) {
  const std::size_t n = a.size();
  RMatrix l;
  if (!cholesky(a, l)) throw NumericalError("spd_inverse: matrix not positive definite");
  RMatrix inv(n);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    cholesky_solve(l, col);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  inv.symmetrize();
  return inv;
}

// LU solve with partial pivoting for a general square system (used for the
// Schur complement system of the SDP solver).
inline std::vector<double> lu_solve(RMatrix a, std::vector<double> b) {
  const std::size_t n = a.size();
  require(b.size() == n, "lu_solve size mismatch");
  std::vector<std::size_t> piv(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < 1e-300) throw NumericalError("lu_solve: singular system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * b[j];
    b[ii] = s / a(ii, ii);
  }
  return b;
}

// Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts).
// diag/off are the tridiagonal entries (off[i] couples i and i+1); returns
// eigenvalues ascending with eigenvectors of the tridiagonal in `vectors`.
inline void tridiag_eigh(std::vector<double> diag, std::vector<double> off,
                         std::vector<double>& values,
                         std::vector<std::vector<double>>& vectors) {
  const std::size_t n = diag.size();
  off.resize(n, 0.0);
  vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= 1e-300 + 1e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > 80) throw NumericalError("tridiag_eigh failed to converge");
      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < n; ++k) {
          f = vectors[k][i + 1];
          vectors[k][i + 1] = s * vectors[k][i] + c * f;
          vectors[k][i] = c * vectors[k][i] - s * f;
        }
      }
      if (underflow) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  values.resize(n);
  std::vector<std::vector<double>> sorted(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) sorted[i][j] = vectors[i][order[j]];
  }
  vectors = std::move(sorted);
}

}  // namespace qbound
