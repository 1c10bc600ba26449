#pragma once

// Pauli strings in symplectic form, exact sign/phase algebra, dense and
// matrix-free actions, and mutually anticommuting families.
//
// A string with bits (x, z) and sign s denotes the Hermitian operator
//   s * i^{|x & z|} * prod_k X^{x_k} Z^{z_k},
// one factor per qubit. Bit k corresponds to character k and the leftmost
// character acts on the most significant tensor factor.

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbound/common.hpp"
#include "qbound/linalg.hpp"

namespace qbound {

constexpr int kMaxQubits = 64;        // symplectic storage limit
constexpr int kMaxDenseQubits = 10;   // to_matrix guard (1024 x 1024)
constexpr int kMaxStateQubits = 24;   // matvec guard (16M amplitudes)

struct PauliString {
  int n = 0;           // qubit count; n == 0 is the scalar 1
  int sign = 1;        // +1 or -1
  std::uint64_t x = 0; // X part, bit k = qubit k (leftmost character)
  std::uint64_t z = 0; // Z part

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

inline PauliString parse_pauli(std::string_view text) {
  PauliString p;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    p.sign = (text[pos] == '-') ? -1 : 1;
    ++pos;
  }
  const std::size_t len = text.size() - pos;
  if (len > kMaxQubits)
    throw GuardError("pauli string exceeds " + std::to_string(kMaxQubits) + " qubits");
  p.n = static_cast<int>(len);
  for (std::size_t k = 0; pos < text.size(); ++pos, ++k) {
    const std::uint64_t bit = std::uint64_t(1) << k;
    switch (text[pos]) {
      case 'I': break;
      case 'X': p.x |= bit; break;
      case 'Y': p.x |= bit; p.z |= bit; break;
      case 'Z': p.z |= bit; break;
      default:
        throw ParseError("invalid pauli character '" + std::string(1, text[pos]) +
                         "' (expected I, X, Y, Z)");
    }
  }
  return p;
}

inline char pauli_char(const PauliString& p, int k) {
  const bool xb = (p.x >> k) & 1, zb = (p.z >> k) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

inline std::string to_string(const PauliString& p) {
  std::string s;
  if (p.sign < 0) s.push_back('-');
  for (int k = 0; k < p.n; ++k) s.push_back(pauli_char(p, k));
  return s;
}

inline PauliString pauli_identity(int n) {
  require(n >= 0 && n <= kMaxQubits, "qubit count out of range");
  PauliString p;
  p.n = n;
  return p;
}

// Single non-identity character c at qubit k of an n-qubit string.
inline PauliString pauli_single(int n, int k, char c) {
  require(k >= 0 && k < n, "pauli_single position out of range");
  PauliString p = pauli_identity(n);
  const std::uint64_t bit = std::uint64_t(1) << k;
  switch (c) {
    case 'X': p.x = bit; break;
    case 'Y': p.x = bit; p.z = bit; break;
    case 'Z': p.z = bit; break;
    case 'I': break;
    default: throw std::invalid_argument("pauli_single: bad character");
  }
  return p;
}

inline bool commutes(const PauliString& p, const PauliString& q) {
  require(p.n == q.n, "commutes: qubit count mismatch");
  const int sym = std::popcount(p.x & q.z) + std::popcount(p.z & q.x);
  return (sym % 2) == 0;
}

inline constexpr cplx kPhases[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

// Product p * q as (canonical string with sign +1, phase in {1, i, -1, -i}):
// phase * string == p * q exactly.
inline std::pair<PauliString, cplx> multiply(const PauliString& p, const PauliString& q) {
  require(p.n == q.n, "multiply: qubit count mismatch");
  PauliString r;
  r.n = p.n;
  r.x = p.x ^ q.x;
  r.z = p.z ^ q.z;
  r.sign = 1;
  int e = std::popcount(p.x & p.z) + std::popcount(q.x & q.z) -
          std::popcount(r.x & r.z) + 2 * std::popcount(p.z & q.x);
  if (p.sign < 0) e += 2;
  if (q.sign < 0) e += 2;
  e = ((e % 4) + 4) % 4;
  return {r, kPhases[e]};
}

inline PauliString tensor(const PauliString& p, const PauliString& q) {
  require(p.n + q.n <= kMaxQubits, "tensor: combined string too long");
  PauliString r;
  r.n = p.n + q.n;
  r.x = p.x | (q.x << p.n);
  r.z = p.z | (q.z << p.n);
  r.sign = p.sign * q.sign;
  return r;
}

namespace detail {
// Bit-reversed masks translate qubit indexing (bit k = qubit k, leftmost) into
// basis-state indexing (qubit 0 = most significant bit of the index).
inline std::uint64_t reverse_bits(std::uint64_t m, int n) {
  std::uint64_t r = 0;
  for (int k = 0; k < n; ++k)
    if ((m >> k) & 1) r |= std::uint64_t(1) << (n - 1 - k);
  return r;
}
}  // namespace detail

// Leading scalar of the canonical form: sign * i^{|x & z|}.
inline cplx pauli_prefactor(const PauliString& p) {
  int e = std::popcount(p.x & p.z) % 4;
  if (p.sign < 0) e = (e + 2) % 4;
  return kPhases[e];
}

inline void apply_pauli(const PauliString& p, const cplx* in, cplx* out) {
  guard_that(p.n <= kMaxStateQubits, "apply_pauli: qubit count exceeds guard");
  const std::uint64_t dim = std::uint64_t(1) << p.n;
  const std::uint64_t xr = detail::reverse_bits(p.x, p.n);
  const std::uint64_t zr = detail::reverse_bits(p.z, p.n);
  const cplx pf = pauli_prefactor(p);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const cplx v = (std::popcount(zr & b) & 1) ? -in[b] : in[b];
    out[b ^ xr] = pf * v;
  }
}

inline PureState apply_pauli(const PauliString& p, const PureState& v) {
  require(v.size() == (std::size_t(1) << p.n), "apply_pauli: state dimension mismatch");
  PureState out(v.size());
  apply_pauli(p, v.data(), out.data());
  return out;
}

// <v| P |v> (real because P is Hermitian).
inline double expectation(const PauliString& p, const PureState& v) {
  require(v.size() == (std::size_t(1) << p.n), "expectation: state dimension mismatch");
  const std::uint64_t dim = std::uint64_t(1) << p.n;
  const std::uint64_t xr = detail::reverse_bits(p.x, p.n);
  const std::uint64_t zr = detail::reverse_bits(p.z, p.n);
  const cplx pf = pauli_prefactor(p);
  cplx acc = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const cplx t = (std::popcount(zr & b) & 1) ? -v[b] : v[b];
    acc += std::conj(v[b ^ xr]) * t;
  }
  return (pf * acc).real();
}

inline double expectation(const PauliString& p, const Matrix& rho) {
  require(rho.rows() == (std::size_t(1) << p.n), "expectation: shape mismatch");
  const std::uint64_t dim = std::uint64_t(1) << p.n;
  const std::uint64_t xr = detail::reverse_bits(p.x, p.n);
  const std::uint64_t zr = detail::reverse_bits(p.z, p.n);
  const cplx pf = pauli_prefactor(p);
  cplx acc = 0.0;
  // tr(rho P) = sum_b rho(b, b^xr) * P(b^xr, b); P has one entry per column.
  for (std::uint64_t b = 0; b < dim; ++b) {
    const cplx amp = (std::popcount(zr & b) & 1) ? -pf : pf;
    acc += rho(b, b ^ xr) * amp;
  }
  return acc.real();
}

inline Matrix to_matrix(const PauliString& p) {
  guard_that(p.n <= kMaxDenseQubits, "to_matrix: qubit count exceeds dense guard");
  const std::uint64_t dim = std::uint64_t(1) << p.n;
  const std::uint64_t xr = detail::reverse_bits(p.x, p.n);
  const std::uint64_t zr = detail::reverse_bits(p.z, p.n);
  const cplx pf = pauli_prefactor(p);
  Matrix m(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b)
    m(b ^ xr, b) = (std::popcount(zr & b) & 1) ? -pf : pf;
  return m;
}

// Real linear combination of Pauli strings on a common register.
struct PauliSumOperator {
  int n = 0;
  std::vector<std::pair<double, PauliString>> terms;

  PauliSumOperator() = default;
  PauliSumOperator(int n_qubits, std::vector<std::pair<double, PauliString>> t)
      : n(n_qubits), terms(std::move(t)) {
    for (const auto& [c, p] : terms)
      require(p.n == n, "PauliSumOperator: mixed qubit counts");
  }

  std::size_t dim() const { return std::size_t(1) << n; }

  void apply(const cplx* in, cplx* out) const {
    const std::size_t d = dim();
    std::fill(out, out + d, cplx(0.0, 0.0));
    std::vector<cplx> tmp(d);
    for (const auto& [c, p] : terms) {
      apply_pauli(p, in, tmp.data());
      for (std::size_t i = 0; i < d; ++i) out[i] += c * tmp[i];
    }
  }

  PureState apply(const PureState& v) const {
    require(v.size() == dim(), "PauliSumOperator: state dimension mismatch");
    PureState out(v.size());
    apply(v.data(), out.data());
    return out;
  }

  double expectation_value(const PureState& v) const {
    double s = 0.0;
    for (const auto& [c, p] : terms) s += c * expectation(p, v);
    return s;
  }

  Matrix to_dense() const {
    guard_that(n <= kMaxDenseQubits, "PauliSumOperator: dense guard exceeded");
    Matrix m(dim(), dim());
    for (const auto& [c, p] : terms) {
      Matrix t = to_matrix(p);
      t *= cplx(c, 0.0);
      m += t;
    }
    return m;
  }
};

// r mutually anticommuting Hermitian Pauli strings on ceil((r-1)/2) qubits
// (one qubit for r == 1): X/Y heads with Z tails, plus an all-Z cap when r is
// odd. Example: r = 5 gives {XI, YI, ZX, ZY, ZZ}.
inline std::vector<PauliString> anticommuting_family(int r) {
  require(r >= 1, "anticommuting_family: r must be positive");
  const int m = (r == 1) ? 1 : (r / 2);
  require(m <= kMaxQubits, "anticommuting_family: too many qubits");
  std::vector<PauliString> out;
  out.reserve(r);
  for (int k = 0; k < m && static_cast<int>(out.size()) < r; ++k) {
    for (char head : {'X', 'Y'}) {
      if (static_cast<int>(out.size()) == r) break;
      PauliString p = pauli_identity(m);
      for (int j = 0; j < k; ++j) p.z |= std::uint64_t(1) << j;
      const std::uint64_t bit = std::uint64_t(1) << k;
      p.x |= bit;
      if (head == 'Y') p.z |= bit;
      out.push_back(p);
    }
  }
  if (static_cast<int>(out.size()) < r) {
    PauliString p = pauli_identity(m);
    for (int j = 0; j < m; ++j) p.z |= std::uint64_t(1) << j;
    out.push_back(p);
  }
  return out;
}

}  // namespace qbound
