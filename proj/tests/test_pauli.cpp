#include <catch2/catch_amalgamated.hpp>

#include "qbound/pauli.hpp"

using namespace qbound;

namespace {

const Matrix kI2 = [] {
  return Matrix::identity(2);
}();
const Matrix kX = [] {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}();
const Matrix kY = [] {
  Matrix m(2, 2);
  m(0, 1) = cplx(0, -1);
  m(1, 0) = cplx(0, 1);
  return m;
}();
const Matrix kZ = [] {
  Matrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}();

const Matrix& char_matrix(char c) {
  switch (c) {
    case 'X': return kX;
    case 'Y': return kY;
    case 'Z': return kZ;
    default: return kI2;
  }
}

// Independent dense oracle: left-to-right Kronecker product of 2x2 factors.
Matrix kron_oracle(const std::string& word, int sign = 1) {
  Matrix m = Matrix::identity(1);
  for (char c : word) m = kron(m, char_matrix(c));
  if (sign < 0) m *= cplx(-1.0, 0.0);
  return m;
}

double frob_diff(const Matrix& a, const Matrix& b) {
  Matrix d = a;
  d -= b;
  return d.frob_norm();
}

}  // namespace

TEST_CASE("parse and print round-trip") {
  for (const std::string s : {"XYZI", "-ZZ", "I", "X", "-IYXZ"}) {
    const PauliString p = parse_pauli(s);
    REQUIRE(to_string(p) == s);
  }
  REQUIRE(to_string(parse_pauli("+XZ")) == "XZ");
  REQUIRE(parse_pauli("").n == 0);  // scalar 1
  REQUIRE_THROWS_AS(parse_pauli("XA"), ParseError);
  REQUIRE_THROWS_AS(parse_pauli(std::string(65, 'X')), GuardError);
}

TEST_CASE("to_matrix matches the Kronecker oracle") {
  for (const std::string word : {"X", "Y", "Z", "I", "XY", "YZ", "ZI", "XYZ", "IYXZ", "YYY"}) {
    const Matrix got = to_matrix(parse_pauli(word));
    REQUIRE(frob_diff(got, kron_oracle(word)) <= 1e-14);
  }
  const Matrix neg = to_matrix(parse_pauli("-XZ"));
  REQUIRE(frob_diff(neg, kron_oracle("XZ", -1)) <= 1e-14);
}

TEST_CASE("pauli matrices are Hermitian and unitary") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    std::string word;
    for (int k = 0; k < n; ++k) word.push_back("IXYZ"[rng.below(4)]);
    const PauliString p = parse_pauli(word);
    const Matrix m = to_matrix(p);
    REQUIRE(m.is_hermitian(1e-14));
    const Matrix m2 = m * m;
    REQUIRE(frob_diff(m2, Matrix::identity(m.rows())) <= 1e-13);
  }
}

TEST_CASE("multiply matches dense products including phases") {
  // X * Z = -i Y is the canonical sign bookkeeping example.
  const auto [s, phase] = multiply(parse_pauli("X"), parse_pauli("Z"));
  REQUIRE(to_string(s) == "Y");
  REQUIRE(phase == cplx(0, -1));

  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    std::string wa, wb;
    for (int k = 0; k < n; ++k) {
      wa.push_back("IXYZ"[rng.below(4)]);
      wb.push_back("IXYZ"[rng.below(4)]);
    }
    PauliString a = parse_pauli(wa), b = parse_pauli(wb);
    if (rng.below(2)) a.sign = -1;
    if (rng.below(2)) b.sign = -1;
    const auto [prod, ph] = multiply(a, b);
    Matrix expect = to_matrix(a) * to_matrix(b);
    Matrix got = to_matrix(prod);
    got *= ph;
    REQUIRE(frob_diff(got, expect) <= 1e-13);
  }
}

TEST_CASE("commutes agrees with dense commutators") {
  Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    std::string wa, wb;
    for (int k = 0; k < n; ++k) {
      wa.push_back("IXYZ"[rng.below(4)]);
      wb.push_back("IXYZ"[rng.below(4)]);
    }
    const PauliString a = parse_pauli(wa), b = parse_pauli(wb);
    const Matrix ma = to_matrix(a), mb = to_matrix(b);
    const Matrix ab = ma * mb, ba = mb * ma;
    Matrix comm = ab;
    comm -= ba;
    const bool dense_commutes = comm.frob_norm() <= 1e-12;
    REQUIRE(commutes(a, b) == dense_commutes);
    // Paulis either commute or anticommute.
    if (!dense_commutes) {
      Matrix anti = ab;
      anti += ba;
      REQUIRE(anti.frob_norm() <= 1e-12);
    }
  }
}

TEST_CASE("tensor concatenates with the leftmost factor most significant") {
  const PauliString a = parse_pauli("XY"), b = parse_pauli("-Z");
  const PauliString t = tensor(a, b);
  REQUIRE(to_string(t) == "-XYZ");
  REQUIRE(frob_diff(to_matrix(t), kron(to_matrix(a), to_matrix(b))) <= 1e-14);
}

TEST_CASE("apply_pauli agrees with dense multiplication") {
  Rng rng(23);
  for (const std::string word : {"XZ", "YIY", "ZZZ", "IXI", "-YX"}) {
    const PauliString p = parse_pauli(word);
    const PureState v = random_pure_state(std::size_t(1) << p.n, rng);
    const PureState got = apply_pauli(p, v);
    const Matrix m = to_matrix(p);
    for (std::size_t i = 0; i < v.size(); ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) s += m(i, j) * v[j];
      REQUIRE(std::abs(s - got[i]) <= 1e-13);
    }
    REQUIRE(expectation(p, v) == Catch::Approx([&] {
              cplx s = 0.0;
              for (std::size_t i = 0; i < v.size(); ++i)
                s += std::conj(v[i]) * got[i];
              return s.real();
            }()).margin(1e-12));
    REQUIRE(expectation(p, density_from_state(v)) ==
            Catch::Approx(expectation(p, v)).margin(1e-12));
  }
}

TEST_CASE("scalar strings act as the number one") {
  const PauliString s = parse_pauli("");
  REQUIRE(s.n == 0);
  const PureState v = {cplx(0.6, 0.0), };
  REQUIRE(expectation(s, {cplx(1.0, 0.0)}) == Catch::Approx(1.0));
  const Matrix m = to_matrix(s);
  REQUIRE(m.rows() == 1);
  REQUIRE(std::abs(m(0, 0) - cplx(1.0, 0.0)) <= 1e-15);
  (void)v;
}

TEST_CASE("pauli sum operator matches its dense form") {
  Rng rng(31);
  PauliSumOperator op(2, {{0.5, parse_pauli("XZ")},
                          {-1.25, parse_pauli("YI")},
                          {2.0, parse_pauli("ZZ")}});
  const Matrix dense = op.to_dense();
  const PureState v = random_pure_state(4, rng);
  const PureState got = op.apply(v);
  for (std::size_t i = 0; i < 4; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) s += dense(i, j) * v[j];
    REQUIRE(std::abs(s - got[i]) <= 1e-13);
  }
  REQUIRE(op.expectation_value(v) ==
          Catch::Approx(trace_product(dense, density_from_state(v)).real())
              .margin(1e-12));
}

TEST_CASE("anticommuting families pairwise anticommute") {
  for (int r = 1; r <= 9; ++r) {
    const auto fam = anticommuting_family(r);
    REQUIRE(static_cast<int>(fam.size()) == r);
    const int m = fam[0].n;
    REQUIRE(m == ((r == 1) ? 1 : r / 2));
    for (int i = 0; i < r; ++i) {
      REQUIRE(fam[i].n == m);
      for (int j = i + 1; j < r; ++j) REQUIRE_FALSE(commutes(fam[i], fam[j]));
    }
  }
  // r = 3 on one qubit is exactly {X, Y, Z}.
  const auto xyz = anticommuting_family(3);
  REQUIRE(to_string(xyz[0]) == "X");
  REQUIRE(to_string(xyz[1]) == "Y");
  REQUIRE(to_string(xyz[2]) == "Z");
}
