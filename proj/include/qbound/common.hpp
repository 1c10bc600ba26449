#pragma once

// Shared error types, guard checks, and the deterministic RNG used across qbound.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qbound {

using cplx = std::complex<double>;

// Input that cannot be interpreted (bad text, malformed JSON, inconsistent sizes).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem size exceeds a documented resource guard.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to reach its contract (non-convergence, singularity).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void guard_that(bool ok, const std::string& what) {
  if (!ok) throw GuardError(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Deterministic RNG: identical seeds give identical streams on every platform.
// Normal deviates use Box-Muller on top of mt19937_64 so no library-specific
// distribution code is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  cplx complex_normal() { return cplx(normal(), normal()); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return gen_() % n;  // bias negligible for the small n used here
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qbound
