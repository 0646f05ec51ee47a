#pragma once

// Shared randomness and comparison helpers for the test suites.

#include <cmath>
#include <random>

#include "qpm/linalg.hpp"

namespace qpm::test {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eed5eedULL) {
  return std::mt19937_64{seed};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline BlochVector random_unit_vector(std::mt19937_64& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  const ComplexMatrix m = random_matrix(rng, dim);
  ComplexMatrix h = m + m.adjoint();
  h *= cplx(0.5);
  return h;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t dim) {
  return propagator(random_hermitian(rng, dim), 1.0);
}

inline double fidelity(const State4& a, const State4& b) { return std::norm(inner(a, b)); }

}  // namespace qpm::test
