#include "qpm/linalg.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_util.hpp"

using namespace qpm;

namespace {

double reconstruction_residual(const ComplexMatrix& h, const Eigensystem& es) {
  const std::size_t n = h.dim();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += es.values[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
  return r.max_abs_diff(h);
}

// max |h V - V Lambda|
double eigenpair_residual(const ComplexMatrix& h, const Eigensystem& es) {
  const std::size_t n = h.dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      cplx hv = 0.0;
      for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * es.vectors(j, k);
      worst = std::max(worst, std::abs(hv - es.values[k] * es.vectors(i, k)));
    }
  return worst;
}

double orthonormality_defect(const ComplexMatrix& v) {
  const ComplexMatrix g = v.adjoint() * v;
  return g.max_abs_diff(ComplexMatrix::identity(v.dim()));
}

}  // namespace

TEST_CASE("kron identity case") {
  CHECK(kron(identity2(), identity2()).max_abs_diff(identity4()) == 0.0);
}

TEST_CASE("kron sigma_z x sigma_y block structure") {
  const ComplexMatrix k = kron(sigma_z(), sigma_y());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(std::abs(k(i, j) - sigma_y()(i, j)) == 0.0);
      CHECK(std::abs(k(2 + i, 2 + j) + sigma_y()(i, j)) == 0.0);
      CHECK(std::abs(k(i, 2 + j)) == 0.0);
      CHECK(std::abs(k(2 + i, j)) == 0.0);
    }
}

TEST_CASE("kron of unit Pauli vectors has eigenvalues {-1,-1,+1,+1}") {
  auto rng = test::make_rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const BlochVector m = test::random_unit_vector(rng);
    const BlochVector n = test::random_unit_vector(rng);
    ComplexMatrix sm(2), sn(2);
    sm(0, 0) = m.z; sm(1, 1) = -m.z; sm(0, 1) = cplx(m.x, -m.y); sm(1, 0) = cplx(m.x, m.y);
    sn(0, 0) = n.z; sn(1, 1) = -n.z; sn(0, 1) = cplx(n.x, -n.y); sn(1, 0) = cplx(n.x, n.y);
    const ComplexMatrix k = kron(sm, sn);

    // Independent route: traceless involution, so the spectrum is +-1 twice.
    CHECK((k * k).max_abs_diff(identity4()) <= 1e-12);
    CHECK(std::abs(k.trace()) <= 1e-12);

    const Eigensystem es = hermitian_eigensystem(k);
    CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.values[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.values[3] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("kron rejects non-2x2 operands") {
  CHECK_THROWS_AS(kron(identity4(), identity2()), std::invalid_argument);
}

TEST_CASE("kron mixed-product identity") {
  auto rng = test::make_rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = test::random_unitary(rng, 2), b = test::random_unitary(rng, 2);
    const ComplexMatrix c = test::random_unitary(rng, 2), d = test::random_unitary(rng, 2);
    CHECK((kron(a, b) * kron(c, d)).max_abs_diff(kron(a * c, b * d)) <= 1e-12);
  }
}

TEST_CASE("eigensystem of sigma_z") {
  const Eigensystem es = hermitian_eigensystem(sigma_z());
  CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  // eigenvector for -1 is |1>, for +1 is |0>, up to phase
  CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(es.vectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues of sigma.w are +-|w|") {
  auto rng = test::make_rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const BlochVector u = test::random_unit_vector(rng);
    const double chi = test::uniform(rng, 0.1, 3.0);
    ComplexMatrix h(2);
    h(0, 0) = chi * u.z; h(1, 1) = -chi * u.z;
    h(0, 1) = chi * cplx(u.x, -u.y); h(1, 0) = chi * cplx(u.x, u.y);
    const Eigensystem es = hermitian_eigensystem(h);
    CHECK(es.values[0] == doctest::Approx(-chi).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(chi).epsilon(1e-12));
  }
}

TEST_CASE("eigensystem reconstruction over random Hermitian matrices") {
  auto rng = test::make_rng(14);
  for (std::size_t dim : {std::size_t{2}, std::size_t{4}}) {
    for (int trial = 0; trial < 10000; ++trial) {
      const ComplexMatrix h = test::random_hermitian(rng, dim);
      const Eigensystem es = hermitian_eigensystem(h);
      REQUIRE(reconstruction_residual(h, es) <= 1e-11);
      REQUIRE(eigenpair_residual(h, es) <= 1e-11);
      REQUIRE(orthonormality_defect(es.vectors) <= 1e-11);
      for (std::size_t k = 1; k < dim; ++k) REQUIRE(es.values[k - 1] <= es.values[k]);
    }
  }
}

TEST_CASE("eigensystem rejects non-Hermitian input") {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigensystem(m), std::invalid_argument);
}

TEST_CASE("propagator of zero is identity") {
  CHECK(propagator(ComplexMatrix(4), 3.7).max_abs_diff(identity4()) <= 1e-14);
}

TEST_CASE("propagator of (1/2) sigma_z is a phase rotation") {
  const double t = 0.83;
  const ComplexMatrix u = propagator(0.5 * sigma_z(), t);
  CHECK(std::abs(u(0, 0) - std::exp(cplx(0, -0.5 * t))) <= 1e-13);
  CHECK(std::abs(u(1, 1) - std::exp(cplx(0, +0.5 * t))) <= 1e-13);
  CHECK(std::abs(u(0, 1)) <= 1e-14);
  CHECK(std::abs(u(1, 0)) <= 1e-14);
}

TEST_CASE("propagator of (pi/4) sigma_y rotates |0> to |+>") {
  const ComplexMatrix u = propagator((std::numbers::pi / 4.0) * sigma_y(), 1.0);
  const State2 out = apply(u, State2{1.0, 0.0});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out[0] - inv_sqrt2) <= 1e-13);
  CHECK(std::abs(out[1] - inv_sqrt2) <= 1e-13);
}

TEST_CASE("propagator group property and unitarity") {
  auto rng = test::make_rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = test::random_hermitian(rng, 4);
    const double t = test::uniform(rng, 0.0, 10.0);
    const ComplexMatrix u = propagator(h, t);
    CHECK((u * u.adjoint()).max_abs_diff(identity4()) <= 1e-11);
    CHECK((u * propagator(h, -t)).max_abs_diff(identity4()) <= 1e-11);
  }
}

TEST_CASE("partial trace of a product state recovers the factors") {
  auto rng = test::make_rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    // Random single-qubit mixed states from random Bloch vectors.
    const double ra = test::uniform(rng, 0.0, 1.0), rb = test::uniform(rng, 0.0, 1.0);
    const ComplexMatrix rho_a = bloch_to_density(ra * test::random_unit_vector(rng));
    const ComplexMatrix rho_b = bloch_to_density(rb * test::random_unit_vector(rng));
    const ComplexMatrix joint = kron(rho_a, rho_b);
    CHECK(partial_trace(joint, Subsystem::System).max_abs_diff(rho_a) <= 1e-14);
    CHECK(partial_trace(joint, Subsystem::Probe).max_abs_diff(rho_b) <= 1e-14);
  }
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const State4 bell{inv_sqrt2, 0.0, 0.0, inv_sqrt2};
  const ComplexMatrix rho = density(bell);
  const ComplexMatrix half = 0.5 * identity2();
  CHECK(partial_trace(rho, Subsystem::System).max_abs_diff(half) <= 1e-14);
  CHECK(partial_trace(rho, Subsystem::Probe).max_abs_diff(half) <= 1e-14);
}

TEST_CASE("partial trace preserves trace and Hermiticity") {
  auto rng = test::make_rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    // Random density matrix: normalized Gram matrix of a random matrix.
    const ComplexMatrix m = test::random_matrix(rng, 4);
    ComplexMatrix rho = m * m.adjoint();
    rho *= cplx(1.0) / rho.trace();
    for (Subsystem keep : {Subsystem::System, Subsystem::Probe}) {
      const ComplexMatrix r = partial_trace(rho, keep);
      CHECK(std::abs(r.trace() - cplx(1.0)) <= 1e-9);
      CHECK(r.hermiticity_defect() <= 1e-9);
      const Eigensystem es = hermitian_eigensystem(r);
      CHECK(es.values.front() >= -1e-9);
    }
  }
}

TEST_CASE("purity of pure and maximally mixed states") {
  auto rng = test::make_rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix proj = bloch_to_density(test::random_unit_vector(rng));
    CHECK(purity(proj) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(purity(0.5 * identity2()) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("purity is invariant under unitary conjugation") {
  auto rng = test::make_rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = test::uniform(rng, 0.0, 1.0);
    const ComplexMatrix rho = bloch_to_density(r * test::random_unit_vector(rng));
    const ComplexMatrix u = test::random_unitary(rng, 2);
    CHECK(std::abs(purity(u * rho * u.adjoint()) - purity(rho)) <= 1e-12);
  }
}

TEST_CASE("bloch vector of basis states") {
  const BlochVector z = bloch_vector(density(State2{1.0, 0.0}));
  CHECK(z.x == 0.0);
  CHECK(z.y == 0.0);
  CHECK(z.z == 1.0);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const BlochVector x = bloch_vector(density(State2{inv_sqrt2, inv_sqrt2}));
  CHECK(x.x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(x.y) <= 1e-14);
  CHECK(std::abs(x.z) <= 1e-14);

  const BlochVector o = bloch_vector(0.5 * identity2());
  CHECK(o.norm() <= 1e-14);
}

TEST_CASE("bloch round trip is the identity") {
  auto rng = test::make_rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = test::uniform(rng, 0.0, 1.0);
    const ComplexMatrix rho = bloch_to_density(r * test::random_unit_vector(rng));
    CHECK(bloch_to_density(bloch_vector(rho)).max_abs_diff(rho) <= 1e-12);
  }
}

TEST_CASE("bloch_to_density rejects vectors outside the sphere") {
  CHECK_THROWS_AS(bloch_to_density(BlochVector{1.1, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("axis eigenstates diagonalize sigma.u") {
  auto rng = test::make_rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const BlochVector u = test::random_unit_vector(rng);
    ComplexMatrix s(2);
    s(0, 0) = u.z; s(1, 1) = -u.z; s(0, 1) = cplx(u.x, -u.y); s(1, 0) = cplx(u.x, u.y);
    const auto [plus, minus] = axis_eigenstates(u);
    const State2 sp = apply(s, plus), sm = apply(s, minus);
    CHECK(std::abs(sp[0] - plus[0]) <= 1e-13);
    CHECK(std::abs(sp[1] - plus[1]) <= 1e-13);
    CHECK(std::abs(sm[0] + minus[0]) <= 1e-13);
    CHECK(std::abs(sm[1] + minus[1]) <= 1e-13);
    CHECK(std::abs(inner(plus, minus)) <= 1e-13);
  }
}
