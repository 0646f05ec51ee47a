#pragma once

// Dense complex linear algebra for the 2x2 and 4x4 operators used throughout:
// Pauli algebra, Kronecker products, Hermitian eigensystems, propagators,
// partial trace, purity and Bloch-sphere conversions. Natural units
// (hbar = 1, omega0 = 1) everywhere; times are in units of 1/omega0.

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace qpm {

using cplx = std::complex<double>;

/// Real 3-vector on (or inside) the Bloch sphere.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  double dot(const BlochVector& o) const;
  BlochVector cross(const BlochVector& o) const;

  /// Unit vector along this one. Throws std::invalid_argument below the
  /// rejection threshold |v| < 1e-6.
  BlochVector normalized() const;
};

BlochVector operator+(const BlochVector& a, const BlochVector& b);
BlochVector operator-(const BlochVector& a, const BlochVector& b);
BlochVector operator*(double s, const BlochVector& v);

/// Dense row-major complex matrix of dimension 2 or 4.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);  // zero matrix; dim must be 2 or 4
  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// max_ij |A_ij - conj(A_ji)|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// max_ij |A_ij - B_ij|
  double max_abs_diff(const ComplexMatrix& o) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(const cplx& s);

 private:
  std::size_t dim_ = 0;
  std::array<cplx, 16> a_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const cplx& s, ComplexMatrix a);
ComplexMatrix operator*(double s, ComplexMatrix a);

/// [a, b] = ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();
const ComplexMatrix& identity2();
const ComplexMatrix& identity4();

/// Kronecker product of two 2x2 matrices, system factor first.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct Eigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns; column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix (closed-form 2x2 rotation,
/// cyclic Jacobi sweeps of the same kernel for 4x4). Throws
/// std::invalid_argument if the input is not Hermitian within 1e-10.
Eigensystem hermitian_eigensystem(const ComplexMatrix& h);

/// exp(-i h t) for Hermitian h, via eigendecomposition.
ComplexMatrix propagator(const ComplexMatrix& h, double t);

enum class Subsystem { System, Probe };

/// Reduce a 4x4 system (x) probe density matrix to the kept qubit.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep);

/// State purity of a qubit density matrix: the dominant eigenvalue,
/// (1 + |r|)/2 for Bloch vector r. 1 for pure states, 1/2 for I/2.
double purity(const ComplexMatrix& rho);

/// (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z)
BlochVector bloch_vector(const ComplexMatrix& rho);

/// (I + v.sigma)/2; rejects |v| > 1 + 1e-9.
ComplexMatrix bloch_to_density(const BlochVector& v);

using State2 = std::array<cplx, 2>;
using State4 = std::array<cplx, 4>;

State2 apply(const ComplexMatrix& u, const State2& psi);
State4 apply(const ComplexMatrix& u, const State4& psi);
cplx inner(const State2& a, const State2& b);
cplx inner(const State4& a, const State4& b);
double norm(const State2& psi);
double norm(const State4& psi);
State2 normalized(const State2& psi);
State4 normalized(const State4& psi);
ComplexMatrix density(const State2& psi);
ComplexMatrix density(const State4& psi);
State4 kron(const State2& a, const State2& b);

/// Eigenstates (|+>, |->) of sigma.u for unit u, with the phase convention
/// |+> = (cos(a/2), sin(a/2) e^{ib}), |-> = (sin(a/2), -cos(a/2) e^{ib})
/// where (a, b) are the polar and azimuthal angles of u.
std::pair<State2, State2> axis_eigenstates(const BlochVector& u);

}  // namespace qpm
