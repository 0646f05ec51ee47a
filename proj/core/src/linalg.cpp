#include "qpm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qpm {

namespace {

constexpr double kAxisRejectNorm = 1e-6;

void check_dim(std::size_t d) {
  if (d != 2 && d != 4) throw std::invalid_argument("ComplexMatrix: dim must be 2 or 4");
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double BlochVector::dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }

BlochVector BlochVector::cross(const BlochVector& o) const {
  return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
}

BlochVector BlochVector::normalized() const {
  const double n = norm();
  if (n < kAxisRejectNorm) throw std::invalid_argument("BlochVector: near-zero vector has no direction");
  return {x / n, y / n, z / n};
}

BlochVector operator+(const BlochVector& a, const BlochVector& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

BlochVector operator-(const BlochVector& a, const BlochVector& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

BlochVector operator*(double s, const BlochVector& v) { return {s * v.x, s * v.y, s * v.z}; }

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[i]);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return d;
}

bool ComplexMatrix::is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) d = std::max(d, std::abs(a_[i] - o.a_[i]));
  return d;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(const cplx& s) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix product: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix operator*(const cplx& s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

namespace {

ComplexMatrix make_pauli(int axis) {
  ComplexMatrix m(2);
  switch (axis) {
    case 0: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 1: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

}  // namespace

const ComplexMatrix& sigma_x() { static const ComplexMatrix m = make_pauli(0); return m; }
const ComplexMatrix& sigma_y() { static const ComplexMatrix m = make_pauli(1); return m; }
const ComplexMatrix& sigma_z() { static const ComplexMatrix m = make_pauli(2); return m; }
const ComplexMatrix& identity2() { static const ComplexMatrix m = ComplexMatrix::identity(2); return m; }
const ComplexMatrix& identity4() { static const ComplexMatrix m = ComplexMatrix::identity(4); return m; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) throw std::invalid_argument("kron: both operands must be 2x2");
  ComplexMatrix c(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) c(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return c;
}

namespace {

// Unitary closed-form diagonalization of the Hermitian 2x2 block
// [[app, apq], [conj(apq), aqq]]: returns column entries (c, s*e^{-i phi})
// and (-s, c*e^{-i phi}) packed as a pair of 2-vectors. The rotation angle
// is the Jacobi inner rotation (|t| <= 1), stable for all inputs.
struct BlockRotation {
  cplx g00, g01, g10, g11;  // columns (g00, g10) and (g01, g11)
};

BlockRotation block_rotation(double app, double aqq, cplx apq) {
  const double beta = std::abs(apq);
  if (beta == 0.0) return {1.0, 0.0, 0.0, 1.0};
  const cplx phase = apq / beta;  // e^{i phi}
  const double tau = (app - aqq) / (2.0 * beta);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, -s, s * std::conj(phase), c * std::conj(phase)};
}

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  if (h.dim() != 2 && h.dim() != 4) throw std::invalid_argument("hermitian_eigensystem: dim must be 2 or 4");
  if (h.hermiticity_defect() > 1e-10)
    throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");

  const std::size_t n = h.dim();
  // Work on the exactly-Hermitian part so the Jacobi loop sees a symmetric
  // off-diagonal pattern.
  ComplexMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps && offdiag_norm(a) > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const BlockRotation g = block_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        // A <- G^dagger A G on rows/columns p, q
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = std::conj(g.g00) * apj + std::conj(g.g10) * aqj;
          a(q, j) = std::conj(g.g01) * apj + std::conj(g.g11) * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * g.g00 + aiq * g.g10;
          a(i, q) = aip * g.g01 + aiq * g.g11;
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * g.g00 + viq * g.g10;
          v(i, q) = vip * g.g01 + viq * g.g11;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Eigensystem es;
  es.values.resize(n);
  es.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
  const Eigensystem es = hermitian_eigensystem(h);
  const std::size_t n = h.dim();
  ComplexMatrix u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx phase = std::exp(cplx(0.0, -es.values[k] * t));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = es.vectors(i, k) * phase;
      for (std::size_t j = 0; j < n; ++j) u(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return u;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_trace: expected a 4x4 density matrix");
  ComplexMatrix r(2);
  if (keep == Subsystem::System) {
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t t = 0; t < 2; ++t) r(s, t) = rho(2 * s + 0, 2 * t + 0) + rho(2 * s + 1, 2 * t + 1);
  } else {
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q) r(p, q) = rho(0 + p, 0 + q) + rho(2 + p, 2 + q);
  }
  return r;
}

double purity(const ComplexMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("purity: expected a 2x2 density matrix");
  return 0.5 * (1.0 + bloch_vector(rho).norm());
}

BlochVector bloch_vector(const ComplexMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("bloch_vector: expected a 2x2 density matrix");
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

ComplexMatrix bloch_to_density(const BlochVector& v) {
  if (v.norm() > 1.0 + 1e-9) throw std::invalid_argument("bloch_to_density: |v| > 1");
  ComplexMatrix rho(2);
  rho(0, 0) = 0.5 * (1.0 + v.z);
  rho(1, 1) = 0.5 * (1.0 - v.z);
  rho(0, 1) = 0.5 * cplx(v.x, -v.y);
  rho(1, 0) = 0.5 * cplx(v.x, v.y);
  return rho;
}

State2 apply(const ComplexMatrix& u, const State2& psi) {
  if (u.dim() != 2) throw std::invalid_argument("apply: dimension mismatch");
  return {u(0, 0) * psi[0] + u(0, 1) * psi[1], u(1, 0) * psi[0] + u(1, 1) * psi[1]};
}

State4 apply(const ComplexMatrix& u, const State4& psi) {
  if (u.dim() != 4) throw std::invalid_argument("apply: dimension mismatch");
  State4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += u(i, j) * psi[j];
  return out;
}

cplx inner(const State2& a, const State2& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

cplx inner(const State4& a, const State4& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const State2& psi) { return std::sqrt(inner(psi, psi).real()); }
double norm(const State4& psi) { return std::sqrt(inner(psi, psi).real()); }

State2 normalized(const State2& psi) {
  const double n = norm(psi);
  if (n < 1e-12) throw std::invalid_argument("normalized: zero state");
  return {psi[0] / n, psi[1] / n};
}

State4 normalized(const State4& psi) {
  const double n = norm(psi);
  if (n < 1e-12) throw std::invalid_argument("normalized: zero state");
  State4 out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = psi[i] / n;
  return out;
}

ComplexMatrix density(const State2& psi) {
  ComplexMatrix rho(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return rho;
}

ComplexMatrix density(const State4& psi) {
  ComplexMatrix rho(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return rho;
}

State4 kron(const State2& a, const State2& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

std::pair<State2, State2> axis_eigenstates(const BlochVector& u) {
  const BlochVector n = u.normalized();
  const double alpha = std::atan2(std::hypot(n.x, n.y), n.z);
  const double beta = std::atan2(n.y, n.x);
  const cplx eib = std::exp(cplx(0.0, beta));
  const double ch = std::cos(0.5 * alpha), sh = std::sin(0.5 * alpha);
  return {State2{ch, sh * eib}, State2{sh, -ch * eib}};
}

}  // namespace qpm
