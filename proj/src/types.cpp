#include "qcon/types.hpp"

#include <cmath>
#include <stdexcept>

#include "qcon/eig.hpp"

namespace qcon {

StateVector::StateVector(std::vector<std::size_t> dims,
                         std::vector<cplx> amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  std::size_t prod = 1;
  for (std::size_t d : dims_) prod *= d;
  if (prod != amps_.size())
    throw std::invalid_argument("StateVector: length != product of dims");
  for (const cplx& z : amps_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("StateVector: non-finite amplitude");
  if (std::abs(norm() - 1.0) > 1e-12)
    throw std::invalid_argument("StateVector: not unit norm");
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& z : amps_) s += std::norm(z);
  return std::sqrt(s);
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.size() != size())
    throw std::invalid_argument("StateVector::inner: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i)
    s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

ComplexMatrix StateVector::projector() const {
  const std::size_t n = amps_.size();
  ComplexMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p(i, j) = amps_[i] * std::conj(amps_[j]);
  return p;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis: index out of range");
  std::vector<cplx> amps(dim, cplx{0.0, 0.0});
  amps[index] = 1.0;
  return StateVector({dim}, std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<cplx> amps(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      amps[i * b.size() + j] = a[i] * b[j];
  return StateVector(std::move(dims), std::move(amps));
}

StateVector apply_state(const ComplexMatrix& u, const StateVector& v) {
  if (u.cols() != v.size())
    throw std::invalid_argument("apply_state: dimension mismatch");
  std::vector<cplx> out(u.rows(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) out[i] += u(i, j) * v[j];
  double n2 = 0.0;
  for (const cplx& z : out) n2 += std::norm(z);
  const double n = std::sqrt(n2);
  for (cplx& z : out) z /= n;
  return StateVector(v.dims(), std::move(out));
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), mat_(std::move(matrix)) {
  std::size_t prod = 1;
  for (std::size_t d : dims_) prod *= d;
  if (!mat_.is_square() || mat_.rows() != prod)
    throw std::invalid_argument("DensityMatrix: side != product of dims");
  double herm = 0.0;
  for (std::size_t i = 0; i < mat_.rows(); ++i)
    for (std::size_t j = i; j < mat_.cols(); ++j)
      herm = std::max(herm, std::abs(mat_(i, j) - std::conj(mat_(j, i))));
  if (herm > 1e-12)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace() - cplx{1.0, 0.0}) > 1e-12)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  const EigResult e = hermitian_eig(mat_);
  if (e.values.front() < -1e-10)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

}  // namespace qcon
