#pragma once

#include <cstddef>
#include <vector>

#include "qcon/complex_matrix.hpp"

namespace qcon {

// Pass/fail verdict of a verifier together with the worst residual and
// the index tuple(s) locating the worst violation.
struct CheckReport {
  bool passed = false;
  double max_residual = 0.0;
  std::vector<std::vector<std::size_t>> witness;
  double tolerance_used = 0.0;
};

inline CheckReport make_report(double max_residual, double tol,
                               std::vector<std::vector<std::size_t>> witness = {}) {
  return CheckReport{max_residual <= tol, max_residual, std::move(witness), tol};
}

// Unit vector on a tensor-product space with declared factor dimensions.
class StateVector {
 public:
  StateVector(std::vector<std::size_t> dims, std::vector<cplx> amplitudes);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  cplx inner(const StateVector& other) const;  // <this|other>

  // |psi><psi| as a plain matrix.
  ComplexMatrix projector() const;

  static StateVector basis(std::size_t dim, std::size_t index);

 private:
  std::vector<std::size_t> dims_;
  std::vector<cplx> amps_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
ComplexMatrix apply(const ComplexMatrix& m, const StateVector& v_as_column);
StateVector apply_state(const ComplexMatrix& u, const StateVector& v);

// Hermitian, unit-trace, PSD-within-tolerance matrix with declared
// factor dimensions. Construction enforces the invariants.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::size_t> dims, ComplexMatrix matrix);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t side() const { return mat_.rows(); }

 private:
  std::vector<std::size_t> dims_;
  ComplexMatrix mat_;
};

}  // namespace qcon
