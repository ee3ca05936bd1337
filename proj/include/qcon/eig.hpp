#pragma once

#include <vector>

#include "qcon/complex_matrix.hpp"

namespace qcon {

struct EigResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. Inputs within 1e-10 (relative to the largest entry) of
// Hermitian are symmetrized first; anything farther is rejected.
EigResult hermitian_eig(const ComplexMatrix& h);

// Singular values in descending order, via one-sided Jacobi
// orthogonalization of columns. Works for any shape.
std::vector<double> singular_values(const ComplexMatrix& a);

struct SvdResult {
  ComplexMatrix u;             // columns: left singular vectors
  std::vector<double> sigma;   // descending
  ComplexMatrix v;             // columns: right singular vectors, a = u diag(sigma) v^dagger
};

SvdResult svd(const ComplexMatrix& a);

// Unitary polar factor u v^dagger of a square matrix; the nearest
// unitary in Frobenius norm for full-rank input.
ComplexMatrix polar_unitary(const ComplexMatrix& a);

// exp(i h) for Hermitian h, evaluated through the eigendecomposition.
ComplexMatrix expi_hermitian(const ComplexMatrix& h);

}  // namespace qcon
