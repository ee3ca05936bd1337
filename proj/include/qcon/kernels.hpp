#pragma once

#include "qcon/complex_matrix.hpp"

// Data-parallel inner loops. Each kernel exists in a serial reference
// version and an OpenMP version with the same summation order, so both
// produce bit-identical results; tests and the benchmark target compare
// them directly.

namespace qcon::kernels {

void matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b,
                   ComplexMatrix& out);
void matmul_omp(const ComplexMatrix& a, const ComplexMatrix& b,
                ComplexMatrix& out);

void kron_serial(const ComplexMatrix& a, const ComplexMatrix& b,
                 ComplexMatrix& out);
void kron_omp(const ComplexMatrix& a, const ComplexMatrix& b,
              ComplexMatrix& out);

}  // namespace qcon::kernels
