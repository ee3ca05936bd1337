#include "qcon/kernels.hpp"

#include <cstdint>
#include <stdexcept>

namespace qcon::kernels {

namespace {

// Row-blocked triple loop shared by both matmul variants. Fixed k-order
// summation keeps serial and parallel results bit-identical.
inline void matmul_rows(const ComplexMatrix& a, const ComplexMatrix& b,
                        ComplexMatrix& out, std::size_t i) {
  const std::size_t n = a.cols();
  const std::size_t p = b.cols();
  const cplx* arow = a.data().data() + i * n;
  cplx* orow = out.data().data() + i * p;
  for (std::size_t j = 0; j < p; ++j) orow[j] = cplx{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const cplx aik = arow[k];
    const cplx* brow = b.data().data() + k * p;
    for (std::size_t j = 0; j < p; ++j) orow[j] += aik * brow[j];
  }
}

inline void kron_block(const ComplexMatrix& a, const ComplexMatrix& b,
                       ComplexMatrix& out, std::size_t i) {
  const std::size_t br = b.rows();
  const std::size_t bc = b.cols();
  const std::size_t ai = i / br;
  const std::size_t bi = i % br;
  for (std::size_t aj = 0; aj < a.cols(); ++aj) {
    const cplx f = a(ai, aj);
    for (std::size_t bj = 0; bj < bc; ++bj)
      out(i, aj * bc + bj) = f * b(bi, bj);
  }
}

void check_matmul_shapes(const ComplexMatrix& a, const ComplexMatrix& b,
                         const ComplexMatrix& out) {
  if (a.cols() != b.rows() || out.rows() != a.rows() || out.cols() != b.cols())
    throw std::invalid_argument("matmul kernel: shape mismatch");
}

}  // namespace

void matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b,
                   ComplexMatrix& out) {
  check_matmul_shapes(a, b, out);
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_rows(a, b, out, i);
}

void matmul_omp(const ComplexMatrix& a, const ComplexMatrix& b,
                ComplexMatrix& out) {
  check_matmul_shapes(a, b, out);
  const std::int64_t m = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i)
    matmul_rows(a, b, out, static_cast<std::size_t>(i));
}

void kron_serial(const ComplexMatrix& a, const ComplexMatrix& b,
                 ComplexMatrix& out) {
  for (std::size_t i = 0; i < out.rows(); ++i) kron_block(a, b, out, i);
}

void kron_omp(const ComplexMatrix& a, const ComplexMatrix& b,
              ComplexMatrix& out) {
  const std::int64_t m = static_cast<std::int64_t>(out.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i)
    kron_block(a, b, out, static_cast<std::size_t>(i));
}

}  // namespace qcon::kernels
