#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qcon {

using cplx = std::complex<double>;

// Hard ceiling on matrix side length. Everything in this toolkit is
// desk-scale; the largest object we ever touch is the regrouped
// two-copy ququart space (side 256).
inline constexpr std::size_t kMaxSide = 4096;

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// Matrix product; dispatches to the OpenMP kernel (see kernels.hpp).
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product with block structure a[i,j]*b. Throws if the result
// would exceed kMaxSide per side.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise difference; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// ||a^dagger a - I||_max.
double unitarity_defect(const ComplexMatrix& a);

}  // namespace qcon
