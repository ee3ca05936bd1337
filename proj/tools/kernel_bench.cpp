// Benchmarks the serial reference kernels against their OpenMP versions
// and checks that both give bit-identical output on the same input.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <omp.h>
#include <string>

#include "qcon/kernels.hpp"
#include "qcon/rng.hpp"

using namespace qcon;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

using Kernel = std::function<void(const ComplexMatrix&, const ComplexMatrix&,
                                  ComplexMatrix&)>;

double time_kernel(const Kernel& k, const ComplexMatrix& a,
                   const ComplexMatrix& b, ComplexMatrix& out, int reps) {
  k(a, b, out);  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) k(a, b, out);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

bool bit_identical(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data().data(), b.data().data(),
                     a.data().size() * sizeof(cplx)) == 0;
}

}  // namespace

int main() {
  Rng rng(20240817);
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-10s %8s %12s %12s %9s %6s\n", "kernel", "size", "serial[s]",
              "omp[s]", "speedup", "equal");

  bool all_equal = true;

  for (std::size_t n : {32, 64, 128, 192}) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    const ComplexMatrix b = random_matrix(n, n, rng);
    ComplexMatrix out_s(n, n), out_p(n, n);
    const int reps = n <= 64 ? 20 : 5;
    const double ts = time_kernel(kernels::matmul_serial, a, b, out_s, reps);
    const double tp = time_kernel(kernels::matmul_omp, a, b, out_p, reps);
    const bool eq = bit_identical(out_s, out_p);
    all_equal = all_equal && eq;
    std::printf("%-10s %8zu %12.3e %12.3e %8.2fx %6s\n", "matmul", n, ts, tp,
                ts / tp, eq ? "yes" : "NO");
  }

  for (std::size_t n : {8, 16, 24, 32}) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    const ComplexMatrix b = random_matrix(n, n, rng);
    ComplexMatrix out_s(n * n, n * n), out_p(n * n, n * n);
    const int reps = n <= 16 ? 50 : 10;
    const double ts = time_kernel(kernels::kron_serial, a, b, out_s, reps);
    const double tp = time_kernel(kernels::kron_omp, a, b, out_p, reps);
    const bool eq = bit_identical(out_s, out_p);
    all_equal = all_equal && eq;
    std::printf("%-10s %8zu %12.3e %12.3e %8.2fx %6s\n", "kron", n, ts, tp,
                ts / tp, eq ? "yes" : "NO");
  }

  if (!all_equal) {
    std::printf("\nserial and OpenMP kernels disagree\n");
    return 1;
  }
  std::printf("\nall kernel pairs bit-identical\n");
  return 0;
}
