#include "qcon/rng.hpp"

#include <cmath>
#include <numbers>

namespace qcon {

double Rng::normal() {
  // Box-Muller; draw u1 away from zero.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<cplx> random_unit_vector(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  double norm2 = 0.0;
  for (cplx& z : v) {
    z = rng.complex_normal();
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& z : v) z *= inv;
  return v;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();

  // Modified Gram-Schmidt over columns, then divide out the phase the
  // R diagonal would carry so the distribution is Haar.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(g(i, j));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) g(i, j) *= inv;
  }
  return g;
}

}  // namespace qcon
