#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here is written in the most literal way possible, on purpose:
// triple loops, explicit index arithmetic, no shared code with src/.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qcon/complex_matrix.hpp"
#include "qcon/rng.hpp"
#include "qcon/search.hpp"

namespace oracles {

using qcon::ComplexMatrix;
using qcon::cplx;

inline ComplexMatrix naive_matmul(const ComplexMatrix& a,
                                  const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s{0.0, 0.0};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline ComplexMatrix naive_kron(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline ComplexMatrix naive_partial_transpose(const ComplexMatrix& rho,
                                             std::size_t da, std::size_t db) {
  ComplexMatrix out(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t l = 0; l < da; ++l)
        for (std::size_t m = 0; m < db; ++m)
          // <ij|out|lm> = <im|rho|lj>
          out(i * db + j, l * db + m) = rho(i * db + m, l * db + j);
  return out;
}

inline ComplexMatrix naive_reshuffle(const ComplexMatrix& u, std::size_t d) {
  ComplexMatrix out(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          out(i * d + k, j * d + l) = u(i * d + j, k * d + l);
  return out;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                   qcon::Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i)
    m.data()[i] = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, qcon::Rng& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

// Maximum deviation between an analytic gradient and a central
// finite-difference probe along `probes` random ambient directions.
inline double gradient_fd_deviation(const qcon::search::Objective& obj,
                                    std::vector<double> x, std::size_t probes,
                                    qcon::Rng& rng, double h = 1e-6) {
  std::vector<double> g(x.size());
  obj.gradient(x, g);
  double worst = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    std::vector<double> dir(x.size());
    double n2 = 0.0;
    for (double& v : dir) {
      v = rng.normal();
      n2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(n2);
    double directional = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dir[i] *= inv;
      directional += g[i] * dir[i];
    }
    std::vector<double> xp = x, xm = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      xp[i] += h * dir[i];
      xm[i] -= h * dir[i];
    }
    const double fd = (obj.value(xp) - obj.value(xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - directional));
  }
  return worst;
}

// Deterministic quadrature for the average linear entropy produced by
// CNOT on product states |a>|b>, Haar on each qubit. A qubit Haar state
// is uniform in (cos theta, phi); the entropy created by CNOT depends
// only on cos theta_a, cos theta_b and phi_b, so a Gauss-Legendre grid
// in the two cosines times a uniform periodic grid in phi_b integrates
// it essentially exactly.
inline double cnot_entangling_power_quadrature(std::size_t nodes = 48) {
  // Gauss-Legendre nodes/weights on [-1, 1] by Newton on Legendre P_n.
  std::vector<double> xg(nodes), wg(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(nodes) + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= nodes; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = nodes * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= nodes; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = nodes * (x * p1 - p0) / (x * x - 1.0);
    xg[i] = x;
    wg[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }

  const std::size_t nphi = 32;
  double total = 0.0, weight = 0.0;
  for (std::size_t ia = 0; ia < nodes; ++ia) {
    const double a0 = std::sqrt((1.0 + xg[ia]) / 2.0);
    const double a1 = std::sqrt((1.0 - xg[ia]) / 2.0);
    for (std::size_t ib = 0; ib < nodes; ++ib) {
      const double b0m = std::sqrt((1.0 + xg[ib]) / 2.0);
      const double b1m = std::sqrt((1.0 - xg[ib]) / 2.0);
      for (std::size_t ip = 0; ip < nphi; ++ip) {
        const double phi =
            2.0 * std::numbers::pi * static_cast<double>(ip) / nphi;
        const cplx b0{b0m, 0.0};
        const cplx b1 = b1m * std::exp(cplx{0.0, phi});
        // CNOT(a (x) b): psi_00 = a0 b0, psi_01 = a0 b1,
        // psi_10 = a1 b1, psi_11 = a1 b0.
        const cplx psi[4] = {a0 * b0, a0 * b1, a1 * b1, a1 * b0};
        const double p00 = std::norm(psi[0]) + std::norm(psi[1]);
        const double p11 = std::norm(psi[2]) + std::norm(psi[3]);
        const cplx off =
            psi[0] * std::conj(psi[2]) + psi[1] * std::conj(psi[3]);
        const double purity = p00 * p00 + p11 * p11 + 2.0 * std::norm(off);
        const double w = wg[ia] * wg[ib];
        total += w * (1.0 - purity);
        weight += w;
      }
    }
  }
  return total / weight;
}

}  // namespace oracles
