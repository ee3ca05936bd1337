#include "qcon/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcon {

namespace {

// 2x2 Hermitian block [[a, b], [conj(b), d]] diagonalizes as W D W^dagger
// with W = [[c, -s], [ubar s, ubar c]], ubar = conj(b)/|b|. Returns (c, s,
// ubar); s = 0 means nothing to do.
struct JacobiRot {
  double c = 1.0;
  double s = 0.0;
  cplx ubar{1.0, 0.0};
};

JacobiRot make_rotation(double a, cplx b, double d) {
  JacobiRot rot;
  const double ab = std::abs(b);
  if (ab == 0.0) return rot;
  rot.ubar = std::conj(b) / ab;
  const double tau = (d - a) / (2.0 * ab);
  double t;
  if (std::isinf(tau)) {
    t = 0.0;
  } else {
    // Small-magnitude root of t^2 - 2 tau t - 1 = 0, which zeroes the
    // rotated off-diagonal for this rotation convention.
    const double sgn = tau >= 0.0 ? 1.0 : -1.0;
    t = -sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = t * rot.c;
  return rot;
}

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw std::invalid_argument("hermitian_eig: not square");
  if (!h.all_finite())
    throw std::invalid_argument("hermitian_eig: non-finite entries");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, h.max_abs());
  double herm_defect = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      herm_defect =
          std::max(herm_defect, std::abs(h(i, j) - std::conj(h(j, i))));
  if (herm_defect > 1e-10 * scale)
    throw std::invalid_argument("hermitian_eig: input not Hermitian");

  // Symmetrize (h + h^dagger)/2 to kill the residual noise.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = 1e-15 * std::max(1.0, a.frobenius_norm());
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        if (std::abs(b) <= 1e-300) continue;
        const JacobiRot r = make_rotation(a(p, p).real(), b, a(q, q).real());
        if (r.s == 0.0) continue;
        const cplx jc = r.c;
        const cplx jmps = -r.s;
        const cplx jus = r.ubar * r.s;
        const cplx juc = r.ubar * r.c;
        // a <- J^dagger a J; update columns p,q then rows p,q.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jc + akq * jus;
          a(k, q) = akp * jmps + akq * juc;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jc) * apk + std::conj(jus) * aqk;
          a(q, k) = std::conj(jmps) * apk + std::conj(juc) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jc + vkq * jus;
          v(k, q) = vkp * jmps + vkq * juc;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigResult res;
  res.values.resize(n);
  res.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

SvdResult svd(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    // Work on the adjoint and swap the factors back.
    SvdResult t = svd(a.dagger());
    return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  // One-sided Jacobi: rotate column pairs of b until mutually orthogonal.
  ComplexMatrix b = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double eps = 1e-15;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma{0.0, 0.0};
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(b(k, p));
          beta += std::norm(b(k, q));
          gamma += std::conj(b(k, p)) * b(k, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) ||
            std::abs(gamma) == 0.0)
          continue;
        converged = false;
        const JacobiRot r = make_rotation(alpha, gamma, beta);
        const cplx jc = r.c;
        const cplx jmps = -r.s;
        const cplx jus = r.ubar * r.s;
        const cplx juc = r.ubar * r.c;
        for (std::size_t k = 0; k < m; ++k) {
          const cplx bkp = b(k, p), bkq = b(k, q);
          b(k, p) = bkp * jc + bkq * jus;
          b(k, q) = bkp * jmps + bkq * juc;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jc + vkq * jus;
          v(k, q) = vkp * jmps + vkq * juc;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(b(k, j));
    sig[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  SvdResult res;
  res.sigma.resize(n);
  res.u = ComplexMatrix(m, n);
  res.v = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    res.sigma[j] = sig[src];
    const double inv = sig[src] > 0.0 ? 1.0 / sig[src] : 0.0;
    for (std::size_t k = 0; k < m; ++k) res.u(k, j) = b(k, src) * inv;
    for (std::size_t k = 0; k < n; ++k) res.v(k, j) = v(k, src);
  }
  return res;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  return svd(a).sigma;
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("polar_unitary: not square");
  const SvdResult s = svd(a);
  return s.u * s.v.dagger();
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h) {
  const EigResult e = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx phase = std::exp(cplx{0.0, e.values[i]});
    for (std::size_t k = 0; k < n; ++k)
      scaled(k, i) = e.vectors(k, i) * phase;
  }
  return scaled * e.vectors.dagger();
}

}  // namespace qcon
