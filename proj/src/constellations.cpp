#include "qcon/constellations.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace qcon::constellations {

namespace {

constexpr double kPi = std::numbers::pi;

long mod_pos(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::vector<cplx> state_amps(std::span<const double> flat) {
  std::vector<cplx> v(flat.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = cplx{flat[2 * i], flat[2 * i + 1]};
  return v;
}

}  // namespace

ComplexMatrix wh_displacement(std::size_t n, long p, long q) {
  if (n < 2) throw std::invalid_argument("wh_displacement: N >= 2 required");
  const long ln = static_cast<long>(n);
  // tau = -exp(i pi / N) = exp(i pi (N+1)/N), so tau^{pq} has period 2N.
  const cplx tau_pq = std::exp(
      cplx{0.0, kPi * static_cast<double>(n + 1) / static_cast<double>(n) *
                    static_cast<double>(mod_pos(p * q, 2 * ln))});
  ComplexMatrix d(n, n);
  for (long j = 0; j < ln; ++j) {
    const double ang = 2.0 * kPi * static_cast<double>(mod_pos(q * j, ln)) /
                       static_cast<double>(n);
    d(static_cast<std::size_t>(mod_pos(j + p, ln)), static_cast<std::size_t>(j)) =
        tau_pq * std::exp(cplx{0.0, ang});
  }
  return d;
}

std::vector<StateVector> sic_orbit(const StateVector& fiducial) {
  const std::size_t n = fiducial.size();
  std::vector<StateVector> orbit;
  orbit.reserve(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      orbit.push_back(apply_state(
          wh_displacement(n, static_cast<long>(p), static_cast<long>(q)),
          fiducial));
  return orbit;
}

CheckReport verify_sic(const std::vector<StateVector>& vectors, double tol) {
  if (vectors.empty()) throw std::invalid_argument("verify_sic: empty set");
  const std::size_t n = vectors.front().size();
  if (vectors.size() != n * n)
    throw std::invalid_argument("verify_sic: need exactly N^2 vectors");
  const double target = 1.0 / static_cast<double>(n + 1);

  double worst = 0.0;
  std::vector<std::size_t> worst_at{0, 0};
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    for (std::size_t k = j; k < vectors.size(); ++k) {
      const double ov2 = std::norm(vectors[j].inner(vectors[k]));
      const double dev = j == k ? std::abs(ov2 - 1.0) : std::abs(ov2 - target);
      if (dev > worst) {
        worst = dev;
        worst_at = {j, k};
      }
    }
  }
  return make_report(worst, tol, {worst_at});
}

double sic_residual(const StateVector& fiducial) {
  const std::size_t n = fiducial.size();
  const double target = 1.0 / static_cast<double>(n + 1);
  double sum = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == 0 && q == 0) continue;
      const ComplexMatrix d =
          wh_displacement(n, static_cast<long>(p), static_cast<long>(q));
      cplx g{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          g += std::conj(fiducial[i]) * d(i, j) * fiducial[j];
      const double dev = std::norm(g) - target;
      sum += dev * dev;
    }
  }
  return sum;
}

CheckReport verify_mub(const MubSet& set, double tol) {
  const std::size_t n = set.dim;
  if (set.bases.size() < 2)
    throw std::invalid_argument("verify_mub: need at least two bases");
  for (const ComplexMatrix& b : set.bases)
    if (b.rows() != n || b.cols() != n)
      throw std::invalid_argument("verify_mub: basis dimension mismatch");
  const double target = 1.0 / static_cast<double>(n);

  double worst = 0.0;
  std::vector<std::size_t> worst_at{0, 0, 0, 0};
  for (std::size_t m = 0; m < set.bases.size(); ++m) {
    const double defect = unitarity_defect(set.bases[m]);
    if (defect > worst) {
      worst = defect;
      worst_at = {m, m, 0, 0};
    }
    for (std::size_t l = m + 1; l < set.bases.size(); ++l) {
      const ComplexMatrix g = set.bases[m].dagger() * set.bases[l];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double dev = std::abs(std::norm(g(i, j)) - target);
          if (dev > worst) {
            worst = dev;
            worst_at = {m, l, i, j};
          }
        }
    }
  }
  return make_report(worst, tol, {worst_at});
}

MubSet mub_prime(std::size_t p) {
  if (!is_prime(p) || p > 97)
    throw std::invalid_argument("mub_prime: need a prime p with 2 <= p <= 97");

  MubSet set{p, {}};
  if (p == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix x(2, 2), y(2, 2);
    x(0, 0) = s;
    x(1, 0) = s;
    x(0, 1) = s;
    x(1, 1) = -s;
    y(0, 0) = s;
    y(1, 0) = cplx{0.0, s};
    y(0, 1) = s;
    y(1, 1) = cplx{0.0, -s};
    set.bases = {ComplexMatrix::identity(2), x, y};
    return set;
  }

  set.bases.push_back(ComplexMatrix::identity(p));
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(p));
  for (std::size_t m = 0; m < p; ++m) {
    ComplexMatrix b(p, p);
    for (std::size_t j = 0; j < p; ++j) {       // vector index (column)
      for (std::size_t k = 0; k < p; ++k) {     // component (row)
        const std::size_t e = (m * k * k + j * k) % p;
        const double ang =
            2.0 * kPi * static_cast<double>(e) / static_cast<double>(p);
        b(k, j) = inv_sqrt * std::exp(cplx{0.0, ang});
      }
    }
    set.bases.push_back(std::move(b));
  }
  return set;
}

CheckReport verify_complex_hadamard(const ComplexMatrix& u, double tol) {
  if (!u.is_square())
    throw std::invalid_argument("verify_complex_hadamard: not square");
  const std::size_t n = u.rows();
  const double target = 1.0 / static_cast<double>(n);

  double worst = unitarity_defect(u);
  std::vector<std::size_t> worst_at{0, 0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = std::abs(std::norm(u(i, j)) - target);
      if (dev > worst) {
        worst = dev;
        worst_at = {i, j};
      }
    }
  return make_report(worst, tol, {worst_at});
}

ComplexMatrix hadamard_from_bases(const ComplexMatrix& b1,
                                  const ComplexMatrix& b2) {
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols() || !b1.is_square())
    throw std::invalid_argument("hadamard_from_bases: dimension mismatch");
  return b1.dagger() * b2;
}

ComplexMatrix fourier_matrix(std::size_t n) {
  ComplexMatrix f(n, n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double ang = 2.0 * kPi * static_cast<double>((j * k) % n) /
                         static_cast<double>(n);
      f(j, k) = inv_sqrt * std::exp(cplx{0.0, ang});
    }
  return f;
}

search::Objective sic_objective(std::size_t n) {
  // Precompute the N^2-1 displacement matrices once; the objective and
  // gradient closures share them.
  auto disps = std::make_shared<std::vector<ComplexMatrix>>();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == 0 && q == 0) continue;
      disps->push_back(
          wh_displacement(n, static_cast<long>(p), static_cast<long>(q)));
    }
  const double target = 1.0 / static_cast<double>(n + 1);

  search::Objective obj;
  obj.value = [disps, n, target](std::span<const double> flat) {
    const std::vector<cplx> f = state_amps(flat);
    double sum = 0.0;
    for (const ComplexMatrix& d : *disps) {
      cplx g{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) row += d(i, j) * f[j];
        g += std::conj(f[i]) * row;
      }
      const double dev = std::norm(g) - target;
      sum += dev * dev;
    }
    return sum;
  };
  obj.gradient = [disps, n, target](std::span<const double> flat,
                                    std::span<double> out) {
    const std::vector<cplx> f = state_amps(flat);
    std::vector<cplx> wirt(n, cplx{0.0, 0.0});  // dF / d conj(f)
    std::vector<cplx> df(n), dtf(n);
    for (const ComplexMatrix& d : *disps) {
      cplx g{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        cplx row{0.0, 0.0}, col{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
          row += d(i, j) * f[j];
          col += std::conj(d(j, i)) * f[j];
        }
        df[i] = row;   // (D f)_i
        dtf[i] = col;  // (D^dagger f)_i
        g += std::conj(f[i]) * row;
      }
      const double r = std::norm(g) - target;
      const cplx gc = std::conj(g);
      for (std::size_t i = 0; i < n; ++i)
        wirt[i] += 2.0 * r * (gc * df[i] + g * dtf[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[2 * i] = 2.0 * wirt[i].real();
      out[2 * i + 1] = 2.0 * wirt[i].imag();
    }
  };
  return obj;
}

namespace {

// Shared core for the MUB objective: bases[0] = I fixed, bases 1..k-1
// unpacked from the point. Returns value; fills Wirtinger gradients
// dF/d conj(B_m) when grads != nullptr.
double mub_value_grad(std::span<const double> point, std::size_t n,
                      std::size_t k, std::vector<ComplexMatrix>* grads) {
  std::vector<ComplexMatrix> bases;
  bases.reserve(k);
  bases.push_back(ComplexMatrix::identity(n));
  const std::size_t block = 2 * n * n;
  for (std::size_t m = 1; m < k; ++m)
    bases.push_back(
        search::unpack_matrix(point.subspan((m - 1) * block, block), n, n));
  if (grads) grads->assign(k, ComplexMatrix(n, n));

  const double target = 1.0 / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t l = m + 1; l < k; ++l) {
      const ComplexMatrix g = bases[m].dagger() * bases[l];
      ComplexMatrix s(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double dev = std::norm(g(i, j)) - target;
          sum += dev * dev;
          s(i, j) = 2.0 * dev * g(i, j);
        }
      if (grads) {
        (*grads)[m] += bases[l] * s.dagger();
        (*grads)[l] += bases[m] * s;
      }
    }
  }
  return sum;
}

}  // namespace

search::Objective mub_objective(std::size_t n, std::size_t k) {
  if (k < 2) throw std::invalid_argument("mub_objective: need K >= 2");
  search::Objective obj;
  obj.value = [n, k](std::span<const double> point) {
    return mub_value_grad(point, n, k, nullptr);
  };
  obj.gradient = [n, k](std::span<const double> point, std::span<double> out) {
    std::vector<ComplexMatrix> grads;
    mub_value_grad(point, n, k, &grads);
    const std::size_t block = 2 * n * n;
    for (std::size_t m = 1; m < k; ++m) {
      ComplexMatrix ambient = grads[m];
      ambient *= 2.0;  // d/dx = 2 Re dF/dzbar, d/dy = 2 Im dF/dzbar
      search::pack_matrix(ambient, out.subspan((m - 1) * block, block));
    }
  };
  return obj;
}

MubSet mub_from_point(std::span<const double> point, std::size_t n,
                      std::size_t k) {
  MubSet set{n, {ComplexMatrix::identity(n)}};
  const std::size_t block = 2 * n * n;
  for (std::size_t m = 1; m < k; ++m)
    set.bases.push_back(
        search::unpack_matrix(point.subspan((m - 1) * block, block), n, n));
  return set;
}

}  // namespace qcon::constellations
