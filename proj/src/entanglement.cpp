#include "qcon/entanglement.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "qcon/eig.hpp"
#include "qcon/tensor.hpp"

namespace qcon::entanglement {

namespace {

std::size_t pow_sz(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_probe(const DistillProbe& probe, std::size_t dim) {
  if (probe.p.rows() != 2 || probe.q.rows() != 2 || probe.p.cols() != dim ||
      probe.q.cols() != dim)
    throw std::invalid_argument("distill probe: dimension mismatch");
  for (const ComplexMatrix* m : {&probe.p, &probe.q}) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = a; b < 2; ++b) {
        cplx g{0.0, 0.0};
        for (std::size_t k = 0; k < dim; ++k)
          g += (*m)(a, k) * std::conj((*m)(b, k));
        const double dev =
            std::abs(g - (a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
        if (dev > 1e-10)
          throw std::invalid_argument("distill probe: rows not orthonormal");
      }
  }
}

// M = T R T^dagger where T has the four rows p_a (x) q_b.
ComplexMatrix compress(const ComplexMatrix& r, const DistillProbe& probe) {
  const std::size_t dim = probe.p.cols();
  const std::size_t n2 = dim * dim;
  ComplexMatrix t(4, n2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y)
          t(a * 2 + b, x * dim + y) = probe.p(a, x) * probe.q(b, y);
  return t * r * t.dagger();
}

}  // namespace

ComplexMatrix swap_operator(std::size_t d) {
  if (d < 2) throw std::invalid_argument("swap_operator: d >= 2 required");
  ComplexMatrix v(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

WernerState werner(std::size_t d, double alpha) {
  if (alpha < -1.0 || alpha > 1.0)
    throw std::invalid_argument("werner: alpha outside [-1, 1]");
  const std::size_t n = d * d;
  ComplexMatrix m = swap_operator(d);
  m *= alpha;
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;
  m *= 1.0 / (static_cast<double>(n) + alpha * static_cast<double>(d));
  return WernerState{d, alpha, DensityMatrix({d, d}, std::move(m))};
}

WernerPtSpectrum werner_pt_spectrum(std::size_t d, double alpha) {
  const double denom =
      static_cast<double>(d * d) + alpha * static_cast<double>(d);
  WernerPtSpectrum s{};
  s.lambda_psi_plus = (1.0 + alpha * static_cast<double>(d)) / denom;
  s.lambda_rest = 1.0 / denom;
  s.lambda_min = std::min(s.lambda_psi_plus, s.lambda_rest);
  return s;
}

std::vector<std::string> classify_werner(std::size_t d, double alpha) {
  std::vector<std::string> labels;
  const double npt_threshold = -1.0 / static_cast<double>(d);
  const double one_copy_threshold = -2.0 / static_cast<double>(d);
  if (alpha < npt_threshold) {
    labels.push_back("NPT");
    if (alpha >= one_copy_threshold) {
      labels.push_back("1-copy-nondistillable");
      labels.push_back("distillability-open");
    } else if (d == 4) {
      labels.push_back("1-copy-distillable");
    } else if (d == 2) {
      // alpha < -1 cannot happen; NPT two-qubit Werner states are all
      // 1-copy distillable.
      labels.push_back("1-copy-distillable");
    } else {
      labels.push_back("1-copy-distillability-unknown");
    }
  } else {
    labels.push_back("PPT");
    labels.push_back("separable-range");
  }
  return labels;
}

ComplexMatrix distill_operator(const DensityMatrix& rho, std::size_t n) {
  if (rho.dims().size() != 2 || rho.dims()[0] != rho.dims()[1])
    throw std::invalid_argument("distill_operator: need dims [d, d]");
  const std::size_t d = rho.dims()[0];
  const ComplexMatrix pt = partial_transpose(rho.matrix(), d, d);
  if (n == 1) return pt;
  ComplexMatrix full = pt;
  for (std::size_t copy = 1; copy < n; ++copy) full = kron(full, pt);
  // Copy order A1 B1 ... An Bn -> (A1..An)(B1..Bn).
  std::vector<std::size_t> dims(2 * n, d), perm;
  for (std::size_t k = 0; k < n; ++k) perm.push_back(2 * k);
  for (std::size_t k = 0; k < n; ++k) perm.push_back(2 * k + 1);
  return permute_subsystems(full, dims, perm);
}

double distill_value(const DensityMatrix& rho, std::size_t n,
                     const DistillProbe& probe) {
  const std::size_t d = rho.dims()[0];
  const std::size_t dim = pow_sz(d, n);
  check_probe(probe, dim);
  const ComplexMatrix r = distill_operator(rho, n);
  const ComplexMatrix m = compress(r, probe);
  return hermitian_eig(m).values.front();
}

search::Objective distill_objective(const DensityMatrix& rho, std::size_t n) {
  const std::size_t d = rho.dims()[0];
  const std::size_t dim = pow_sz(d, n);
  auto r = std::make_shared<ComplexMatrix>(distill_operator(rho, n));

  search::Objective obj;
  obj.value = [r, dim](std::span<const double> flat) {
    const DistillProbe probe = probe_from_point(flat, dim);
    const ComplexMatrix m = compress(*r, probe);
    return hermitian_eig(m).values.front();
  };
  obj.gradient = [r, dim](std::span<const double> flat, std::span<double> out) {
    const DistillProbe probe = probe_from_point(flat, dim);
    const ComplexMatrix m = compress(*r, probe);
    const EigResult e = hermitian_eig(m);
    // lambda = u^dagger R u with u = T^dagger v; first-order change
    // needs only v (the minimal eigenvector).
    std::vector<cplx> v(4);
    for (std::size_t i = 0; i < 4; ++i) v[i] = e.vectors(i, 0);

    const std::size_t n2 = dim * dim;
    std::vector<cplx> u(n2, cplx{0.0, 0.0});
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        const cplx vc = v[a * 2 + b];
        for (std::size_t x = 0; x < dim; ++x) {
          const cplx px = std::conj(probe.p(a, x)) * vc;
          for (std::size_t y = 0; y < dim; ++y)
            u[x * dim + y] += px * std::conj(probe.q(b, y));
        }
      }
    std::vector<cplx> w(n2, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n2; ++i) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < n2; ++j) acc += (*r)(i, j) * u[j];
      w[i] = acc;
    }

    // dlambda/dT_{(ab),(xy)} = conj(v_ab) w_xy with T_{(ab),(xy)} =
    // P_ax Q_by; Wirtinger gradients w.r.t. conj(P), conj(Q) follow by
    // conjugation.
    ComplexMatrix gp(2, dim), gq(2, dim);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        const cplx vab = std::conj(v[a * 2 + b]);
        for (std::size_t x = 0; x < dim; ++x) {
          cplx accp{0.0, 0.0};
          for (std::size_t y = 0; y < dim; ++y)
            accp += w[x * dim + y] * probe.q(b, y);
          gp(a, x) += std::conj(vab * accp);
        }
        for (std::size_t y = 0; y < dim; ++y) {
          cplx accq{0.0, 0.0};
          for (std::size_t x = 0; x < dim; ++x)
            accq += w[x * dim + y] * probe.p(a, x);
          gq(b, y) += std::conj(vab * accq);
        }
      }
    gp *= 2.0;
    gq *= 2.0;
    const std::size_t block = 2 * 2 * dim;
    search::pack_matrix(gp, out.subspan(0, block));
    search::pack_matrix(gq, out.subspan(block, block));
  };
  return obj;
}

DistillProbe probe_from_point(std::span<const double> point, std::size_t dim) {
  const std::size_t block = 2 * 2 * dim;
  return DistillProbe{search::unpack_matrix(point.subspan(0, block), 2, dim),
                      search::unpack_matrix(point.subspan(block, block), 2, dim)};
}

DistillSearchResult search_distillable(const DensityMatrix& rho, std::size_t n,
                                       std::size_t budget, std::uint64_t seed) {
  if (budget == 0)
    throw std::invalid_argument("search_distillable: budget must be positive");
  if (n < 1 || n > 2)
    throw std::invalid_argument("search_distillable: n must be 1 or 2");
  const std::size_t d = rho.dims()[0];
  if (d > 4) throw std::invalid_argument("search_distillable: d <= 4 required");

  const std::size_t dim = pow_sz(d, n);
  std::vector<std::unique_ptr<search::Manifold>> parts;
  parts.push_back(search::stiefel_rows(2, dim));
  parts.push_back(search::stiefel_rows(2, dim));
  const auto manifold = search::product(std::move(parts));

  const double tol_eig = 1e-12 * distill_operator(rho, n).frobenius_norm();

  search::MinimizeConfig cfg;
  cfg.restarts = budget;
  cfg.seed = seed;
  cfg.max_iters = 2000;
  const std::string problem = "distill-d" + std::to_string(d) + "-n" +
                              std::to_string(n);

  DistillSearchResult result;
  result.certificate =
      search::minimize(problem, distill_objective(rho, n), *manifold, cfg);
  result.certificate.tolerances["tol_eig"] = tol_eig;
  result.tol_eig = tol_eig;
  result.best_probe = probe_from_point(result.certificate.best_point, dim);
  if (result.certificate.best_value < -10.0 * tol_eig)
    result.verdict = "distillable-witness-found";
  else
    result.verdict = n == 1 ? "no-witness-found" : "open";
  return result;
}

ComplexMatrix kronecker_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("kronecker_sum: inputs must be square");
  ComplexMatrix s = kron(a, ComplexMatrix::identity(b.rows()));
  s += kron(ComplexMatrix::identity(a.rows()), b);
  return s;
}

KsInstance ks_normalize(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != 4 || b.rows() != 4 || !a.is_square() || !b.is_square())
    throw std::invalid_argument("ks_normalize: need 4x4 matrices");
  ComplexMatrix a0 = a, b0 = b;
  const cplx ta = a.trace() / 4.0;
  const cplx tb = b.trace() / 4.0;
  for (std::size_t i = 0; i < 4; ++i) {
    a0(i, i) -= ta;
    b0(i, i) -= tb;
  }
  const double h = a0.frobenius_norm() * a0.frobenius_norm() +
                   b0.frobenius_norm() * b0.frobenius_norm();
  if (h <= 0.0) throw std::invalid_argument("ks_normalize: zero pair");
  const double f = std::sqrt(0.25 / h);
  a0 *= f;
  b0 *= f;
  return KsInstance{std::move(a0), std::move(b0)};
}

double ks_objective(const KsInstance& inst) {
  if (std::abs(inst.a.trace()) > 1e-10 || std::abs(inst.b.trace()) > 1e-10)
    throw std::invalid_argument("ks_objective: matrices not traceless");
  const double h = inst.a.frobenius_norm() * inst.a.frobenius_norm() +
                   inst.b.frobenius_norm() * inst.b.frobenius_norm();
  if (std::abs(h - 0.25) > 1e-10)
    throw std::invalid_argument("ks_objective: norm constraint violated");
  const std::vector<double> sigma = singular_values(kronecker_sum(inst.a, inst.b));
  return sigma[0] * sigma[0] + sigma[1] * sigma[1];
}

KsInstance random_normal_ks_instance(Rng& rng) {
  // Normal matrix = W diag(z) W^dagger for unitary W and complex z.
  auto normal_matrix = [&rng]() {
    const ComplexMatrix w = random_unitary(4, rng);
    std::vector<cplx> z(4);
    for (cplx& v : z) v = rng.complex_normal();
    return w * ComplexMatrix::diagonal(std::span<const cplx>(z)) * w.dagger();
  };
  const ComplexMatrix a = normal_matrix();
  const ComplexMatrix b = normal_matrix();
  return ks_normalize(a, b);
}

search::Objective ks_violation_objective() {
  search::Objective obj;
  obj.value = [](std::span<const double> flat) {
    const ComplexMatrix a = search::unpack_matrix(flat.subspan(0, 32), 4, 4);
    const ComplexMatrix b = search::unpack_matrix(flat.subspan(32, 32), 4, 4);
    const std::vector<double> sigma = singular_values(kronecker_sum(a, b));
    return -(sigma[0] * sigma[0] + sigma[1] * sigma[1]);
  };
  obj.gradient = [](std::span<const double> flat, std::span<double> out) {
    const ComplexMatrix a = search::unpack_matrix(flat.subspan(0, 32), 4, 4);
    const ComplexMatrix b = search::unpack_matrix(flat.subspan(32, 32), 4, 4);
    const ComplexMatrix s = kronecker_sum(a, b);
    const EigResult e = hermitian_eig(s.dagger() * s);
    const std::size_t n = 16;
    // Sum of the top-two eigenvalues of S^dagger S; Wirtinger gradient
    // d/d conj(S) = S (v1 v1^dagger + v2 v2^dagger).
    ComplexMatrix wmat(n, n);
    for (std::size_t k = n - 2; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          wmat(i, j) += e.vectors(i, k) * std::conj(e.vectors(j, k));
    const ComplexMatrix m = s * wmat;
    ComplexMatrix ga(4, 4), gb(4, 4);
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = 0; q < 4; ++q) {
        cplx acca{0.0, 0.0}, accb{0.0, 0.0};
        for (std::size_t j = 0; j < 4; ++j) {
          acca += m(p * 4 + j, q * 4 + j);
          accb += m(j * 4 + p, j * 4 + q);
        }
        ga(p, q) = -2.0 * acca;
        gb(p, q) = -2.0 * accb;
      }
    search::pack_matrix(ga, out.subspan(0, 32));
    search::pack_matrix(gb, out.subspan(32, 32));
  };
  return obj;
}

KsInstance ks_instance_from_point(std::span<const double> point) {
  return KsInstance{search::unpack_matrix(point.subspan(0, 32), 4, 4),
                    search::unpack_matrix(point.subspan(32, 32), 4, 4)};
}

KsSearchResult ks_search_violation(std::size_t budget, std::uint64_t seed) {
  const auto manifold = search::traceless_pair(4, 0.25);
  search::MinimizeConfig cfg;
  cfg.restarts = budget == 0 ? 1 : budget;
  cfg.seed = seed;
  cfg.max_iters = 2000;

  KsSearchResult result;
  result.certificate =
      search::minimize("ksum-general", ks_violation_objective(), *manifold, cfg);
  result.max_value = -result.certificate.best_value;
  result.best = ks_instance_from_point(result.certificate.best_point);
  result.verdict =
      result.max_value > 0.5 + 1e-8 ? "violation" : "no-violation-found";
  return result;
}

CheckReport dichotomic_check(const DensityMatrix& rho, double tol) {
  if (rho.dims().size() != 2 || rho.dims()[0] != rho.dims()[1])
    throw std::invalid_argument("dichotomic_check: need dims [d, d]");
  const std::size_t d = rho.dims()[0];
  const ComplexMatrix pt = partial_transpose(rho.matrix(), d, d);
  const EigResult e = hermitian_eig(pt);

  double mean_mod = 0.0;
  for (double v : e.values) mean_mod += std::abs(v);
  mean_mod /= static_cast<double>(e.values.size());

  double worst = 0.0;
  std::vector<std::size_t> worst_at{0};
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    const double dev = std::abs(std::abs(e.values[i]) - mean_mod);
    if (dev > worst) {
      worst = dev;
      worst_at = {i};
    }
  }

  // rho^Gamma (rho^Gamma)^dagger must be proportional to the identity.
  const ComplexMatrix g = pt * pt.dagger();
  const double c = mean_mod * mean_mod;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const double dev =
          std::abs(g(i, j) - (i == j ? cplx{c, 0.0} : cplx{0.0, 0.0}));
      if (dev > worst) {
        worst = dev;
        worst_at = {i, j};
      }
    }
  return make_report(worst, tol, {worst_at});
}

}  // namespace qcon::entanglement
