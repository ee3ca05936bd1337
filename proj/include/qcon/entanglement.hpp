#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcon/complex_matrix.hpp"
#include "qcon/search.hpp"
#include "qcon/types.hpp"

namespace qcon::entanglement {

// Swap V with <ij|V|kl> = delta_il delta_jk on H_d (x) H_d.
ComplexMatrix swap_operator(std::size_t d);

struct WernerState {
  std::size_t d;
  double alpha;
  DensityMatrix rho;
};

// rho(d, alpha) = (I + alpha V) / (d^2 + alpha d).
WernerState werner(std::size_t d, double alpha);

// Analytic spectrum of the partial transpose: eigenvalue
// (1 + alpha d)/(d^2 + alpha d) once (the psi_+ direction) and
// 1/(d^2 + alpha d) with multiplicity d^2 - 1.
struct WernerPtSpectrum {
  double lambda_psi_plus;   // multiplicity 1
  double lambda_rest;       // multiplicity d^2 - 1
  double lambda_min;
};
WernerPtSpectrum werner_pt_spectrum(std::size_t d, double alpha);

// Labels per the proven windows; the conjectured region is reported as
// open, never as fact.
std::vector<std::string> classify_werner(std::size_t d, double alpha);

// Rank-2 probe pair: each of p, q holds two orthonormal rows of
// dimension d^n.
struct DistillProbe {
  ComplexMatrix p;  // 2 x d^n
  ComplexMatrix q;  // 2 x d^n
};

// Minimum eigenvalue of the 4x4 compression
// M[(a,b),(c,e)] = <p_a (x) q_b| R |p_c (x) q_e>, where R is
// (rho^Gamma)^{(x)n} regrouped from copy order A1 B1 ... An Bn into
// (A1..An)(B1..Bn).
double distill_value(const DensityMatrix& rho, std::size_t n,
                     const DistillProbe& probe);

// The regrouped matrix R itself (exposed for oracles and objectives).
ComplexMatrix distill_operator(const DensityMatrix& rho, std::size_t n);

struct DistillSearchResult {
  search::SearchCertificate certificate;
  std::string verdict;  // distillable-witness-found | no-witness-found | open
  double tol_eig;
  DistillProbe best_probe;
};

// Minimize distill_value over probe pairs. n <= 2 and d <= 4 only.
DistillSearchResult search_distillable(const DensityMatrix& rho, std::size_t n,
                                       std::size_t budget, std::uint64_t seed);

// A (+) B = A (x) I + I (x) B.
ComplexMatrix kronecker_sum(const ComplexMatrix& a, const ComplexMatrix& b);

struct KsInstance {
  ComplexMatrix a;  // 4x4, traceless
  ComplexMatrix b;  // 4x4, traceless; ||a||_F^2 + ||b||_F^2 = 1/4
};

// Project an arbitrary pair onto the constraint set (trace removal,
// then joint Frobenius rescale).
KsInstance ks_normalize(const ComplexMatrix& a, const ComplexMatrix& b);

// sigma_1^2 + sigma_2^2 of kronecker_sum(a, b). Rejects instances whose
// constraints are violated beyond 1e-10.
double ks_objective(const KsInstance& inst);

// Random constraint-satisfying instance with both matrices normal.
KsInstance random_normal_ks_instance(Rng& rng);

struct KsSearchResult {
  search::SearchCertificate certificate;
  double max_value;    // best sigma_1^2 + sigma_2^2 found
  std::string verdict; // "violation" or "no-violation-found"
  KsInstance best;
};

// Maximize ks_objective over the constraint manifold.
KsSearchResult ks_search_violation(std::size_t budget, std::uint64_t seed);

// Partial transpose proportional to a unitary with eigenvalues of equal
// modulus.
CheckReport dichotomic_check(const DensityMatrix& rho, double tol);

// --- objective factories (exposed for tests) ---------------------------

// Over product(stiefel_rows(2, d^n) x 2); value = distill_value.
search::Objective distill_objective(const DensityMatrix& rho, std::size_t n);
DistillProbe probe_from_point(std::span<const double> point, std::size_t dim);

// Over traceless_pair(4, 1/4); value = -(sigma_1^2 + sigma_2^2).
search::Objective ks_violation_objective();
KsInstance ks_instance_from_point(std::span<const double> point);

}  // namespace qcon::entanglement
