#pragma once

#include <optional>
#include <vector>

#include "qcon/complex_matrix.hpp"
#include "qcon/search.hpp"
#include "qcon/types.hpp"

namespace qcon::constellations {

struct SicCandidate {
  std::size_t dim;
  StateVector fiducial;
  std::optional<std::vector<StateVector>> orbit;
};

// K bases in dimension N; columns of each matrix are the basis vectors.
struct MubSet {
  std::size_t dim;
  std::vector<ComplexMatrix> bases;
};

// Weyl-Heisenberg displacement D(p,q) = tau^{pq} X^p Z^q with
// X|j> = |j+1 mod N>, Z|j> = omega^j |j>, omega = exp(2 pi i / N) and
// tau = -exp(i pi / N). The tau convention matches the published
// numerical fiducial tables.
ComplexMatrix wh_displacement(std::size_t n, long p, long q);

// The N^2 states D(p,q)|fiducial>, (p,q) in row-major order, so element
// (0,0) is the fiducial itself.
std::vector<StateVector> sic_orbit(const StateVector& fiducial);

// Equiangularity check: every |<psi_j|psi_k>|^2 must equal 1/(N+1) off
// the diagonal and 1 on it.
CheckReport verify_sic(const std::vector<StateVector>& vectors, double tol);

// Smooth search objective for the fiducial: sum over (p,q) != (0,0) of
// (|<f|D(p,q)|f>|^2 - 1/(N+1))^2. Zero exactly on SIC fiducials.
double sic_residual(const StateVector& fiducial);

CheckReport verify_mub(const MubSet& bases, double tol);

// Complete set of p+1 mutually unbiased bases for prime p <= 97. Odd
// primes use the quadratic-exponent construction; p = 2 uses the three
// Pauli eigenbases.
MubSet mub_prime(std::size_t p);

CheckReport verify_complex_hadamard(const ComplexMatrix& u, double tol);

// Gram matrix U_ij = <b1_i|b2_j> of two orthonormal bases (columns).
ComplexMatrix hadamard_from_bases(const ComplexMatrix& b1,
                                  const ComplexMatrix& b2);

// Fourier matrix F_N with entries omega^{jk}/sqrt(N).
ComplexMatrix fourier_matrix(std::size_t n);

// --- search objectives -------------------------------------------------

// Objective over unit_sphere(n) evaluating sic_residual, with analytic
// gradient. Points are the fiducial amplitudes, interleaved re/im.
search::Objective sic_objective(std::size_t n);

// Objective over a product of (k-1) copies of unitary_group(n): basis 0
// is pinned to the identity, the remaining bases are the point. Value is
// the squared-deviation sum of all cross-basis overlaps.
search::Objective mub_objective(std::size_t n, std::size_t k);

// Decode a mub_objective point back into the basis list (identity
// prepended).
MubSet mub_from_point(std::span<const double> point, std::size_t n,
                      std::size_t k);

}  // namespace qcon::constellations
