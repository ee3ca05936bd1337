#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qcon/complex_matrix.hpp"
#include "qcon/search.hpp"
#include "qcon/types.hpp"

namespace qcon::combinatorics {

struct LatinSquare {
  std::size_t order;
  std::vector<std::vector<std::size_t>> cells;  // symbols in {0..N-1}
};

enum class TableMode { kSingleSpace, kBipartite };

struct QuantumLatinTable {
  std::size_t order;
  TableMode mode;
  std::vector<std::vector<StateVector>> cells;  // N x N
};

CheckReport verify_latin(const LatinSquare& sq);

// Both squares Latin and the N^2 ordered symbol pairs all distinct.
CheckReport verify_graeco_latin(const LatinSquare& a, const LatinSquare& b);

// Orthogonal pair (i+j, i+2j) mod N for odd N. N = 6 is impossible and
// rejected with a dedicated message; other even N are unsupported.
std::pair<LatinSquare, LatinSquare> graeco_latin(std::size_t n);

// Rows and columns of a single-space table must be orthonormal bases.
CheckReport verify_quantum_latin(const QuantumLatinTable& table, double tol);

// Bipartite table: global orthonormality of all N^2 vectors plus, for
// every row and column, maximal entanglement of the uniform
// superposition (1/sqrt(N)) sum of its cells.
CheckReport verify_oqls(const QuantumLatinTable& table, double tol);

// U, U^Gamma and U^R all unitary.
CheckReport verify_two_unitary(const ComplexMatrix& u, std::size_t d, double tol);

// Rank-4 tensor with d^4 entries flattened with the composite-index
// convention; checks the three inequivalent flattenings.
CheckReport verify_perfect_tensor(const std::vector<cplx>& t, std::size_t d,
                                  double tol);

struct AmeCandidate {
  std::size_t parties;
  std::size_t local_dim;
  StateVector state;
};

// All reductions to floor(n/2) or fewer parties maximally mixed.
CheckReport verify_ame(const AmeCandidate& c, double tol);

// AME state of four parties from a 2-unitary: psi_{ijkl} = U[(ij),(kl)]/d.
AmeCandidate ame4_from_two_unitary(const ComplexMatrix& u, std::size_t d);

// Monte-Carlo average linear entropy of entanglement of U acting on
// Haar-random product states. Sharded with fixed 4096-sample blocks so
// the estimate is bit-identical for a given (seed, samples) regardless
// of thread count.
struct McEstimate {
  double estimate;
  double stderr_;
};
McEstimate entangling_power_mc(const ComplexMatrix& u, std::size_t d,
                               std::size_t samples, std::uint64_t seed);

// --- constructions bridging the classical and quantum objects ----------

// Permutation unitary |i,j> -> |a[i][j], b[i][j]> of side N^2.
ComplexMatrix permutation_from_graeco(const LatinSquare& a, const LatinSquare& b);

// Bipartite product-state table with cells |a[i][j]> (x) |b[i][j]>.
QuantumLatinTable product_table_from_graeco(const LatinSquare& a,
                                            const LatinSquare& b);

// Flatten a 2-unitary into the rank-4 tensor T_{ijkl} = U[(ij),(kl)].
std::vector<cplx> tensor_from_matrix(const ComplexMatrix& u, std::size_t d);

// --- search objective ---------------------------------------------------

// Objective over unitary_group(d^2): squared unitarity defects of
// U^Gamma and U^R (U itself stays unitary by the manifold). Analytic
// gradient. Zero exactly on 2-unitary matrices.
search::Objective two_unitary_objective(std::size_t d);

}  // namespace qcon::combinatorics
