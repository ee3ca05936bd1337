#pragma once

#include <cstddef>
#include <vector>

#include "qcon/complex_matrix.hpp"

namespace qcon {

// Composite-index convention used everywhere: for factor dimensions
// [d1, d2, ...] the basis label (i1, i2, ...) maps to the flat index
// i1*d2*d3*... + i2*d3*... + ..., i.e. the leftmost factor is the most
// significant digit.

// <ij|out|lm> = <im|rho|lj>; pure index shuffle on a dA*dB square matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t d_a,
                                std::size_t d_b);

// out[(i,k),(j,l)] = u[(i,j),(k,l)] on a d^2 square matrix; involutive.
ComplexMatrix reshuffle(const ComplexMatrix& u, std::size_t d);

// Trace out every factor not listed in `keep`; kept factors stay in
// their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

// Conjugation by the basis-label permutation: new factor position k
// holds the old factor perm[k]. Spectrum-preserving.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& perm);

}  // namespace qcon
