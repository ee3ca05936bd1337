#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qcon/combinatorics.hpp"
#include "qcon/entanglement.hpp"
#include "qcon/rng.hpp"
#include "qcon/search.hpp"
#include "qcon/tensor.hpp"
#include "qcon/types.hpp"

using namespace qcon;
using namespace qcon::combinatorics;

namespace {

LatinSquare cyclic_square(std::size_t n) {
  LatinSquare sq{n, std::vector<std::vector<std::size_t>>(
                        n, std::vector<std::size_t>(n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq.cells[i][j] = (i + j) % n;
  return sq;
}

// The order-4 card pair: ranks {A,K,Q,J} and suits {spade,club,diamond,
// heart} numbered 0..3 row by row.
std::pair<LatinSquare, LatinSquare> card_square() {
  LatinSquare ranks{4, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
  LatinSquare suits{4, {{0, 1, 2, 3}, {3, 2, 1, 0}, {1, 0, 3, 2}, {2, 3, 0, 1}}};
  return {ranks, suits};
}

}  // namespace

TEST_CASE("verify_latin") {
  for (std::size_t n : {2, 3, 4, 5, 6, 7})
    CHECK(verify_latin(cyclic_square(n)).passed);

  LatinSquare constant{3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
  CHECK_FALSE(verify_latin(constant).passed);

  // 2 sigma_x + identity pattern, symbols shifted to {0,1}.
  LatinSquare pauli{2, {{0, 1}, {1, 0}}};
  CHECK(verify_latin(pauli).passed);

  LatinSquare out_of_range{2, {{0, 2}, {1, 0}}};
  CHECK_THROWS(verify_latin(out_of_range));
}

TEST_CASE("verify_graeco_latin") {
  const auto [ranks, suits] = card_square();
  CHECK(verify_graeco_latin(ranks, suits).passed);

  const LatinSquare c = cyclic_square(4);
  CHECK_FALSE(verify_graeco_latin(c, c).passed);

  const auto [a3, b3] = graeco_latin(3);
  CHECK(verify_graeco_latin(a3, b3).passed);
  CHECK_THROWS(verify_graeco_latin(a3, cyclic_square(4)));
}

TEST_CASE("graeco_latin constructor") {
  for (std::size_t n : {3, 5, 7, 9}) {
    const auto [a, b] = graeco_latin(n);
    CHECK(verify_graeco_latin(a, b).passed);
  }
  CHECK_THROWS_WITH(graeco_latin(6),
                    "no Graeco-Latin square of order six exists");
  CHECK_THROWS(graeco_latin(4));
  CHECK_THROWS(graeco_latin(1));
}

TEST_CASE("verify_quantum_latin") {
  // Classical embedding of a Latin square.
  const LatinSquare sq = cyclic_square(3);
  QuantumLatinTable table{3, TableMode::kSingleSpace, {}};
  table.cells.resize(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      table.cells[i].push_back(StateVector::basis(3, sq.cells[i][j]));
  CHECK(verify_quantum_latin(table, 1e-12).passed);

  // Degenerate table: every cell |0>.
  QuantumLatinTable bad{3, TableMode::kSingleSpace, {}};
  bad.cells.assign(3, std::vector<StateVector>(3, StateVector::basis(3, 0)));
  CHECK_FALSE(verify_quantum_latin(bad, 1e-12).passed);

  // Break one row: two equal cells there; the witness points at it.
  QuantumLatinTable broken = table;
  broken.cells[1][0] = broken.cells[1][1];
  const CheckReport rep = verify_quantum_latin(broken, 1e-12);
  CHECK_FALSE(rep.passed);
  REQUIRE(rep.witness.size() == 1);
  CHECK(rep.witness[0][0] == 0);  // a row defect
  CHECK(rep.witness[0][1] == 1);  // ... in row 1

  table.mode = TableMode::kBipartite;
  CHECK_THROWS(verify_quantum_latin(table, 1e-12));
}

TEST_CASE("verify_oqls on the product embedding") {
  const auto [a, b] = graeco_latin(3);
  const QuantumLatinTable table = product_table_from_graeco(a, b);
  const CheckReport rep = verify_oqls(table, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_residual < 1e-12);
}

TEST_CASE("Bell-state tables at N=2 always fail") {
  // The four Bell states in a 2x2 table: global orthonormality holds but
  // no arrangement makes every row/column superposition maximally
  // entangled (no such design exists at N=2).
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<StateVector> bell = {
      StateVector({2, 2}, {cplx{s, 0}, {}, {}, cplx{s, 0}}),
      StateVector({2, 2}, {cplx{s, 0}, {}, {}, cplx{-s, 0}}),
      StateVector({2, 2}, {{}, cplx{s, 0}, cplx{s, 0}, {}}),
      StateVector({2, 2}, {{}, cplx{s, 0}, cplx{-s, 0}, {}})};
  std::vector<std::size_t> perm{0, 1, 2, 3};
  // Try every arrangement of the four states.
  std::sort(perm.begin(), perm.end());
  bool any_passed = false;
  do {
    QuantumLatinTable t{2, TableMode::kBipartite, {}};
    t.cells = {{bell[perm[0]], bell[perm[1]]}, {bell[perm[2]], bell[perm[3]]}};
    if (verify_oqls(t, 1e-8).passed) any_passed = true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK_FALSE(any_passed);
}

TEST_CASE("perturbing a valid table shows up at the right scale") {
  const auto [a, b] = graeco_latin(3);
  QuantumLatinTable table = product_table_from_graeco(a, b);
  std::vector<cplx> amps(table.cells[0][0].amplitudes().begin(),
                         table.cells[0][0].amplitudes().end());
  // Rotate a little weight onto an orthogonal component.
  const double eps = 1e-6;
  std::size_t hot = 0;
  while (std::abs(amps[hot]) < 0.5) ++hot;
  amps[hot] *= std::sqrt(1.0 - eps * eps);
  amps[(hot + 1) % amps.size()] += eps;
  table.cells[0][0] = StateVector(table.cells[0][0].dims(), amps);
  const CheckReport rep = verify_oqls(table, 1e-10);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_residual > 0.1 * eps);
  CHECK(rep.max_residual < 10.0 * eps);
}

TEST_CASE("verify_two_unitary") {
  const auto [a, b] = graeco_latin(3);
  const ComplexMatrix u = permutation_from_graeco(a, b);
  const CheckReport rep = verify_two_unitary(u, 3, 1e-12);
  CHECK(rep.passed);

  CHECK_FALSE(verify_two_unitary(entanglement::swap_operator(3), 3, 1e-8).passed);
  CHECK_FALSE(verify_two_unitary(ComplexMatrix::identity(9), 3, 1e-8).passed);
  CHECK_THROWS(verify_two_unitary(ComplexMatrix::identity(6), 3, 1e-8));
}

TEST_CASE("verify_perfect_tensor tracks verify_two_unitary") {
  const auto [a, b] = graeco_latin(3);
  const ComplexMatrix u = permutation_from_graeco(a, b);
  ComplexMatrix scaled = u;
  scaled *= 1.0;  // entries already of unit modulus where nonzero
  CHECK(verify_perfect_tensor(tensor_from_matrix(u, 3), 3, 1e-12).passed);
  CHECK_FALSE(
      verify_perfect_tensor(tensor_from_matrix(entanglement::swap_operator(3), 3),
                            3, 1e-8)
          .passed);

  // Product tensor u (x) v is far from perfect.
  std::vector<cplx> prod(16, cplx{0.0, 0.0});
  prod[0] = 1.0;  // |0000> amplitudes only
  CHECK_FALSE(verify_perfect_tensor(prod, 2, 1e-8).passed);
}

TEST_CASE("verify_ame") {
  // Maximally entangled pair as n=2.
  const double c = 1.0 / std::sqrt(3.0);
  std::vector<cplx> amps(9, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < 3; ++j) amps[j * 3 + j] = c;
  CHECK(verify_ame(AmeCandidate{2, 3, StateVector({3, 3}, amps)}, 1e-12).passed);

  // The classic four-qutrit state (1/3) sum |i, j, i+j, i+2j>.
  std::vector<cplx> four(81, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t idx =
          ((i * 3 + j) * 3 + (i + j) % 3) * 3 + (i + 2 * j) % 3;
      four[idx] = 1.0 / 3.0;
    }
  CHECK(verify_ame(AmeCandidate{4, 3, StateVector({3, 3, 3, 3}, four)}, 1e-10)
            .passed);

  // |0000> is as far from AME as it gets.
  std::vector<cplx> zero(16, cplx{0.0, 0.0});
  zero[0] = 1.0;
  const CheckReport rep =
      verify_ame(AmeCandidate{4, 2, StateVector({2, 2, 2, 2}, zero)}, 1e-10);
  CHECK_FALSE(rep.passed);
  // Worst reduction is the two-party one: |00><00| vs I/4.
  CHECK(rep.max_residual == doctest::Approx(0.75));
}

TEST_CASE("ame4_from_two_unitary") {
  const auto [a, b] = graeco_latin(3);
  const ComplexMatrix u = permutation_from_graeco(a, b);
  const AmeCandidate cand = ame4_from_two_unitary(u, 3);
  CHECK(cand.state.norm() == doctest::Approx(1.0));
  CHECK(verify_ame(cand, 1e-10).passed);

  Rng rng(3);
  CHECK_THROWS(ame4_from_two_unitary(random_unitary(4, rng), 2));
}

TEST_CASE("two-unitary equivalence chain at d=3") {
  const auto [a, b] = graeco_latin(3);
  const ComplexMatrix good = permutation_from_graeco(a, b);
  const ComplexMatrix bad = entanglement::swap_operator(3);

  CHECK(verify_two_unitary(good, 3, 1e-10).passed ==
        verify_perfect_tensor(tensor_from_matrix(good, 3), 3, 1e-10).passed);
  CHECK(verify_two_unitary(bad, 3, 1e-10).passed ==
        verify_perfect_tensor(tensor_from_matrix(bad, 3), 3, 1e-10).passed);
  CHECK(verify_two_unitary(good, 3, 1e-10).passed);
  CHECK_FALSE(verify_two_unitary(bad, 3, 1e-10).passed);
}

TEST_CASE("two-unitary objective is local-unitary invariant") {
  // The Frobenius defects depend only on the singular values of the
  // partial transpose and the reshuffle, which local unitaries preserve.
  Rng rng(13);
  const auto [a, b] = graeco_latin(3);
  const auto obj = two_unitary_objective(3);
  std::vector<double> flat(2 * 81);
  for (const ComplexMatrix& u :
       {permutation_from_graeco(a, b), random_unitary(9, rng)}) {
    search::pack_matrix(u, flat);
    const double before = obj.value(flat);
    const ComplexMatrix rotated = kron(random_unitary(3, rng),
                                       random_unitary(3, rng)) *
                                  u *
                                  kron(random_unitary(3, rng),
                                       random_unitary(3, rng));
    search::pack_matrix(rotated, flat);
    const double after = obj.value(flat);
    CHECK(std::abs(after - before) < 1e-10);
  }
}

TEST_CASE("entangling power: exact zeros and determinism") {
  const ComplexMatrix i4 = ComplexMatrix::identity(4);
  const auto zero = entangling_power_mc(i4, 2, 512, 42);
  CHECK(std::abs(zero.estimate) < 1e-12);

  const auto swap = entangling_power_mc(entanglement::swap_operator(2), 2, 512, 42);
  CHECK(swap.estimate == doctest::Approx(0.0).epsilon(1e-14));

  ComplexMatrix cnot(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const auto a = entangling_power_mc(cnot, 2, 10000, 7);
  const auto b = entangling_power_mc(cnot, 2, 10000, 7);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);

  CHECK_THROWS(entangling_power_mc(ComplexMatrix(4, 4), 2, 10, 1));
}

TEST_CASE("entangling power of CNOT matches the quadrature oracle") {
  ComplexMatrix cnot(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const double reference = oracles::cnot_entangling_power_quadrature();
  CHECK(reference == doctest::Approx(2.0 / 9.0).epsilon(1e-6));
  const auto mc = entangling_power_mc(cnot, 2, 100000, 2024);
  CHECK(std::abs(mc.estimate - reference) < 5.0 * mc.stderr_);
}

TEST_CASE("a 2-unitary entangles more than non-2-unitary permutations") {
  const auto [a, b] = graeco_latin(3);
  const ComplexMatrix u = permutation_from_graeco(a, b);
  const auto best = entangling_power_mc(u, 3, 20000, 5);

  // Identity-like and swap-like permutations at the same dimension.
  const auto id = entangling_power_mc(ComplexMatrix::identity(9), 3, 20000, 5);
  const auto sw = entangling_power_mc(entanglement::swap_operator(3), 3, 20000, 5);
  CHECK(best.estimate > id.estimate + 3.0 * (best.stderr_ + id.stderr_));
  CHECK(best.estimate > sw.estimate + 3.0 * (best.stderr_ + sw.stderr_));
}

TEST_CASE("two_unitary_objective: gradient and known zero") {
  Rng rng(23);
  const auto man = search::unitary_group(4);
  const auto obj = two_unitary_objective(2);
  const std::vector<double> x = man->random_point(rng);
  CHECK(oracles::gradient_fd_deviation(obj, x, 5, rng) < 1e-6);

  const auto [a, b] = graeco_latin(3);
  const ComplexMatrix u = permutation_from_graeco(a, b);
  std::vector<double> flat(2 * 81);
  search::pack_matrix(u, flat);
  CHECK(two_unitary_objective(3).value(flat) < 1e-24);
}
