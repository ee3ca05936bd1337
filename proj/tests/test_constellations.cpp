#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qcon/constellations.hpp"
#include "qcon/rng.hpp"
#include "qcon/search.hpp"
#include "qcon/types.hpp"

using namespace qcon;
using namespace qcon::constellations;

namespace {

// Fiducial whose Bloch vector is (1,1,1)/sqrt(3); its displacement orbit
// is the regular tetrahedron.
StateVector tetrahedron_fiducial() {
  const double ct = 1.0 / std::sqrt(3.0);
  const double a = std::sqrt((1.0 + ct) / 2.0);
  const double b = std::sqrt((1.0 - ct) / 2.0);
  const cplx phase = std::exp(cplx{0.0, std::numbers::pi / 4.0});
  return StateVector({2}, {cplx{a, 0.0}, b * phase});
}

StateVector hesse_fiducial() {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector({3}, {cplx{0.0, 0.0}, cplx{s, 0.0}, cplx{-s, 0.0}});
}

}  // namespace

TEST_CASE("displacement operators") {
  for (std::size_t n : {2, 3, 5}) {
    CHECK(max_abs_diff(wh_displacement(n, 0, 0), ComplexMatrix::identity(n)) ==
          0.0);
    for (long p = 0; p < static_cast<long>(n); ++p)
      for (long q = 0; q < static_cast<long>(n); ++q)
        CHECK(unitarity_defect(wh_displacement(n, p, q)) < 1e-12);
  }

  // N=2 shift is plain sigma_x (tau^0 = 1).
  const ComplexMatrix d10 = wh_displacement(2, 1, 0);
  CHECK(std::abs(d10(0, 1) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(d10(1, 0) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("displacement group closure up to a unimodular phase") {
  const ComplexMatrix lhs = wh_displacement(3, 1, 1) * wh_displacement(3, 1, 0);
  const ComplexMatrix rhs = wh_displacement(3, 2, 1);
  // lhs = phase * rhs: find the phase from the first nonzero entry.
  cplx phase{0.0, 0.0};
  for (std::size_t i = 0; i < 9 && phase == cplx{0.0, 0.0}; ++i)
    if (std::abs(rhs.data()[i]) > 0.5) phase = lhs.data()[i] / rhs.data()[i];
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-13);
  ComplexMatrix scaled = rhs;
  scaled *= phase;
  CHECK(max_abs_diff(lhs, scaled) < 1e-13);
}

TEST_CASE("orbit size, norms, and the fiducial slot") {
  const StateVector f = tetrahedron_fiducial();
  const auto orbit = sic_orbit(f);
  REQUIRE(orbit.size() == 4);
  for (const StateVector& v : orbit) CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(std::abs(orbit[0].inner(f) - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("tetrahedron orbit is equiangular") {
  const auto orbit = sic_orbit(tetrahedron_fiducial());
  const CheckReport rep = verify_sic(orbit, 1e-10);
  CHECK(rep.passed);
  CHECK(std::norm(orbit[0].inner(orbit[1])) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("Hesse orbit passes at 1e-12") {
  const auto orbit = sic_orbit(hesse_fiducial());
  const CheckReport rep = verify_sic(orbit, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_residual < 1e-12);
}

TEST_CASE("verify_sic failure modes") {
  // A repeated computational basis is maximally non-equiangular.
  std::vector<StateVector> vecs;
  for (int copy = 0; copy < 2; ++copy)
    for (std::size_t i = 0; i < 2; ++i) vecs.push_back(StateVector::basis(2, i));
  const CheckReport rep = verify_sic(vecs, 1e-10);
  CHECK_FALSE(rep.passed);
  // Duplicated vectors have overlap^2 = 1 against a target of 1/3.
  CHECK(rep.max_residual == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS(verify_sic({tetrahedron_fiducial()}, 1e-10));
}

TEST_CASE("a 1e-4 perturbation is detected at the right scale") {
  auto orbit = sic_orbit(hesse_fiducial());
  std::vector<cplx> amps(orbit[3].amplitudes().begin(),
                         orbit[3].amplitudes().end());
  amps[0] += 1e-4;
  double n2 = 0.0;
  for (const cplx& z : amps) n2 += std::norm(z);
  for (cplx& z : amps) z /= std::sqrt(n2);
  orbit[3] = StateVector(orbit[3].dims(), amps);
  const CheckReport rep = verify_sic(orbit, 1e-10);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_residual >= 1e-5);
  CHECK(rep.max_residual <= 1e-3);
}

TEST_CASE("sic_residual properties") {
  CHECK(sic_residual(tetrahedron_fiducial()) < 1e-13);

  // |0> at N=2: enumerate the orbit overlaps by hand.
  const StateVector zero = StateVector::basis(2, 0);
  double expected = 0.0;
  const auto orbit = sic_orbit(zero);
  for (std::size_t k = 1; k < orbit.size(); ++k) {
    const double dev = std::norm(zero.inner(orbit[k])) - 1.0 / 3.0;
    expected += dev * dev;
  }
  CHECK(sic_residual(zero) == doctest::Approx(expected).epsilon(1e-12));

  // Global phase invariance.
  const StateVector f = tetrahedron_fiducial();
  std::vector<cplx> rot(f.amplitudes().begin(), f.amplitudes().end());
  const cplx phase = std::exp(cplx{0.0, 1.234});
  for (cplx& z : rot) z *= phase;
  CHECK(sic_residual(StateVector(f.dims(), rot)) ==
        doctest::Approx(sic_residual(f)).epsilon(1e-12));
}

TEST_CASE("sic_residual is displacement covariant") {
  const StateVector f = hesse_fiducial();
  const double base = sic_residual(f);
  for (long p = 0; p < 3; ++p)
    for (long q = 0; q < 3; ++q) {
      const StateVector g = apply_state(wh_displacement(3, p, q), f);
      CHECK(std::abs(sic_residual(g) - base) < 1e-12);
    }
}

TEST_CASE("verify_mub basics") {
  const MubSet pauli = mub_prime(2);
  CHECK(verify_mub(pauli, 1e-10).passed);

  const MubSet twice{2, {ComplexMatrix::identity(2), ComplexMatrix::identity(2)}};
  const CheckReport rep = verify_mub(twice, 1e-10);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_residual == doctest::Approx(0.5));  // 1 - 1/N at N=2

  const MubSet f6{6, {ComplexMatrix::identity(6), fourier_matrix(6)}};
  CHECK(verify_mub(f6, 1e-10).passed);

  CHECK_THROWS(verify_mub(MubSet{2, {ComplexMatrix::identity(2)}}, 1e-10));
}

TEST_CASE("mub_prime gives complete sets for small primes") {
  for (std::size_t p : {2, 3, 5, 7, 11}) {
    const MubSet set = mub_prime(p);
    CHECK(set.bases.size() == p + 1);
    const CheckReport rep = verify_mub(set, 1e-10);
    CHECK(rep.passed);
  }
  CHECK_THROWS(mub_prime(4));
  CHECK_THROWS(mub_prime(6));
  CHECK_THROWS(mub_prime(101));
}

TEST_CASE("pairwise Gram matrices of mub_prime are complex Hadamard") {
  const MubSet set = mub_prime(5);
  for (std::size_t m = 0; m < set.bases.size(); ++m)
    for (std::size_t l = m + 1; l < set.bases.size(); ++l) {
      const ComplexMatrix g = hadamard_from_bases(set.bases[m], set.bases[l]);
      CHECK(verify_complex_hadamard(g, 1e-10).passed);
    }
}

TEST_CASE("complex Hadamard verifier") {
  for (std::size_t n = 2; n <= 8; ++n)
    CHECK(verify_complex_hadamard(fourier_matrix(n), 1e-12).passed);
  CHECK_FALSE(verify_complex_hadamard(ComplexMatrix::identity(3), 1e-10).passed);

  // Real order-4 Hadamard scaled to unitarity.
  ComplexMatrix h4(4, 4);
  const double signs[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1},
                              {1, -1, -1, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h4(i, j) = 0.5 * signs[i][j];
  CHECK(verify_complex_hadamard(h4, 1e-12).passed);
}

TEST_CASE("hadamard_from_bases") {
  const MubSet pauli = mub_prime(2);
  const ComplexMatrix g = hadamard_from_bases(pauli.bases[0], pauli.bases[1]);
  for (const cplx& z : g.data())
    CHECK(std::abs(z) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_FALSE(verify_complex_hadamard(
                  hadamard_from_bases(pauli.bases[1], pauli.bases[1]), 1e-10)
                  .passed);
}

TEST_CASE("global unitary rotation leaves both verifiers unchanged") {
  Rng rng(19);
  const ComplexMatrix w = random_unitary(3, rng);

  auto orbit = sic_orbit(hesse_fiducial());
  const double before = verify_sic(orbit, 1e-6).max_residual;
  for (StateVector& v : orbit) v = apply_state(w, v);
  CHECK(std::abs(verify_sic(orbit, 1e-6).max_residual - before) < 1e-12);

  MubSet set = mub_prime(3);
  const ComplexMatrix w3 = random_unitary(3, rng);
  const double mub_before = verify_mub(set, 1e-6).max_residual;
  for (ComplexMatrix& b : set.bases) b = w3 * b;
  CHECK(std::abs(verify_mub(set, 1e-6).max_residual - mub_before) < 1e-10);
}

TEST_CASE("random over-complete basis sets never pass") {
  Rng rng(29);
  for (std::size_t n : {2, 3}) {
    MubSet set{n, {}};
    for (std::size_t k = 0; k < n + 2; ++k)
      set.bases.push_back(random_unitary(n, rng));
    const double tol = 1.0 / (2.0 * static_cast<double>(n));
    CHECK_FALSE(verify_mub(set, tol).passed);
  }
}

TEST_CASE("sic objective analytic gradient matches finite differences") {
  Rng rng(39);
  const auto sphere = search::unit_sphere(4);
  const auto obj = sic_objective(4);
  for (int trial = 0; trial < 3; ++trial) {
    const std::vector<double> x = sphere->random_point(rng);
    CHECK(oracles::gradient_fd_deviation(obj, x, 4, rng) < 1e-7);
  }
}

TEST_CASE("mub objective analytic gradient matches finite differences") {
  Rng rng(49);
  std::vector<std::unique_ptr<search::Manifold>> parts;
  parts.push_back(search::unitary_group(3));
  parts.push_back(search::unitary_group(3));
  const auto man = search::product(std::move(parts));
  const auto obj = mub_objective(3, 3);
  const std::vector<double> x = man->random_point(rng);
  CHECK(oracles::gradient_fd_deviation(obj, x, 5, rng) < 1e-7);
}

TEST_CASE("mub objective vanishes on a known complete set") {
  const MubSet set = mub_prime(3);
  // Rotate so basis 0 is the identity: B_m -> B_0^dagger B_m.
  std::vector<double> point(2 * 2 * 9);
  const std::size_t block = 2 * 9;
  for (std::size_t m = 1; m <= 2; ++m)
    search::pack_matrix(set.bases[0].dagger() * set.bases[m],
                        std::span(point).subspan((m - 1) * block, block));
  const auto obj = mub_objective(3, 3);
  CHECK(obj.value(point) < 1e-20);
  const MubSet back = mub_from_point(point, 3, 3);
  CHECK(verify_mub(back, 1e-10).passed);
}
