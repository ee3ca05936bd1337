#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcon/complex_matrix.hpp"
#include "qcon/rng.hpp"

namespace qcon::search {

// Points live in a flat real ambient vector. Complex entries are stored
// interleaved (re, im), matrices row-major.

class Manifold {
 public:
  virtual ~Manifold() = default;
  virtual std::size_t ambient_dim() const = 0;
  virtual std::vector<double> random_point(Rng& rng) const = 0;
  // Project an ambient gradient onto the tangent space at x, in place.
  virtual void project_tangent(std::span<const double> x,
                               std::span<double> g) const = 0;
  virtual std::vector<double> retract(std::span<const double> x,
                                      std::span<const double> step) const = 0;
};

// Unit vectors in C^k.
std::unique_ptr<Manifold> unit_sphere(std::size_t complex_dim);
// U(k); retraction by polar decomposition.
std::unique_ptr<Manifold> unitary_group(std::size_t k);
// r x k complex matrices with orthonormal rows.
std::unique_ptr<Manifold> stiefel_rows(std::size_t r, std::size_t k);
// Pairs of traceless 4x4 matrices with joint squared Frobenius norm 1/4.
std::unique_ptr<Manifold> traceless_pair(std::size_t side, double norm2);
// Concatenation of factor manifolds.
std::unique_ptr<Manifold> product(std::vector<std::unique_ptr<Manifold>> parts);

struct Objective {
  std::function<double(std::span<const double>)> value;
  // Optional analytic Euclidean gradient; finite differences otherwise.
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct MinimizeConfig {
  std::size_t restarts = 100;
  std::size_t max_iters = 10000;
  double grad_tol = 1e-8;
  std::uint64_t seed = 0;
  double initial_step = 0.1;
  double backtrack_factor = 0.5;
  double fd_step = 1e-6;
  // Stop a restart once the value drops to or below this target; when
  // stop_after_target is set (sequential mode only) remaining restarts
  // are skipped as well.
  std::optional<double> target_value;
  bool stop_after_target = false;
  int threads = 1;
};

struct SearchCertificate {
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::size_t restarts_executed = 0;
  double best_value = 0.0;
  std::size_t best_restart = 0;
  std::vector<double> best_point;
  std::vector<double> value_trace;  // final value per executed restart
  std::map<std::string, double> tolerances;
  double wall_time_seconds = 0.0;
  std::size_t total_iterations = 0;
  std::vector<std::size_t> aborted_restarts;  // non-finite objective
  MinimizeConfig config;
};

// Multi-restart Riemannian descent: steepest direction, Barzilai-Borwein
// step proposal, Armijo backtracking, retraction after every step.
// Restart r draws its start from Rng(Rng::mix(seed, r)); the merge over
// restarts is a deterministic fold by index.
SearchCertificate minimize(const std::string& problem, const Objective& objective,
                           const Manifold& manifold, const MinimizeConfig& config);

// exp(i H) where the Hermitian generator H is packed as k^2 reals:
// diagonal at (i,i); for i<j the entry H(i,j) = p[i*k+j] + i p[j*k+i].
ComplexMatrix unitary_from_params(std::span<const double> params, std::size_t k);

// Interleaved (re, im) <-> matrix helpers shared by objective code.
ComplexMatrix unpack_matrix(std::span<const double> flat, std::size_t rows,
                            std::size_t cols);
void pack_matrix(const ComplexMatrix& m, std::span<double> flat);

}  // namespace qcon::search
