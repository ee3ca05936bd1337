#include "qcon/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "qcon/eig.hpp"

namespace qcon::search {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class UnitSphere final : public Manifold {
 public:
  explicit UnitSphere(std::size_t complex_dim) : k_(complex_dim) {}
  std::size_t ambient_dim() const override { return 2 * k_; }

  std::vector<double> random_point(Rng& rng) const override {
    const std::vector<cplx> v = random_unit_vector(k_, rng);
    std::vector<double> x(2 * k_);
    for (std::size_t i = 0; i < k_; ++i) {
      x[2 * i] = v[i].real();
      x[2 * i + 1] = v[i].imag();
    }
    return x;
  }

  void project_tangent(std::span<const double> x,
                       std::span<double> g) const override {
    const double r = dot(g, x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= r * x[i];
  }

  std::vector<double> retract(std::span<const double> x,
                              std::span<const double> step) const override {
    std::vector<double> y(x.size());
    double n2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = x[i] + step[i];
      n2 += y[i] * y[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : y) v *= inv;
    return y;
  }

 private:
  std::size_t k_;
};

class UnitaryGroup final : public Manifold {
 public:
  explicit UnitaryGroup(std::size_t k) : k_(k) {}
  std::size_t ambient_dim() const override { return 2 * k_ * k_; }

  std::vector<double> random_point(Rng& rng) const override {
    std::vector<double> x(ambient_dim());
    pack_matrix(random_unitary(k_, rng), x);
    return x;
  }

  void project_tangent(std::span<const double> x,
                       std::span<double> g) const override {
    const ComplexMatrix u = unpack_matrix(x, k_, k_);
    ComplexMatrix grad = unpack_matrix(g, k_, k_);
    ComplexMatrix m = u.dagger() * grad;
    // Hermitian part of u^dagger grad is the normal component.
    ComplexMatrix herm(k_, k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j)
        herm(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    grad -= u * herm;
    pack_matrix(grad, g);
  }

  std::vector<double> retract(std::span<const double> x,
                              std::span<const double> step) const override {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + step[i];
    const ComplexMatrix u = polar_unitary(unpack_matrix(y, k_, k_));
    pack_matrix(u, y);
    return y;
  }

 private:
  std::size_t k_;
};

class StiefelRows final : public Manifold {
 public:
  StiefelRows(std::size_t r, std::size_t k) : r_(r), k_(k) {
    if (r > k) throw std::invalid_argument("stiefel_rows: r > k");
  }
  std::size_t ambient_dim() const override { return 2 * r_ * k_; }

  std::vector<double> random_point(Rng& rng) const override {
    ComplexMatrix p(r_, k_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < k_; ++j) p(i, j) = rng.complex_normal();
    orthonormalize(p);
    std::vector<double> x(ambient_dim());
    pack_matrix(p, x);
    return x;
  }

  void project_tangent(std::span<const double> x,
                       std::span<double> g) const override {
    const ComplexMatrix p = unpack_matrix(x, r_, k_);
    ComplexMatrix grad = unpack_matrix(g, r_, k_);
    ComplexMatrix m = grad * p.dagger();  // r x r
    ComplexMatrix herm(r_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j)
        herm(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    grad -= herm * p;
    pack_matrix(grad, g);
  }

  std::vector<double> retract(std::span<const double> x,
                              std::span<const double> step) const override {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + step[i];
    ComplexMatrix p = unpack_matrix(y, r_, k_);
    orthonormalize(p);
    pack_matrix(p, y);
    return y;
  }

 private:
  static void orthonormalize(ComplexMatrix& p) {
    // Symmetric orthonormalization: p <- (p p^dagger)^{-1/2} p.
    ComplexMatrix gram = p * p.dagger();
    const EigResult e = hermitian_eig(gram);
    const std::size_t r = p.rows();
    ComplexMatrix inv_sqrt(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        cplx s{0.0, 0.0};
        for (std::size_t k = 0; k < r; ++k)
          s += e.vectors(a, k) * std::conj(e.vectors(b, k)) /
               std::sqrt(std::max(e.values[k], 1e-300));
        inv_sqrt(a, b) = s;
      }
    p = inv_sqrt * p;
  }

  std::size_t r_, k_;
};

class TracelessPair final : public Manifold {
 public:
  TracelessPair(std::size_t side, double norm2) : s_(side), norm2_(norm2) {}
  std::size_t ambient_dim() const override { return 4 * s_ * s_; }

  std::vector<double> random_point(Rng& rng) const override {
    std::vector<double> x(ambient_dim());
    for (double& v : x) v = rng.normal();
    normalize(x);
    return x;
  }

  void project_tangent(std::span<const double> x,
                       std::span<double> g) const override {
    remove_traces(g);
    const double r = dot(g, x) / norm2_;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= r * x[i];
  }

  std::vector<double> retract(std::span<const double> x,
                              std::span<const double> step) const override {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + step[i];
    normalize(y);
    return y;
  }

 private:
  void remove_traces(std::span<double> x) const {
    const std::size_t block = 2 * s_ * s_;
    for (std::size_t m = 0; m < 2; ++m) {
      double tr_re = 0.0, tr_im = 0.0;
      for (std::size_t i = 0; i < s_; ++i) {
        tr_re += x[m * block + 2 * (i * s_ + i)];
        tr_im += x[m * block + 2 * (i * s_ + i) + 1];
      }
      tr_re /= static_cast<double>(s_);
      tr_im /= static_cast<double>(s_);
      for (std::size_t i = 0; i < s_; ++i) {
        x[m * block + 2 * (i * s_ + i)] -= tr_re;
        x[m * block + 2 * (i * s_ + i) + 1] -= tr_im;
      }
    }
  }

  void normalize(std::span<double> x) const {
    remove_traces(x);
    double n2 = dot(x, x);
    if (n2 <= 0.0) {
      // Degenerate step landed on zero; nudge one coordinate.
      x[0] = 1.0;
      n2 = 1.0;
    }
    const double f = std::sqrt(norm2_ / n2);
    for (double& v : x) v *= f;
  }

  std::size_t s_;
  double norm2_;
};

class ProductManifold final : public Manifold {
 public:
  explicit ProductManifold(std::vector<std::unique_ptr<Manifold>> parts)
      : parts_(std::move(parts)) {
    std::size_t off = 0;
    for (const auto& p : parts_) {
      offsets_.push_back(off);
      off += p->ambient_dim();
    }
    total_ = off;
  }

  std::size_t ambient_dim() const override { return total_; }

  std::vector<double> random_point(Rng& rng) const override {
    std::vector<double> x(total_);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const std::vector<double> p = parts_[i]->random_point(rng);
      std::copy(p.begin(), p.end(), x.begin() + offsets_[i]);
    }
    return x;
  }

  void project_tangent(std::span<const double> x,
                       std::span<double> g) const override {
    for (std::size_t i = 0; i < parts_.size(); ++i)
      parts_[i]->project_tangent(
          x.subspan(offsets_[i], parts_[i]->ambient_dim()),
          g.subspan(offsets_[i], parts_[i]->ambient_dim()));
  }

  std::vector<double> retract(std::span<const double> x,
                              std::span<const double> step) const override {
    std::vector<double> y(total_);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const std::vector<double> p = parts_[i]->retract(
          x.subspan(offsets_[i], parts_[i]->ambient_dim()),
          step.subspan(offsets_[i], parts_[i]->ambient_dim()));
      std::copy(p.begin(), p.end(), y.begin() + offsets_[i]);
    }
    return y;
  }

 private:
  std::vector<std::unique_ptr<Manifold>> parts_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

struct RestartResult {
  double value = 0.0;
  std::vector<double> point;
  std::size_t iterations = 0;
  bool aborted = false;
};

void eval_gradient(const Objective& obj, std::span<const double> x,
                   double fd_step, std::vector<double>& g) {
  if (obj.gradient) {
    obj.gradient(x, g);
    return;
  }
  std::vector<double> xp(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = fd_step * std::max(1.0, std::abs(x[i]));
    const double saved = xp[i];
    xp[i] = saved + h;
    const double fp = obj.value(xp);
    xp[i] = saved - h;
    const double fm = obj.value(xp);
    xp[i] = saved;
    g[i] = (fp - fm) / (2.0 * h);
  }
}

RestartResult run_restart(const Objective& obj, const Manifold& man,
                          const MinimizeConfig& cfg, std::uint64_t sub_seed) {
  Rng rng(sub_seed);
  RestartResult res;
  std::vector<double> x = man.random_point(rng);
  double f = obj.value(x);
  if (!std::isfinite(f)) {
    res.aborted = true;
    res.value = std::numeric_limits<double>::infinity();
    res.point = std::move(x);
    return res;
  }

  const std::size_t n = man.ambient_dim();
  std::vector<double> g(n), prev_x, prev_g;
  eval_gradient(obj, x, cfg.fd_step, g);
  man.project_tangent(x, g);

  double step = cfg.initial_step;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    res.iterations = it + 1;
    const double gnorm2 = dot(g, g);
    const double gnorm = std::sqrt(gnorm2);
    if (gnorm <= cfg.grad_tol) break;
    if (cfg.target_value && f <= *cfg.target_value) break;

    // Barzilai-Borwein step proposal from the previous pair.
    double t = step;
    if (!prev_x.empty()) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = x[i] - prev_x[i];
        ss += s * s;
        sy += s * (g[i] - prev_g[i]);
      }
      if (sy > 0.0) t = std::clamp(ss / sy, 1e-12, 1e2);
    }

    std::vector<double> dir(n);
    for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];

    // Armijo backtracking on the retracted objective.
    bool accepted = false;
    std::vector<double> x_new;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> scaled(n);
      for (std::size_t i = 0; i < n; ++i) scaled[i] = t * dir[i];
      x_new = man.retract(x, scaled);
      f_new = obj.value(x_new);
      if (!std::isfinite(f_new)) {
        res.aborted = true;
        res.value = f;
        res.point = std::move(x);
        return res;
      }
      if (f_new <= f - 1e-4 * t * gnorm2) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack_factor;
    }
    if (!accepted) break;

    prev_x = x;
    prev_g = g;
    x = std::move(x_new);
    f = f_new;
    step = t;
    eval_gradient(obj, x, cfg.fd_step, g);
    man.project_tangent(x, g);
  }

  res.value = f;
  res.point = std::move(x);
  return res;
}

}  // namespace

std::unique_ptr<Manifold> unit_sphere(std::size_t complex_dim) {
  return std::make_unique<UnitSphere>(complex_dim);
}
std::unique_ptr<Manifold> unitary_group(std::size_t k) {
  return std::make_unique<UnitaryGroup>(k);
}
std::unique_ptr<Manifold> stiefel_rows(std::size_t r, std::size_t k) {
  return std::make_unique<StiefelRows>(r, k);
}
std::unique_ptr<Manifold> traceless_pair(std::size_t side, double norm2) {
  return std::make_unique<TracelessPair>(side, norm2);
}
std::unique_ptr<Manifold> product(std::vector<std::unique_ptr<Manifold>> parts) {
  return std::make_unique<ProductManifold>(std::move(parts));
}

SearchCertificate minimize(const std::string& problem, const Objective& objective,
                           const Manifold& manifold,
                           const MinimizeConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchCertificate cert;
  cert.problem = problem;
  cert.seed = config.seed;
  cert.restarts = config.restarts;
  cert.config = config;

  std::vector<RestartResult> results(config.restarts);
  std::vector<bool> executed(config.restarts, false);

  if (config.threads > 1 && !config.stop_after_target) {
#pragma omp parallel for schedule(dynamic) num_threads(config.threads)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(config.restarts);
         ++r) {
      results[r] = run_restart(objective, manifold, config,
                               Rng::mix(config.seed, r));
      executed[r] = true;
    }
  } else {
    for (std::size_t r = 0; r < config.restarts; ++r) {
      results[r] =
          run_restart(objective, manifold, config, Rng::mix(config.seed, r));
      executed[r] = true;
      if (config.stop_after_target && config.target_value &&
          results[r].value <= *config.target_value)
        break;
    }
  }

  // Deterministic fold by restart index.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_r = 0;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    if (!executed[r]) continue;
    ++cert.restarts_executed;
    cert.total_iterations += results[r].iterations;
    cert.value_trace.push_back(results[r].value);
    if (results[r].aborted) cert.aborted_restarts.push_back(r);
    if (results[r].value < best) {
      best = results[r].value;
      best_r = r;
    }
  }
  cert.best_value = best;
  cert.best_restart = best_r;
  cert.best_point = results[best_r].point;
  cert.tolerances["grad_tol"] = config.grad_tol;
  cert.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return cert;
}

ComplexMatrix unitary_from_params(std::span<const double> params,
                                  std::size_t k) {
  if (params.size() != k * k)
    throw std::invalid_argument("unitary_from_params: need k^2 parameters");
  ComplexMatrix h(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    h(i, i) = params[i * k + i];
    for (std::size_t j = i + 1; j < k; ++j) {
      h(i, j) = cplx{params[i * k + j], params[j * k + i]};
      h(j, i) = std::conj(h(i, j));
    }
  }
  return expi_hermitian(h);
}

ComplexMatrix unpack_matrix(std::span<const double> flat, std::size_t rows,
                            std::size_t cols) {
  if (flat.size() != 2 * rows * cols)
    throw std::invalid_argument("unpack_matrix: size mismatch");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i)
    m.data()[i] = cplx{flat[2 * i], flat[2 * i + 1]};
  return m;
}

void pack_matrix(const ComplexMatrix& m, std::span<double> flat) {
  if (flat.size() != 2 * m.rows() * m.cols())
    throw std::invalid_argument("pack_matrix: size mismatch");
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) {
    flat[2 * i] = m.data()[i].real();
    flat[2 * i + 1] = m.data()[i].imag();
  }
}

}  // namespace qcon::search
