#include "qcon/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qcon/rng.hpp"
#include "qcon/tensor.hpp"

namespace qcon::combinatorics {

namespace {

void check_symbols(const LatinSquare& sq) {
  const std::size_t n = sq.order;
  if (sq.cells.size() != n)
    throw std::invalid_argument("latin square: wrong row count");
  for (const auto& row : sq.cells) {
    if (row.size() != n)
      throw std::invalid_argument("latin square: ragged rows");
    for (std::size_t s : row)
      if (s >= n) throw std::invalid_argument("latin square: symbol out of range");
  }
}

// Gram-defect of a list of vectors against orthonormality.
double gram_defect(const std::vector<const StateVector*>& vecs,
                   std::vector<std::size_t>* worst_pair) {
  double worst = 0.0;
  if (worst_pair) *worst_pair = {0, 0};
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i; j < vecs.size(); ++j) {
      const cplx g = vecs[i]->inner(*vecs[j]);
      const double dev = std::abs(g - (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
      if (dev > worst) {
        worst = dev;
        if (worst_pair) *worst_pair = {i, j};
      }
    }
  return worst;
}

}  // namespace

CheckReport verify_latin(const LatinSquare& sq) {
  check_symbols(sq);
  const std::size_t n = sq.order;
  // A row/column passes iff each symbol appears exactly once; residual
  // is 0/1, the witness points at the first offender.
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> count(n, 0);
    for (std::size_t c = 0; c < n; ++c) ++count[sq.cells[r][c]];
    for (std::size_t s = 0; s < n; ++s)
      if (count[s] != 1) return make_report(1.0, 0.5, {{0, r, s}});
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> count(n, 0);
    for (std::size_t r = 0; r < n; ++r) ++count[sq.cells[r][c]];
    for (std::size_t s = 0; s < n; ++s)
      if (count[s] != 1) return make_report(1.0, 0.5, {{1, c, s}});
  }
  return make_report(0.0, 0.5);
}

CheckReport verify_graeco_latin(const LatinSquare& a, const LatinSquare& b) {
  if (a.order != b.order)
    throw std::invalid_argument("verify_graeco_latin: order mismatch");
  const CheckReport ra = verify_latin(a);
  if (!ra.passed) return ra;
  const CheckReport rb = verify_latin(b);
  if (!rb.passed) return rb;

  const std::size_t n = a.order;
  std::vector<bool> seen(n * n, false);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t pair = a.cells[r][c] * n + b.cells[r][c];
      if (seen[pair]) return make_report(1.0, 0.5, {{r, c}});
      seen[pair] = true;
    }
  return make_report(0.0, 0.5);
}

std::pair<LatinSquare, LatinSquare> graeco_latin(std::size_t n) {
  if (n == 6)
    throw std::invalid_argument("no Graeco-Latin square of order six exists");
  if (n % 2 == 0 || n < 3 || n > 99)
    throw std::invalid_argument(
        "graeco_latin: only odd orders 3 <= N <= 99 are constructed");
  LatinSquare a{n, std::vector<std::vector<std::size_t>>(
                       n, std::vector<std::size_t>(n))};
  LatinSquare b = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a.cells[i][j] = (i + j) % n;
      b.cells[i][j] = (i + 2 * j) % n;
    }
  return {std::move(a), std::move(b)};
}

CheckReport verify_quantum_latin(const QuantumLatinTable& table, double tol) {
  if (table.mode != TableMode::kSingleSpace)
    throw std::invalid_argument("verify_quantum_latin: single-space mode required");
  const std::size_t n = table.order;
  double worst = 0.0;
  std::vector<std::size_t> worst_at{0, 0, 0, 0};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<const StateVector*> row;
    for (std::size_t c = 0; c < n; ++c) row.push_back(&table.cells[r][c]);
    std::vector<std::size_t> pair;
    const double dev = gram_defect(row, &pair);
    if (dev > worst) {
      worst = dev;
      worst_at = {0, r, pair[0], pair[1]};
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<const StateVector*> col;
    for (std::size_t r = 0; r < n; ++r) col.push_back(&table.cells[r][c]);
    std::vector<std::size_t> pair;
    const double dev = gram_defect(col, &pair);
    if (dev > worst) {
      worst = dev;
      worst_at = {1, c, pair[0], pair[1]};
    }
  }
  return make_report(worst, tol, {worst_at});
}

namespace {

// Maximal-entanglement defect of the uniform superposition of one line
// (row or column) of a bipartite table: norm deviation plus flatness of
// the reduced state.
double line_entanglement_defect(const QuantumLatinTable& table, bool by_row,
                                std::size_t index) {
  const std::size_t n = table.order;
  const std::size_t n2 = n * n;
  std::vector<cplx> s(n2, cplx{0.0, 0.0});
  const double coeff = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const StateVector& v =
        by_row ? table.cells[index][k] : table.cells[k][index];
    for (std::size_t i = 0; i < n2; ++i) s[i] += coeff * v[i];
  }
  double norm2 = 0.0;
  for (const cplx& z : s) norm2 += std::norm(z);
  double defect = std::abs(std::sqrt(norm2) - 1.0);

  // Reduced state over the first factor: rho[i][i'] = sum_j s_ij conj(s_i'j).
  const double flat = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = 0; ip < n; ++ip) {
      cplx rho{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j)
        rho += s[i * n + j] * std::conj(s[ip * n + j]);
      const double dev =
          std::abs(rho - (i == ip ? cplx{flat, 0.0} : cplx{0.0, 0.0}));
      defect = std::max(defect, dev);
    }
  return defect;
}

}  // namespace

CheckReport verify_oqls(const QuantumLatinTable& table, double tol) {
  if (table.mode != TableMode::kBipartite)
    throw std::invalid_argument("verify_oqls: bipartite mode required");
  const std::size_t n = table.order;

  std::vector<const StateVector*> all;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (table.cells[r][c].size() != n * n)
        throw std::invalid_argument("verify_oqls: cell dimension != N^2");
      all.push_back(&table.cells[r][c]);
    }

  std::vector<std::size_t> pair;
  double worst = gram_defect(all, &pair);
  std::vector<std::size_t> worst_at{0, pair[0], pair[1]};

  for (std::size_t r = 0; r < n; ++r) {
    const double dev = line_entanglement_defect(table, true, r);
    if (dev > worst) {
      worst = dev;
      worst_at = {1, r};
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    const double dev = line_entanglement_defect(table, false, c);
    if (dev > worst) {
      worst = dev;
      worst_at = {2, c};
    }
  }
  return make_report(worst, tol, {worst_at});
}

CheckReport verify_two_unitary(const ComplexMatrix& u, std::size_t d,
                               double tol) {
  if (!u.is_square() || u.rows() != d * d)
    throw std::invalid_argument("verify_two_unitary: side != d^2");
  const double du = unitarity_defect(u);
  const double dg = unitarity_defect(partial_transpose(u, d, d));
  const double dr = unitarity_defect(reshuffle(u, d));
  const double worst = std::max({du, dg, dr});
  std::size_t which = worst == du ? 0 : (worst == dg ? 1 : 2);
  return make_report(worst, tol, {{which}});
}

std::vector<cplx> tensor_from_matrix(const ComplexMatrix& u, std::size_t d) {
  if (!u.is_square() || u.rows() != d * d)
    throw std::invalid_argument("tensor_from_matrix: side != d^2");
  std::vector<cplx> t(d * d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          t[((i * d + j) * d + k) * d + l] = u(i * d + j, k * d + l);
  return t;
}

CheckReport verify_perfect_tensor(const std::vector<cplx>& t, std::size_t d,
                                  double tol) {
  if (t.size() != d * d * d * d)
    throw std::invalid_argument("verify_perfect_tensor: need d^4 entries");
  auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return t[((i * d + j) * d + k) * d + l];
  };
  const std::size_t n = d * d;
  ComplexMatrix x_ij(n, n), x_ik(n, n), x_il(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const cplx v = at(i, j, k, l);
          x_ij(i * d + j, k * d + l) = v;
          x_ik(i * d + k, j * d + l) = v;
          x_il(i * d + l, j * d + k) = v;
        }
  const double da = unitarity_defect(x_ij);
  const double db = unitarity_defect(x_ik);
  const double dc = unitarity_defect(x_il);
  const double worst = std::max({da, db, dc});
  std::size_t which = worst == da ? 0 : (worst == db ? 1 : 2);
  return make_report(worst, tol, {{which}});
}

CheckReport verify_ame(const AmeCandidate& c, double tol) {
  const std::size_t n = c.parties;
  const std::size_t d = c.local_dim;
  if (n < 2) throw std::invalid_argument("verify_ame: need n >= 2 parties");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= d;
    if (total > kMaxSide) throw std::invalid_argument("verify_ame: oversize");
  }
  if (c.state.size() != total)
    throw std::invalid_argument("verify_ame: state size != d^n");

  const ComplexMatrix proj = c.state.projector();
  const std::vector<std::size_t> dims(n, d);
  const std::size_t half = n / 2;

  double worst = 0.0;
  std::vector<std::size_t> worst_subset;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    const std::size_t bits = static_cast<std::size_t>(std::popcount(mask));
    if (bits == 0 || bits > half) continue;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) keep.push_back(k);
    const ComplexMatrix red = partial_trace(proj, dims, keep);
    double flat = 1.0;
    for (std::size_t b = 0; b < bits; ++b) flat /= static_cast<double>(d);
    double dev = 0.0;
    for (std::size_t i = 0; i < red.rows(); ++i)
      for (std::size_t j = 0; j < red.cols(); ++j)
        dev = std::max(dev, std::abs(red(i, j) - (i == j ? cplx{flat, 0.0}
                                                         : cplx{0.0, 0.0})));
    if (dev > worst) {
      worst = dev;
      worst_subset = keep;
    }
  }
  return make_report(worst, tol, {worst_subset});
}

AmeCandidate ame4_from_two_unitary(const ComplexMatrix& u, std::size_t d) {
  const CheckReport check = verify_two_unitary(u, d, 1e-8);
  if (!check.passed)
    throw std::invalid_argument("ame4_from_two_unitary: input is not 2-unitary");
  std::vector<cplx> amps = tensor_from_matrix(u, d);
  const double inv = 1.0 / static_cast<double>(d);
  for (cplx& z : amps) z *= inv;
  return AmeCandidate{4, d,
                      StateVector(std::vector<std::size_t>(4, d), std::move(amps))};
}

McEstimate entangling_power_mc(const ComplexMatrix& u, std::size_t d,
                               std::size_t samples, std::uint64_t seed) {
  if (!u.is_square() || u.rows() != d * d)
    throw std::invalid_argument("entangling_power_mc: side != d^2");
  if (unitarity_defect(u) > 1e-10)
    throw std::invalid_argument("entangling_power_mc: U not unitary");
  if (samples == 0)
    throw std::invalid_argument("entangling_power_mc: need samples > 0");

  constexpr std::size_t kShard = 4096;
  const std::size_t shards = (samples + kShard - 1) / kShard;
  std::vector<double> shard_sum(shards, 0.0), shard_sum2(shards, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(shards); ++s) {
    Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(s)));
    const std::size_t count =
        std::min(kShard, samples - static_cast<std::size_t>(s) * kShard);
    double acc = 0.0, acc2 = 0.0;
    std::vector<cplx> psi(d * d);
    for (std::size_t i = 0; i < count; ++i) {
      const std::vector<cplx> a = random_unit_vector(d, rng);
      const std::vector<cplx> b = random_unit_vector(d, rng);
      for (std::size_t r = 0; r < d * d; ++r) {
        cplx acc_r{0.0, 0.0};
        for (std::size_t x = 0; x < d; ++x)
          for (std::size_t y = 0; y < d; ++y)
            acc_r += u(r, x * d + y) * a[x] * b[y];
        psi[r] = acc_r;
      }
      // Purity of the reduced state on the first factor.
      double purity = 0.0;
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t xp = 0; xp < d; ++xp) {
          cplx rho{0.0, 0.0};
          for (std::size_t y = 0; y < d; ++y)
            rho += psi[x * d + y] * std::conj(psi[xp * d + y]);
          purity += std::norm(rho);
        }
      const double e_lin = 1.0 - purity;
      acc += e_lin;
      acc2 += e_lin * e_lin;
    }
    shard_sum[s] = acc;
    shard_sum2[s] = acc2;
  }

  double sum = 0.0, sum2 = 0.0;
  for (std::size_t s = 0; s < shards; ++s) {
    sum += shard_sum[s];
    sum2 += shard_sum2[s];
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      samples > 1
          ? std::max(0.0, (sum2 - sum * mean) / static_cast<double>(samples - 1))
          : 0.0;
  return McEstimate{mean, std::sqrt(var / static_cast<double>(samples))};
}

ComplexMatrix permutation_from_graeco(const LatinSquare& a,
                                      const LatinSquare& b) {
  const CheckReport check = verify_graeco_latin(a, b);
  if (!check.passed)
    throw std::invalid_argument("permutation_from_graeco: pair not orthogonal");
  const std::size_t n = a.order;
  ComplexMatrix u(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      u(a.cells[i][j] * n + b.cells[i][j], i * n + j) = 1.0;
  return u;
}

QuantumLatinTable product_table_from_graeco(const LatinSquare& a,
                                            const LatinSquare& b) {
  const std::size_t n = a.order;
  QuantumLatinTable table{n, TableMode::kBipartite, {}};
  table.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table.cells[i].push_back(tensor(StateVector::basis(n, a.cells[i][j]),
                                      StateVector::basis(n, b.cells[i][j])));
  return table;
}

search::Objective two_unitary_objective(std::size_t d) {
  const std::size_t n = d * d;
  search::Objective obj;

  auto defect_terms = [n](const ComplexMatrix& x, ComplexMatrix* grad) {
    // F_x = sum |(x^dagger x - I)_ij|^2; dF/d conj(x) = 2 x (x^dagger x - I).
    ComplexMatrix dmat = x.dagger() * x;
    for (std::size_t i = 0; i < n; ++i) dmat(i, i) -= 1.0;
    double sum = 0.0;
    for (const cplx& z : dmat.data()) sum += std::norm(z);
    if (grad) *grad = 2.0 * x * dmat;
    return sum;
  };

  obj.value = [d, n, defect_terms](std::span<const double> flat) {
    const ComplexMatrix u = search::unpack_matrix(flat, n, n);
    return defect_terms(partial_transpose(u, d, d), nullptr) +
           defect_terms(reshuffle(u, d), nullptr);
  };
  obj.gradient = [d, n, defect_terms](std::span<const double> flat,
                                      std::span<double> out) {
    const ComplexMatrix u = search::unpack_matrix(flat, n, n);
    ComplexMatrix g_pt(n, n), g_rs(n, n);
    defect_terms(partial_transpose(u, d, d), &g_pt);
    defect_terms(reshuffle(u, d), &g_rs);
    // Both reorderings are involutive entry permutations, so the chain
    // rule is just the inverse shuffle.
    ComplexMatrix wirt = partial_transpose(g_pt, d, d);
    wirt += reshuffle(g_rs, d);
    wirt *= 2.0;
    search::pack_matrix(wirt, out);
  };
  return obj;
}

}  // namespace qcon::combinatorics
