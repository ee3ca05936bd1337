#include "qcon/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qcon {

namespace {

std::size_t dims_product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

// Multi-digit decode/encode under the leftmost-most-significant rule.
void decode(std::size_t flat, const std::vector<std::size_t>& dims,
            std::vector<std::size_t>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = flat % dims[k];
    flat /= dims[k];
  }
}

std::size_t encode(const std::vector<std::size_t>& digits,
                   const std::vector<std::size_t>& dims) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
  return flat;
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t d_a,
                                std::size_t d_b) {
  const std::size_t n = d_a * d_b;
  if (!rho.is_square() || rho.rows() != n)
    throw std::invalid_argument("partial_transpose: side != dA*dB");
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_b; ++j)
      for (std::size_t l = 0; l < d_a; ++l)
        for (std::size_t m = 0; m < d_b; ++m)
          out(i * d_b + j, l * d_b + m) = rho(i * d_b + m, l * d_b + j);
  return out;
}

ComplexMatrix reshuffle(const ComplexMatrix& u, std::size_t d) {
  const std::size_t n = d * d;
  if (!u.is_square() || u.rows() != n)
    throw std::invalid_argument("reshuffle: side != d^2");
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l)
          out(i * d + k, j * d + l) = u(i * d + j, k * d + l);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  const std::size_t n = dims_product(dims);
  if (!rho.is_square() || rho.rows() != n)
    throw std::invalid_argument("partial_trace: side != product(dims)");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size())
      throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::vector<std::size_t> keep_sorted;
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    (kept[k] ? keep_sorted : traced).push_back(k);

  std::vector<std::size_t> keep_dims, traced_dims;
  for (std::size_t k : keep_sorted) keep_dims.push_back(dims[k]);
  for (std::size_t k : traced) traced_dims.push_back(dims[k]);
  const std::size_t nk = dims_product(keep_dims);
  const std::size_t nt = dims_product(traced_dims);

  ComplexMatrix out(nk, nk);
  std::vector<std::size_t> row_digits(dims.size()), col_digits(dims.size());
  std::vector<std::size_t> kd(keep_dims.size()), td(traced_dims.size());
  for (std::size_t r = 0; r < nk; ++r) {
    decode(r, keep_dims, kd);
    for (std::size_t c = 0; c < nk; ++c) {
      std::vector<std::size_t> cd(keep_dims.size());
      decode(c, keep_dims, cd);
      cplx sum{0.0, 0.0};
      for (std::size_t t = 0; t < nt; ++t) {
        decode(t, traced_dims, td);
        for (std::size_t k = 0; k < keep_sorted.size(); ++k) {
          row_digits[keep_sorted[k]] = kd[k];
          col_digits[keep_sorted[k]] = cd[k];
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
          row_digits[traced[k]] = td[k];
          col_digits[traced[k]] = td[k];
        }
        sum += rho(encode(row_digits, dims), encode(col_digits, dims));
      }
      out(r, c) = sum;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& perm) {
  const std::size_t n = dims_product(dims);
  if (!m.is_square() || m.rows() != n)
    throw std::invalid_argument("permute_subsystems: side != product(dims)");
  if (perm.size() != dims.size())
    throw std::invalid_argument("permute_subsystems: perm length mismatch");
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t p : perm) {
    if (p >= dims.size() || seen[p])
      throw std::invalid_argument("permute_subsystems: invalid permutation");
    seen[p] = true;
  }

  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) new_dims[k] = dims[perm[k]];

  // Flat-index relabeling old -> new.
  std::vector<std::size_t> relabel(n);
  std::vector<std::size_t> digits(dims.size()), nd(dims.size());
  for (std::size_t f = 0; f < n; ++f) {
    decode(f, dims, digits);
    for (std::size_t k = 0; k < dims.size(); ++k) nd[k] = digits[perm[k]];
    relabel[f] = encode(nd, new_dims);
  }

  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(relabel[i], relabel[j]) = m(i, j);
  return out;
}

}  // namespace qcon
