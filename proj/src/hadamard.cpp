#include "randskew/hadamard.hpp"

#include <cmath>

#include "randskew/errors.hpp"
#include "randskew/rng.hpp"

namespace randskew {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fwht_inplace(std::span<double> v) {
  const std::size_t n = v.size();
  if (!is_power_of_two(n)) {
    throw InvalidArgument("NotPowerOfTwo", "FWHT length " + std::to_string(n) + " is not a power of two");
  }
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = v[j];
        const double y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

void fwht_rows(DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (!is_power_of_two(n)) {
    throw InvalidArgument("NotPowerOfTwo", "FWHT length " + std::to_string(n) + " is not a power of two");
  }
  const std::size_t d = a.cols();
  // Butterflies on whole rows keep the inner loop contiguous.
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        auto x = a.row(j);
        auto y = a.row(j + h);
        for (std::size_t k = 0; k < d; ++k) {
          const double p = x[k];
          const double q = y[k];
          x[k] = p + q;
          y[k] = p - q;
        }
      }
    }
  }
}

SrhtDraw srht_draw(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("SRHT of an empty matrix");
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  SrhtDraw out;
  out.n_original = n;
  out.n_padded = next_power_of_two(n);
  CounterRng sign_rng(derive_seed(seed, 0));
  out.signs.resize(out.n_padded);
  for (double& s : out.signs) s = sign_rng.rademacher();

  CounterRng rng(derive_seed(seed, 1));
  const double w = std::sqrt(static_cast<double>(out.n_padded) / static_cast<double>(m));
  out.sample.indices.resize(m);
  out.sample.weights.assign(m, w);
  for (auto& idx : out.sample.indices) idx = static_cast<std::size_t>(rng.below(out.n_padded));
  return out;
}

SrhtDraw srht_full_draw(std::vector<double> signs, std::size_t n_original) {
  SrhtDraw out;
  out.n_original = n_original;
  out.n_padded = next_power_of_two(n_original);
  if (signs.size() != out.n_padded) throw InvalidArgument("ShapeMismatch", "sign vector must have padded length");
  out.signs = std::move(signs);
  out.sample.indices.resize(out.n_padded);
  out.sample.weights.assign(out.n_padded, 1.0);
  for (std::size_t i = 0; i < out.n_padded; ++i) out.sample.indices[i] = i;
  return out;
}

DenseMatrix hadamard_rotate(const DenseMatrix& a, std::span<const double> signs) {
  const std::size_t padded = next_power_of_two(a.rows());
  if (signs.size() != padded) throw InvalidArgument("ShapeMismatch", "sign vector must have padded length");
  DenseMatrix out(padded, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto src = a.row(i);
    auto dst = out.row(i);
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = signs[i] * src[k];
  }
  fwht_rows(out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(padded));
  for (double& v : out.data()) v *= scale;
  return out;
}

DenseMatrix srht_apply(const SrhtDraw& draw, const DenseMatrix& a) {
  if (a.rows() != draw.n_original) throw InvalidArgument("ShapeMismatch", "rows(A) differs from the SRHT draw");
  return apply_sketch(draw.sample, hadamard_rotate(a, draw.signs));
}

std::vector<double> rotated_leverage_scores(const DenseMatrix& a, const SymMatrix& c, std::span<const double> signs) {
  if (c.dim() != a.cols()) throw InvalidArgument("ShapeMismatch", "regularizer dimension differs from cols(A)");
  // Rotating the whitened rows avoids a second factorization: the rotated
  // matrix has the same Gram as A.
  const DenseMatrix z = hadamard_rotate(cholesky(gram(a) + c).whiten_rows(a), signs);
  std::vector<double> scores(z.rows());
  for (std::size_t i = 0; i < z.rows(); ++i) scores[i] = dot(z.row(i), z.row(i));
  return scores;
}

}  // namespace randskew
