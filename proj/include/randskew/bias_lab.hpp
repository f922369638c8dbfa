#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "randskew/debias.hpp"
#include "randskew/linalg.hpp"
#include "randskew/sampling.hpp"

namespace randskew {

struct SrhtScheme {};
/// Dense i.i.d. Normal(0, 1/m) sketch; only used as an analytic oracle.
struct GaussianScheme {};

using SketchScheme = std::variant<SamplingPlan, SrhtScheme, GaussianScheme>;

std::string scheme_name(const SketchScheme& scheme);

struct BiasOptions {
  std::size_t threads = 1;  // 0 = hardware concurrency
  std::size_t batch = 64;   // trials per jackknife batch
};

struct BiasEstimate {
  std::string scheme;
  DebiasMode debias_mode = DebiasMode::None;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t discarded = 0;
  /// || H^{1/2} (mean Q - H^{-1}) H^{1/2} ||_2 with H = A^T A + C.
  double bias = 0.0;
  /// Jackknife standard error over trial batches; NaN with a single batch.
  double stderr_proxy = 0.0;
  /// psd_relative_error(mean Q, H^{-1}); +inf when mean Q is not PD.
  double eps_def5 = 0.0;
  SymMatrix mean_inverse;
};

/// S A with S an m x n matrix of i.i.d. Normal(0, 1/m) entries.
DenseMatrix gaussian_sketch(const DenseMatrix& a, std::size_t m, std::uint64_t seed);

/// Monte-Carlo mean of Q_t = (A~_t^T A~_t + C)^{-1}. Trials whose Gram fails
/// Cholesky are discarded and counted. Trial t uses derive_seed(seed, t).
/// SRHT and Gaussian schemes accept only None or Scalar debiasing.
BiasEstimate estimate_bias(const DenseMatrix& a, const SymMatrix& c, const SketchScheme& scheme,
                           const DebiasSpec& debias, std::size_t m, std::size_t trials, std::uint64_t seed,
                           const BiasOptions& options = {});

/// Debias spec for `mode` at sketch size m. Scalar uses the plan's d_eff for
/// sampling schemes and d_eff(A) otherwise; FineGrainedApprox needs plan scores.
DebiasSpec make_debias(const SketchScheme& scheme, DebiasMode mode, std::size_t m,
                       std::span<const double> exact_scores);

/// Seed shared by every debias mode of one (scheme, m) cell.
std::uint64_t sweep_cell_seed(std::uint64_t seed, std::size_t scheme_index, std::size_t m_index);

/// Rows ordered by scheme, then m, then debias mode.
std::vector<BiasEstimate> bias_sweep(const DenseMatrix& a, const SymMatrix& c, const std::vector<SketchScheme>& schemes,
                                     const std::vector<DebiasMode>& modes, const std::vector<std::size_t>& m_grid,
                                     std::size_t trials, std::uint64_t seed, const BiasOptions& options = {});

}  // namespace randskew
