#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randskew/linalg.hpp"
#include "randskew/sampling.hpp"

namespace randskew {

enum class DebiasMode { None, Scalar, FineGrainedExact, FineGrainedApprox };

std::string to_string(DebiasMode mode);

/// How a realized sketch is re-weighted before its Gram is inverted.
struct DebiasSpec {
  DebiasMode mode = DebiasMode::None;
  /// Scalar: the Gram is multiplied by `factor` (weights by sqrt(factor)).
  std::optional<double> factor;
  /// Fine-grained: per-row multiplier on the sampling weight, sqrt(F_ii).
  std::optional<std::vector<double>> row_weights;
  /// Fine-grained approximate: accuracy the scores were requested at; not checked.
  double omega_hint = 0.0;

  static DebiasSpec none() { return {}; }
  /// factor = m / (m - d_eff).
  static DebiasSpec scalar(std::size_t m, double d_eff);
  /// Arbitrary Gram multiplier (e.g. the inverse-Wishart correction).
  static DebiasSpec with_factor(double factor);
  static DebiasSpec fine_grained(const SamplingPlan& plan, std::span<const double> scores, std::size_t m);
  static DebiasSpec fine_grained_approx(const SamplingPlan& plan, std::span<const double> approx_scores,
                                        std::size_t m, double omega_hint = 0.0);
};

/// m / (m - d_eff); SketchTooSmall when m <= d_eff.
double scalar_factor(std::size_t m, double d_eff);

/// sqrt(m / (m - l_i/pi_i)) per row; 1 for rows with l_i = 0 or pi_i = 0.
/// Leverage plans evaluate l_i/pi_i as d_plan * l_i / s_i so that the plan's
/// own scores give exactly the scalar multiplier.
std::vector<double> fine_grained_weights(const SamplingPlan& plan, std::span<const double> scores, std::size_t m);
std::vector<double> approx_fine_grained_weights(const SamplingPlan& plan, std::span<const double> approx_scores,
                                                std::size_t m);

SketchDraw apply_debias(SketchDraw draw, const DebiasSpec& spec);

struct FixedPointOptions {
  double tol = 1e-10;
  std::size_t max_iters = 500;
};

struct FixedPointD {
  std::vector<double> diag;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;
  /// Range m/(m + 2 rho_max d_eff) <= D_ii <= m/(m + rho_min d_eff).
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool within_range = false;
  /// Residuals non-increasing from the fourth iteration on.
  bool monotone_tail = true;
};

/// Iterates D_ii <- m pi_i / (m pi_i + a_i^T (A^T D A + C)^{-1} a_i) from
/// D = m/(m + d_eff). Throws NoConvergence after max_iters sweeps.
FixedPointD solve_fixed_point_d(const DenseMatrix& a, const SymMatrix& c, const SamplingPlan& plan, std::size_t m,
                                const FixedPointOptions& options = {});

}  // namespace randskew
