#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randskew/linalg.hpp"

namespace randskew {

enum class PlanKind { Uniform, RowNorm, ExactLeverage, ApproxLeverage, DoubleSketchApproxLeverage, Shrinkage };

std::string to_string(PlanKind kind);

/// Sparse Johnson-Lindenstrauss sketch settings used for approximate leverage.
struct SjltOptions {
  std::size_t m1 = 0;                 // 0 selects 8 * cols(A)
  std::optional<std::size_t> m2;      // double-sketch width; unset selects ceil(8 log n)
  std::size_t sparsity = 4;           // nonzeros per column of the sketch
};

struct PlanParams {
  double mix = 0.5;                   // Shrinkage: weight on the uniform part
  bool shrinkage_uses_approx = false; // Shrinkage: leverage part from SJLT scores
  SjltOptions sjlt;
  std::uint64_t seed = 0;             // only consumed by the approximate kinds
};

/// Importance-sampling distribution over the rows of A.
struct SamplingPlan {
  PlanKind kind = PlanKind::Uniform;
  double mix = 0.0;
  std::vector<double> probs;
  /// Leverage scores the distribution was built from (leverage-based kinds).
  std::optional<std::vector<double>> scores;
  /// Sum of `scores` when present, otherwise the exact effective dimension.
  double d_eff = 0.0;

  std::size_t size() const noexcept { return probs.size(); }
  /// True when probs == scores / d_eff by construction.
  bool proportional_to_scores() const noexcept;
};

struct ApproxFactors {
  double rho_min = 1.0;
  double rho_max = 1.0;
  std::size_t argmax_index = 0;
};

/// m row indices drawn with replacement plus the per-slot row scale.
struct SketchDraw {
  std::vector<std::size_t> indices;
  std::vector<double> weights;

  std::size_t m() const noexcept { return indices.size(); }
};

/// l_i = a_i^T (A^T A + C)^{-1} a_i.
std::vector<double> exact_leverage_scores(const DenseMatrix& a, const SymMatrix& c);
double effective_dimension(std::span<const double> scores);

/// S1 A for an m1 x n SJLT S1 with `sparsity` nonzeros (+-1/sqrt(s)) per column.
DenseMatrix sjlt_apply(const DenseMatrix& a, std::size_t m1, std::size_t sparsity, std::uint64_t seed);

/// Leverage scores of A measured through a sketched Gram: rows of
/// A (SA^T SA + C)^{-1/2}, optionally post-multiplied by an m2-column SJLT.
/// Passing `sketched = A` recovers the exact scores.
std::vector<double> sketched_leverage_scores(const DenseMatrix& a, const SymMatrix& c, const DenseMatrix& sketched,
                                             std::optional<std::size_t> m2, std::size_t sparsity,
                                             std::uint64_t seed);

std::vector<double> sjlt_approx_leverage(const DenseMatrix& a, const SymMatrix& c, std::size_t m1,
                                         std::optional<std::size_t> m2, std::uint64_t seed,
                                         std::size_t sparsity = 4);

SamplingPlan build_plan(PlanKind kind, const DenseMatrix& a, const SymMatrix& c, const PlanParams& params = {});

ApproxFactors approximation_factors(const SamplingPlan& plan, std::span<const double> exact_scores);

/// Inverse-CDF sampling; weights[s] = 1 / sqrt(m * pi_{indices[s]}).
SketchDraw draw(const SamplingPlan& plan, std::size_t m, std::uint64_t seed);

/// Row s of the result is weights[s] * a_{indices[s]}.
DenseMatrix apply_sketch(const SketchDraw& draw, const DenseMatrix& a);

/// Sum_s weights[s]^2 a_{i_s} a_{i_s}^T, without forming the sketch.
SymMatrix sketched_gram(const SketchDraw& draw, const DenseMatrix& a);

}  // namespace randskew
