#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "randskew/debias.hpp"
#include "randskew/objective.hpp"
#include "randskew/sampling.hpp"

namespace randskew {

enum class StepRule { Theorem, Armijo, Fixed };

std::string to_string(StepRule rule);

struct StepRuleSpec {
  StepRule rule = StepRule::Armijo;
  double mu = 1.0;  // Fixed only
};

struct ArmijoOptions {
  double c1 = 1e-4;
  double shrink = 0.5;
  std::size_t max_halvings = 40;
};

/// Step length along -direction. Returns 0 when no trial step satisfies the
/// sufficient-decrease condition, and 1 when the directional slope is already
/// at the rounding level of f.
double armijo_step(const GlmProblem& p, std::span<const double> beta, double value, std::span<const double> gradient,
                   std::span<const double> direction, const ArmijoOptions& options = {});

enum class SketchKind { Sampling, Srht };

struct SsnConfig {
  SketchKind sketch = SketchKind::Sampling;
  PlanKind plan = PlanKind::ExactLeverage;
  PlanParams plan_params;  // plan_params.seed is replaced per step
  std::size_t m = 0;
  DebiasMode debias = DebiasMode::Scalar;
  StepRuleSpec step;
  /// Test path: use this draw of the Hessian factor rows instead of sampling.
  std::optional<SketchDraw> fixed_draw;
};

/// rho_min/rho_max are NaN unless the step needed them (theorem rule or exact
/// fine-grained debiasing); d_eff then comes from the plan's scores.
struct SsnDiagnostics {
  double step_size = 0.0;
  double d_eff = 0.0;
  double rho_min = 1.0;
  double rho_max = 1.0;
  std::size_t m = 0;
};

struct SsnStep {
  std::vector<double> beta_next;
  SsnDiagnostics diagnostics;
};

/// One sub-sampled Newton step from beta_t. Theorem step size:
/// mu = 1 - rho_max / (m / d_eff + rho_max) with the current iteration's factors.
SsnStep ssn_step(const GlmProblem& p, std::span<const double> beta_t, const SsnConfig& config, std::uint64_t seed);

/// Row s is sqrt(n / (m nnz)) * sum over nnz distinct rows j of +-a_j, so
/// E[S^T S] = I.
DenseMatrix sparse_rademacher_sketch(const DenseMatrix& a, std::size_t m, std::size_t nnz_per_row,
                                     std::uint64_t seed);

struct GdConfig {
  double lr = 1.0;
};
/// One epoch of shuffled minibatches per iteration.
struct SgdConfig {
  double lr = 0.1;
  std::size_t batch = 32;
};
struct NewtonExactConfig {
  bool line_search = true;
};
/// Newton with the Hessian data term replaced by a sparse Rademacher sketch.
/// The theorem rule uses rho_max = 1.
struct SparseProjConfig {
  std::size_t m = 0;
  std::size_t nnz = 4;
  StepRuleSpec step;
};

using Method = std::variant<GdConfig, SgdConfig, NewtonExactConfig, SsnConfig, SparseProjConfig>;

std::string method_name(const Method& method);

struct IterRecord {
  std::size_t t = 0;
  double rel_error_H = 0.0;
  double grad_norm = 0.0;
  double step_size = 0.0;
  std::uint64_t wall_ns = 0;
};

struct RunTrace {
  std::string method;
  std::vector<IterRecord> records;
  std::vector<double> beta;
  std::optional<std::vector<double>> reference;
};

struct RunOptions {
  bool timing = true;  // false writes wall_ns = 0
  /// Stop early once the gradient norm falls below this value.
  double grad_tol = 0.0;
};

/// rel_error_H is ||beta_t - beta*||^2_H / ||beta_0 - beta*||^2_H with H the
/// Hessian at beta*; NaN when no reference is given. Iteration t uses
/// derive_seed(seed, t) for its randomness.
RunTrace run_solver(const GlmProblem& p, const Method& method, std::span<const double> beta0, std::size_t iters,
                    const std::optional<std::vector<double>>& reference, std::uint64_t seed,
                    const RunOptions& options = {});

RunTrace newton_exact(const GlmProblem& p, std::span<const double> beta0, std::size_t iters, bool line_search,
                      const std::optional<std::vector<double>>& reference = std::nullopt,
                      const RunOptions& options = {});

struct Reference {
  std::vector<double> beta;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
};

/// Damped exact Newton from zero until ||grad|| < grad_tol; NoConvergence otherwise.
Reference reference_solution(const GlmProblem& p, double grad_tol = 1e-12, std::size_t max_iters = 200);

/// ||x||^2_H.
double h_norm_sq(const SymMatrix& h, std::span<const double> x);

}  // namespace randskew
