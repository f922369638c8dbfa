#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "randskew/linalg.hpp"

namespace randskew {

enum class ProblemKind { Logistic, LeastSquares };

std::string to_string(ProblemKind kind);

/// f(beta) = (1/n) sum_i loss_i(beta) + (lambda/2) ||beta||^2, so C = lambda I.
///   Logistic:      loss_i = log(1 + exp(-y_i a_i^T beta)), y_i in {-1, +1}
///   LeastSquares:  loss_i = (a_i^T beta - y_i)^2 / 2
struct GlmProblem {
  DenseMatrix a;
  std::vector<double> y;
  double lambda = 0.0;
  ProblemKind kind = ProblemKind::Logistic;

  std::size_t n() const noexcept { return a.rows(); }
  std::size_t d() const noexcept { return a.cols(); }
  /// Throws on shape mismatch, negative lambda or (LabelDomainError) labels
  /// outside {-1, +1} for logistic problems.
  void validate() const;
  SymMatrix regularizer() const { return SymMatrix::identity(d(), lambda); }
};

struct ObjectiveEval {
  double value = 0.0;
  std::vector<double> gradient;
  /// Rows A(beta) with A(beta)^T A(beta) + lambda I the Hessian.
  DenseMatrix hessian_sqrt;
};

ObjectiveEval objective_eval(const GlmProblem& p, std::span<const double> beta);
double objective_value(const GlmProblem& p, std::span<const double> beta);
std::vector<double> objective_gradient(const GlmProblem& p, std::span<const double> beta);
/// Gradient of the minibatch objective (1/|rows|) sum_{i in rows} loss_i + regularizer.
std::vector<double> minibatch_gradient(const GlmProblem& p, std::span<const double> beta,
                                       std::span<const std::size_t> rows);
SymMatrix hessian(const GlmProblem& p, std::span<const double> beta);

}  // namespace randskew
