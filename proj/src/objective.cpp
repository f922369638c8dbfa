#include "randskew/objective.hpp"

#include <cmath>

#include "randskew/errors.hpp"

namespace randskew {

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::Logistic ? "logistic" : "least_squares";
}

void GlmProblem::validate() const {
  if (a.rows() == 0 || a.cols() == 0) throw InvalidArgument("EmptyMatrix", "problem matrix is empty");
  if (y.size() != a.rows()) throw InvalidArgument("ShapeMismatch", "label count differs from rows(A)");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be finite and >= 0");
  if (kind == ProblemKind::Logistic) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != 1.0 && y[i] != -1.0) {
        throw IoError("LabelDomainError", "logistic label at row " + std::to_string(i) + " is not +-1");
      }
    }
  }
}

namespace {

// log(1 + exp(-z)) without overflow.
double softplus_neg(double z) { return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z)); }

// 1 / (1 + exp(z)).
double sigmoid_neg(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

void check_beta(const GlmProblem& p, std::span<const double> beta) {
  if (beta.size() != p.d()) throw InvalidArgument("ShapeMismatch", "beta length differs from cols(A)");
}

double regularizer_value(const GlmProblem& p, std::span<const double> beta) {
  return 0.5 * p.lambda * dot(beta, beta);
}

}  // namespace

ObjectiveEval objective_eval(const GlmProblem& p, std::span<const double> beta) {
  check_beta(p, beta);
  const std::size_t n = p.n();
  const std::size_t d = p.d();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  ObjectiveEval out;
  out.gradient.assign(d, 0.0);
  out.hessian_sqrt = DenseMatrix(n, d);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto ai = p.a.row(i);
    const double t = dot(ai, beta);
    double coef;   // d loss_i / d (a_i^T beta)
    double curv;   // d^2 loss_i / d (a_i^T beta)^2
    if (p.kind == ProblemKind::Logistic) {
      const double z = p.y[i] * t;
      loss += softplus_neg(z);
      const double s_neg = sigmoid_neg(z);
      coef = -p.y[i] * s_neg;
      curv = s_neg * sigmoid_neg(-z);
    } else {
      const double r = t - p.y[i];
      loss += 0.5 * r * r;
      coef = r;
      curv = 1.0;
    }
    for (std::size_t k = 0; k < d; ++k) out.gradient[k] += coef * ai[k];
    const double scale = std::sqrt(curv) * inv_sqrt_n;
    auto hi = out.hessian_sqrt.row(i);
    for (std::size_t k = 0; k < d; ++k) hi[k] = scale * ai[k];
  }
  out.value = loss * inv_n + regularizer_value(p, beta);
  for (std::size_t k = 0; k < d; ++k) out.gradient[k] = out.gradient[k] * inv_n + p.lambda * beta[k];
  return out;
}

double objective_value(const GlmProblem& p, std::span<const double> beta) {
  check_beta(p, beta);
  double loss = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double t = dot(p.a.row(i), beta);
    if (p.kind == ProblemKind::Logistic) {
      loss += softplus_neg(p.y[i] * t);
    } else {
      const double r = t - p.y[i];
      loss += 0.5 * r * r;
    }
  }
  return loss / static_cast<double>(p.n()) + regularizer_value(p, beta);
}

std::vector<double> minibatch_gradient(const GlmProblem& p, std::span<const double> beta,
                                       std::span<const std::size_t> rows) {
  check_beta(p, beta);
  if (rows.empty()) throw InvalidArgument("minibatch must be nonempty");
  const std::size_t d = p.d();
  std::vector<double> g(d, 0.0);
  for (std::size_t i : rows) {
    auto ai = p.a.row(i);
    const double t = dot(ai, beta);
    const double coef = p.kind == ProblemKind::Logistic ? -p.y[i] * sigmoid_neg(p.y[i] * t) : t - p.y[i];
    for (std::size_t k = 0; k < d; ++k) g[k] += coef * ai[k];
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (std::size_t k = 0; k < d; ++k) g[k] = g[k] * inv + p.lambda * beta[k];
  return g;
}

std::vector<double> objective_gradient(const GlmProblem& p, std::span<const double> beta) {
  return objective_eval(p, beta).gradient;
}

SymMatrix hessian(const GlmProblem& p, std::span<const double> beta) {
  return gram(objective_eval(p, beta).hessian_sqrt) + p.regularizer();
}

}  // namespace randskew
