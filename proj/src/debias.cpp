#include "randskew/debias.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "randskew/errors.hpp"

namespace randskew {

std::string to_string(DebiasMode mode) {
  switch (mode) {
    case DebiasMode::None: return "none";
    case DebiasMode::Scalar: return "scalar";
    case DebiasMode::FineGrainedExact: return "fine";
    case DebiasMode::FineGrainedApprox: return "fine_approx";
  }
  return "unknown";
}

double scalar_factor(std::size_t m, double d_eff) {
  const double md = static_cast<double>(m);
  if (!(md > d_eff)) {
    throw SketchTooSmall("m=" + std::to_string(m) + " must exceed d_eff=" + std::to_string(d_eff));
  }
  return md / (md - d_eff);
}

namespace {

std::vector<double> row_multipliers(const SamplingPlan& plan, std::span<const double> scores, std::size_t m) {
  if (scores.size() != plan.size()) throw InvalidArgument("ShapeMismatch", "score count differs from plan size");
  const double md = static_cast<double>(m);
  const bool proportional = plan.proportional_to_scores();
  std::vector<double> out(scores.size(), 1.0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = plan.probs[i];
    const double l = scores[i];
    if (l == 0.0 || p == 0.0) continue;
    const double ratio = proportional ? plan.d_eff * (l / (*plan.scores)[i]) : l / p;
    if (!(md > ratio)) {
      throw SketchTooSmall("row " + std::to_string(i) + ": m=" + std::to_string(m) +
                           " does not exceed l_i/pi_i=" + std::to_string(ratio));
    }
    out[i] = std::sqrt(md / (md - ratio));
  }
  return out;
}

}  // namespace

std::vector<double> fine_grained_weights(const SamplingPlan& plan, std::span<const double> scores, std::size_t m) {
  return row_multipliers(plan, scores, m);
}

std::vector<double> approx_fine_grained_weights(const SamplingPlan& plan, std::span<const double> approx_scores,
                                                std::size_t m) {
  return row_multipliers(plan, approx_scores, m);
}

DebiasSpec DebiasSpec::scalar(std::size_t m, double d_eff) {
  DebiasSpec s;
  s.mode = DebiasMode::Scalar;
  s.factor = scalar_factor(m, d_eff);
  return s;
}

DebiasSpec DebiasSpec::with_factor(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("debias factor must be positive and finite");
  DebiasSpec s;
  s.mode = DebiasMode::Scalar;
  s.factor = factor;
  return s;
}

DebiasSpec DebiasSpec::fine_grained(const SamplingPlan& plan, std::span<const double> scores, std::size_t m) {
  DebiasSpec s;
  s.mode = DebiasMode::FineGrainedExact;
  s.row_weights = fine_grained_weights(plan, scores, m);
  return s;
}

DebiasSpec DebiasSpec::fine_grained_approx(const SamplingPlan& plan, std::span<const double> approx_scores,
                                           std::size_t m, double omega_hint) {
  DebiasSpec s;
  s.mode = DebiasMode::FineGrainedApprox;
  s.row_weights = approx_fine_grained_weights(plan, approx_scores, m);
  s.omega_hint = omega_hint;
  return s;
}

SketchDraw apply_debias(SketchDraw draw, const DebiasSpec& spec) {
  switch (spec.mode) {
    case DebiasMode::None:
      break;
    case DebiasMode::Scalar: {
      const double r = std::sqrt(spec.factor.value());
      for (double& w : draw.weights) w *= r;
      break;
    }
    case DebiasMode::FineGrainedExact:
    case DebiasMode::FineGrainedApprox: {
      const auto& mult = spec.row_weights.value();
      for (std::size_t s = 0; s < draw.m(); ++s) draw.weights[s] *= mult.at(draw.indices[s]);
      break;
    }
  }
  return draw;
}

FixedPointD solve_fixed_point_d(const DenseMatrix& a, const SymMatrix& c, const SamplingPlan& plan, std::size_t m,
                                const FixedPointOptions& options) {
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  if (plan.size() != a.rows()) throw InvalidArgument("ShapeMismatch", "plan size differs from rows(A)");
  const std::size_t n = a.rows();
  const double md = static_cast<double>(m);

  const auto exact = exact_leverage_scores(a, c);
  const double d_eff = effective_dimension(exact);

  FixedPointD out;
  try {
    const auto f = approximation_factors(plan, exact);
    out.lower_bound = md / (md + 2.0 * f.rho_max * d_eff);
    out.upper_bound = md / (md + f.rho_min * d_eff);
  } catch (const NumericalError&) {
    out.lower_bound = std::numeric_limits<double>::quiet_NaN();
    out.upper_bound = std::numeric_limits<double>::quiet_NaN();
  }

  std::vector<double> d(n, md / (md + d_eff));
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    const DenseMatrix z = cholesky(weighted_gram(a, d) + c).whiten_rows(a);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = dot(z.row(i), z.row(i));
      const double mp = md * plan.probs[i];
      if (q == 0.0) {
        next[i] = 1.0;
      } else {
        next[i] = mp / (mp + q);
      }
      change = std::max(change, std::abs(next[i] - d[i]));
    }
    d.swap(next);
    out.residual_history.push_back(change);
    if (it > 3 && change > out.residual_history[it - 2]) out.monotone_tail = false;
    if (change < options.tol) {
      out.iterations = it;
      out.residual = change;
      out.diag = std::move(d);
      out.within_range = !std::isnan(out.lower_bound);
      if (out.within_range) {
        // A few ulps of slack: the extremes are attained by exact-leverage plans.
        const double slack = 1e-12;
        for (double v : out.diag) {
          if (v < out.lower_bound - slack || v > out.upper_bound + slack) out.within_range = false;
        }
      }
      return out;
    }
  }
  throw NoConvergence(options.max_iters, "fixed-point residual " + std::to_string(out.residual_history.back()));
}

}  // namespace randskew
