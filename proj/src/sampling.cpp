#include "randskew/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "randskew/errors.hpp"
#include "randskew/rng.hpp"

namespace randskew {

std::string to_string(PlanKind kind) {
  switch (kind) {
    case PlanKind::Uniform: return "uniform";
    case PlanKind::RowNorm: return "rownorm";
    case PlanKind::ExactLeverage: return "rlev";
    case PlanKind::ApproxLeverage: return "arlev";
    case PlanKind::DoubleSketchApproxLeverage: return "darlev";
    case PlanKind::Shrinkage: return "shrinkage";
  }
  return "unknown";
}

bool SamplingPlan::proportional_to_scores() const noexcept {
  return scores.has_value() && (kind == PlanKind::ExactLeverage || kind == PlanKind::ApproxLeverage ||
                                kind == PlanKind::DoubleSketchApproxLeverage);
}

std::vector<double> exact_leverage_scores(const DenseMatrix& a, const SymMatrix& c) {
  if (c.dim() != a.cols()) throw InvalidArgument("ShapeMismatch", "regularizer dimension differs from cols(A)");
  const auto factor = cholesky(gram(a) + c);
  const DenseMatrix z = factor.whiten_rows(a);
  std::vector<double> scores(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto zi = z.row(i);
    scores[i] = dot(zi, zi);
  }
  return scores;
}

double effective_dimension(std::span<const double> scores) {
  double s = 0.0;
  for (double v : scores) s += v;
  return s;
}

namespace {

// `count` distinct values in [0, range), in draw order.
void distinct_rows(CounterRng& rng, std::size_t range, std::size_t count, std::vector<std::size_t>& out) {
  out.clear();
  while (out.size() < count) {
    const auto r = static_cast<std::size_t>(rng.below(range));
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
}

}  // namespace

DenseMatrix sjlt_apply(const DenseMatrix& a, std::size_t m1, std::size_t sparsity, std::uint64_t seed) {
  if (m1 == 0) throw InvalidArgument("sketch size must be positive");
  const std::size_t s = std::clamp<std::size_t>(sparsity, 1, m1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(s));
  CounterRng rng(seed);
  DenseMatrix out(m1, a.cols());
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < a.rows(); ++j) {
    distinct_rows(rng, m1, s, rows);
    auto aj = a.row(j);
    for (std::size_t r : rows) {
      const double v = rng.rademacher() * scale;
      auto orow = out.row(r);
      for (std::size_t k = 0; k < aj.size(); ++k) orow[k] += v * aj[k];
    }
  }
  return out;
}

std::vector<double> sketched_leverage_scores(const DenseMatrix& a, const SymMatrix& c, const DenseMatrix& sketched,
                                             std::optional<std::size_t> m2, std::size_t sparsity,
                                             std::uint64_t seed) {
  if (sketched.cols() != a.cols() || c.dim() != a.cols()) {
    throw InvalidArgument("ShapeMismatch", "sketch, regularizer and A disagree on column count");
  }
  const SymMatrix g = gram(sketched) + c;
  std::vector<double> scores(a.rows());
  if (!m2) {
    const DenseMatrix z = cholesky(g).whiten_rows(a);
    for (std::size_t i = 0; i < a.rows(); ++i) scores[i] = dot(z.row(i), z.row(i));
    return scores;
  }

  const std::size_t d = a.cols();
  const std::size_t width = *m2;
  if (width == 0) throw InvalidArgument("second sketch width must be positive");
  const SymMatrix root = inv_sqrt(g);
  // Columns of root * S2^T, with S2 an m2 x d SJLT.
  const std::size_t s = std::clamp<std::size_t>(sparsity, 1, width);
  const double scale = 1.0 / std::sqrt(static_cast<double>(s));
  CounterRng rng(derive_seed(seed, 2));
  DenseMatrix projected(d, width);
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < d; ++j) {
    distinct_rows(rng, width, s, rows);
    for (std::size_t r : rows) {
      const double v = rng.rademacher() * scale;
      for (std::size_t k = 0; k < d; ++k) projected(k, r) += v * root(k, j);
    }
  }
  const DenseMatrix y = matmul(a, projected);
  for (std::size_t i = 0; i < a.rows(); ++i) scores[i] = dot(y.row(i), y.row(i));
  return scores;
}

std::vector<double> sjlt_approx_leverage(const DenseMatrix& a, const SymMatrix& c, std::size_t m1,
                                         std::optional<std::size_t> m2, std::uint64_t seed, std::size_t sparsity) {
  if (m1 < a.cols()) {
    throw SketchTooSmall("SJLT size m1=" + std::to_string(m1) + " is below cols(A)=" + std::to_string(a.cols()));
  }
  if (m2 && *m2 >= m1) throw InvalidArgument("second sketch width m2 must be smaller than m1");
  const DenseMatrix sketched = sjlt_apply(a, m1, sparsity, derive_seed(seed, 1));
  return sketched_leverage_scores(a, c, sketched, m2, sparsity, seed);
}

namespace {

std::vector<double> normalized(std::span<const double> weights, double total) {
  std::vector<double> p(weights.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = weights[i] / total;
  return p;
}

std::vector<double> approx_scores_for(const DenseMatrix& a, const SymMatrix& c, const PlanParams& params,
                                      bool double_sketch) {
  const SjltOptions& o = params.sjlt;
  const std::size_t m1 = o.m1 == 0 ? 8 * a.cols() : o.m1;
  std::optional<std::size_t> m2;
  if (double_sketch) {
    m2 = o.m2 ? *o.m2
              : static_cast<std::size_t>(std::ceil(8.0 * std::log(static_cast<double>(std::max<std::size_t>(a.rows(), 2)))));
    if (*m2 >= m1) m2 = m1 - 1;
  }
  return sjlt_approx_leverage(a, c, m1, m2, params.seed, o.sparsity);
}

}  // namespace

SamplingPlan build_plan(PlanKind kind, const DenseMatrix& a, const SymMatrix& c, const PlanParams& params) {
  const std::size_t n = a.rows();
  if (n == 0) throw InvalidArgument("EmptyMatrix", "cannot build a sampling plan for an empty matrix");
  SamplingPlan plan;
  plan.kind = kind;

  auto from_scores = [&](std::vector<double> scores) {
    const double total = effective_dimension(scores);
    if (!(total > 0.0)) throw NumericalError("AllZeroRows", "all leverage scores are zero");
    plan.probs = normalized(scores, total);
    plan.d_eff = total;
    plan.scores = std::move(scores);
  };

  switch (kind) {
    case PlanKind::Uniform:
      plan.probs.assign(n, 1.0 / static_cast<double>(n));
      plan.d_eff = effective_dimension(exact_leverage_scores(a, c));
      break;
    case PlanKind::RowNorm: {
      std::vector<double> norms(n);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        norms[i] = dot(a.row(i), a.row(i));
        total += norms[i];
      }
      if (!(total > 0.0)) throw NumericalError("AllZeroRows", "row-norm sampling on a zero matrix");
      plan.probs = normalized(norms, total);
      plan.d_eff = effective_dimension(exact_leverage_scores(a, c));
      break;
    }
    case PlanKind::ExactLeverage:
      from_scores(exact_leverage_scores(a, c));
      break;
    case PlanKind::ApproxLeverage:
      from_scores(approx_scores_for(a, c, params, false));
      break;
    case PlanKind::DoubleSketchApproxLeverage:
      from_scores(approx_scores_for(a, c, params, true));
      break;
    case PlanKind::Shrinkage: {
      if (!(params.mix >= 0.0 && params.mix <= 1.0)) throw InvalidArgument("shrinkage mix must lie in [0, 1]");
      from_scores(params.shrinkage_uses_approx ? approx_scores_for(a, c, params, false) : exact_leverage_scores(a, c));
      const double uniform = params.mix / static_cast<double>(n);
      for (double& p : plan.probs) p = uniform + (1.0 - params.mix) * p;
      plan.mix = params.mix;
      break;
    }
  }
  return plan;
}

ApproxFactors approximation_factors(const SamplingPlan& plan, std::span<const double> exact_scores) {
  if (exact_scores.size() != plan.size()) throw InvalidArgument("ShapeMismatch", "score count differs from plan size");
  const double d_eff = effective_dimension(exact_scores);
  if (!(d_eff > 0.0)) throw InvalidArgument("effective dimension must be positive");

  // For leverage plans pi_i = s_i / d_plan, so l_i / (pi_i d_eff) is evaluated
  // as (l_i / s_i) * (d_plan / d_eff): exact leverage plans then give 1 exactly.
  const bool proportional = plan.proportional_to_scores();
  ApproxFactors f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const double l = exact_scores[i];
    const double p = plan.probs[i];
    if (l == 0.0 && p == 0.0) continue;
    if (p == 0.0) {
      throw NumericalError("ZeroProbabilityWithPositiveScore",
                           "row " + std::to_string(i) + " has positive leverage but zero probability");
    }
    const double ratio =
        proportional ? (l / (*plan.scores)[i]) * (plan.d_eff / d_eff) : l / (p * d_eff);
    if (ratio < f.rho_min) f.rho_min = ratio;
    if (ratio > f.rho_max) {
      f.rho_max = ratio;
      f.argmax_index = i;
    }
  }
  return f;
}

SketchDraw draw(const SamplingPlan& plan, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  const std::size_t n = plan.size();
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += plan.probs[i];
    cdf[i] = acc;
  }
  CounterRng rng(seed);
  SketchDraw out;
  out.indices.resize(m);
  out.weights.resize(m);
  const double md = static_cast<double>(m);
  for (std::size_t s = 0; s < m; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = it == cdf.end() ? n - 1 : static_cast<std::size_t>(it - cdf.begin());
    while (plan.probs[idx] == 0.0 && idx > 0) --idx;
    out.indices[s] = idx;
    out.weights[s] = 1.0 / std::sqrt(md * plan.probs[idx]);
  }
  return out;
}

DenseMatrix apply_sketch(const SketchDraw& draw, const DenseMatrix& a) {
  DenseMatrix out(draw.m(), a.cols());
  for (std::size_t s = 0; s < draw.m(); ++s) {
    const std::size_t i = draw.indices[s];
    if (i >= a.rows()) {
      throw InvalidArgument("IndexOutOfRange", "sampled index " + std::to_string(i) + " >= rows(A)");
    }
    auto src = a.row(i);
    auto dst = out.row(s);
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = draw.weights[s] * src[k];
  }
  return out;
}

SymMatrix sketched_gram(const SketchDraw& draw, const DenseMatrix& a) {
  const std::size_t d = a.cols();
  DenseMatrix g(d, d);
  for (std::size_t s = 0; s < draw.m(); ++s) {
    const std::size_t i = draw.indices[s];
    if (i >= a.rows()) {
      throw InvalidArgument("IndexOutOfRange", "sampled index " + std::to_string(i) + " >= rows(A)");
    }
    const double w2 = draw.weights[s] * draw.weights[s];
    auto ar = a.row(i);
    for (std::size_t p = 0; p < d; ++p) {
      const double v = w2 * ar[p];
      if (v == 0.0) continue;
      auto gp = g.row(p);
      for (std::size_t q = p; q < d; ++q) gp[q] += v * ar[q];
    }
  }
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < p; ++q) g(p, q) = g(q, p);
  return make_symmetric_unchecked(std::move(g));
}

}  // namespace randskew
