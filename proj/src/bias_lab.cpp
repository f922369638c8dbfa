#include "randskew/bias_lab.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "randskew/errors.hpp"
#include "randskew/hadamard.hpp"
#include "randskew/parallel.hpp"
#include "randskew/rng.hpp"

namespace randskew {

std::string scheme_name(const SketchScheme& scheme) {
  if (const auto* plan = std::get_if<SamplingPlan>(&scheme)) return to_string(plan->kind);
  if (std::holds_alternative<SrhtScheme>(scheme)) return "srht";
  return "gaussian";
}

DenseMatrix gaussian_sketch(const DenseMatrix& a, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  CounterRng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  DenseMatrix out(m, a.cols());
  for (std::size_t r = 0; r < m; ++r) {
    auto dst = out.row(r);
    for (std::size_t j = 0; j < a.rows(); ++j) {
      const double s = scale * rng.normal();
      auto src = a.row(j);
      for (std::size_t k = 0; k < src.size(); ++k) dst[k] += s * src[k];
    }
  }
  return out;
}

namespace {

struct BatchSum {
  DenseMatrix sum;
  std::size_t kept = 0;
};

BatchSum add(BatchSum x, const BatchSum& y) {
  auto xs = x.sum.data();
  auto ys = y.sum.data();
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] += ys[k];
  x.kept += y.kept;
  return x;
}

// Sketched Gram (without C) for one trial.
SymMatrix trial_gram(const DenseMatrix& a, const SketchScheme& scheme, const DebiasSpec& debias, std::size_t m,
                     std::uint64_t seed) {
  if (const auto* plan = std::get_if<SamplingPlan>(&scheme)) {
    return sketched_gram(apply_debias(draw(*plan, m, seed), debias), a);
  }
  if (std::holds_alternative<SrhtScheme>(scheme)) {
    const SrhtDraw d = srht_draw(a.rows(), m, seed);
    return sketched_gram(apply_debias(d.sample, debias), hadamard_rotate(a, d.signs));
  }
  SymMatrix g = gram(gaussian_sketch(a, m, seed));
  if (debias.mode == DebiasMode::Scalar) g = *debias.factor * g;
  return g;
}

DenseMatrix to_mean(const BatchSum& s) {
  DenseMatrix out = s.sum;
  const double inv = 1.0 / static_cast<double>(s.kept);
  for (double& v : out.data()) v *= inv;
  return out;
}

}  // namespace

BiasEstimate estimate_bias(const DenseMatrix& a, const SymMatrix& c, const SketchScheme& scheme,
                           const DebiasSpec& debias, std::size_t m, std::size_t trials, std::uint64_t seed,
                           const BiasOptions& options) {
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  if (trials < 2) throw InvalidArgument("estimate_bias needs at least 2 trials");
  if (c.dim() != a.cols()) throw InvalidArgument("ShapeMismatch", "regularizer dimension differs from cols(A)");
  if (const auto* plan = std::get_if<SamplingPlan>(&scheme); plan && plan->size() != a.rows()) {
    throw InvalidArgument("ShapeMismatch", "plan size differs from rows(A)");
  }
  const bool fine = debias.mode == DebiasMode::FineGrainedExact || debias.mode == DebiasMode::FineGrainedApprox;
  if (fine && !std::holds_alternative<SamplingPlan>(scheme)) {
    throw InvalidArgument("fine-grained debiasing applies to row-sampling schemes only");
  }
  if (options.batch == 0) throw InvalidArgument("batch size must be positive");

  const std::size_t d = a.cols();
  const SymMatrix h = gram(a) + c;
  const SymMatrix h_inv = cholesky(h).inverse();
  const SymMatrix h_half = sqrt_psd(h);

  const std::size_t batches = (trials + options.batch - 1) / options.batch;
  std::vector<BatchSum> sums(batches);
  parallel_for(batches, options.threads, [&](std::size_t b) {
    BatchSum s{DenseMatrix(d, d), 0};
    const std::size_t end = std::min(trials, (b + 1) * options.batch);
    for (std::size_t t = b * options.batch; t < end; ++t) {
      const SymMatrix g = trial_gram(a, scheme, debias, m, derive_seed(seed, t)) + c;
      std::optional<LowerTriangularFactor> l;
      try {
        l.emplace(cholesky(g));
      } catch (const NotPositiveDefinite&) {
        continue;
      }
      const SymMatrix q = l->inverse();
      auto dst = s.sum.data();
      auto src = q.dense().data();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
      ++s.kept;
    }
    sums[b] = std::move(s);
  });

  const BatchSum total = tree_reduce(sums, add);
  if (total.kept == 0) throw NumericalError("AllTrialsSingular", "every sketched Gram was singular");

  auto bias_of = [&](const DenseMatrix& mean) {
    return spectral_norm(congruence(make_symmetric_unchecked(mean) - h_inv, h_half));
  };

  BiasEstimate out;
  out.scheme = scheme_name(scheme);
  out.debias_mode = debias.mode;
  out.m = m;
  out.trials = trials;
  out.discarded = trials - total.kept;
  out.mean_inverse = make_symmetric_unchecked(to_mean(total));
  out.bias = bias_of(out.mean_inverse.dense());
  out.eps_def5 = psd_relative_error(out.mean_inverse, h_inv);

  // Leave-one-batch-out jackknife of the bias functional.
  std::vector<double> loo;
  for (std::size_t b = 0; b < batches; ++b) {
    if (total.kept == sums[b].kept) continue;
    BatchSum rest = total;
    auto rs = rest.sum.data();
    auto bs = sums[b].sum.data();
    for (std::size_t k = 0; k < rs.size(); ++k) rs[k] -= bs[k];
    rest.kept -= sums[b].kept;
    loo.push_back(bias_of(to_mean(rest)));
  }
  if (loo.size() < 2) {
    out.stderr_proxy = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double k = static_cast<double>(loo.size());
    double mean = 0.0;
    for (double v : loo) mean += v;
    mean /= k;
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    out.stderr_proxy = std::sqrt((k - 1.0) / k * ss);
  }
  return out;
}

DebiasSpec make_debias(const SketchScheme& scheme, DebiasMode mode, std::size_t m,
                       std::span<const double> exact_scores) {
  const auto* plan = std::get_if<SamplingPlan>(&scheme);
  switch (mode) {
    case DebiasMode::None:
      return DebiasSpec::none();
    case DebiasMode::Scalar:
      return DebiasSpec::scalar(m, plan ? plan->d_eff : effective_dimension(exact_scores));
    case DebiasMode::FineGrainedExact:
      if (!plan) throw InvalidArgument("fine-grained debiasing applies to row-sampling schemes only");
      return DebiasSpec::fine_grained(*plan, exact_scores, m);
    case DebiasMode::FineGrainedApprox:
      if (!plan || !plan->scores) {
        throw InvalidArgument("approximate fine-grained debiasing needs a leverage-based plan");
      }
      return DebiasSpec::fine_grained_approx(*plan, *plan->scores, m);
  }
  return DebiasSpec::none();
}

std::uint64_t sweep_cell_seed(std::uint64_t seed, std::size_t scheme_index, std::size_t m_index) {
  return derive_seed(derive_seed(seed, scheme_index), m_index);
}

std::vector<BiasEstimate> bias_sweep(const DenseMatrix& a, const SymMatrix& c, const std::vector<SketchScheme>& schemes,
                                     const std::vector<DebiasMode>& modes, const std::vector<std::size_t>& m_grid,
                                     std::size_t trials, std::uint64_t seed, const BiasOptions& options) {
  if (m_grid.empty()) throw InvalidArgument("m grid must be nonempty");
  for (std::size_t k = 1; k < m_grid.size(); ++k) {
    if (m_grid[k] <= m_grid[k - 1]) throw InvalidArgument("m grid must be strictly ascending");
  }
  const auto exact = exact_leverage_scores(a, c);
  std::vector<BiasEstimate> rows;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    for (std::size_t j = 0; j < m_grid.size(); ++j) {
      const std::uint64_t cell = sweep_cell_seed(seed, s, j);
      for (DebiasMode mode : modes) {
        const DebiasSpec spec = make_debias(schemes[s], mode, m_grid[j], exact);
        rows.push_back(estimate_bias(a, c, schemes[s], spec, m_grid[j], trials, cell, options));
      }
    }
  }
  return rows;
}

}  // namespace randskew
