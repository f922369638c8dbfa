#include "randskew/optim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "randskew/bias_lab.hpp"
#include "randskew/errors.hpp"
#include "randskew/hadamard.hpp"
#include "randskew/rng.hpp"

namespace randskew {

std::string to_string(StepRule rule) {
  switch (rule) {
    case StepRule::Theorem: return "theorem";
    case StepRule::Armijo: return "armijo";
    case StepRule::Fixed: return "fixed";
  }
  return "unknown";
}

double h_norm_sq(const SymMatrix& h, std::span<const double> x) {
  const auto hx = matvec(h, x);
  return dot(x, hx);
}

namespace {

std::vector<double> axpy(std::span<const double> x, double alpha, std::span<const double> dir) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= alpha * dir[k];
  return out;
}

double theorem_mu(double m, double d_eff, double rho_max) { return 1.0 - rho_max / (m / d_eff + rho_max); }

double pick_step(const GlmProblem& p, std::span<const double> beta, const ObjectiveEval& ev,
                 std::span<const double> dir, const StepRuleSpec& rule, double theorem) {
  switch (rule.rule) {
    case StepRule::Theorem: return theorem;
    case StepRule::Fixed: return rule.mu;
    case StepRule::Armijo: return armijo_step(p, beta, ev.value, ev.gradient, dir);
  }
  return 0.0;
}

}  // namespace

double armijo_step(const GlmProblem& p, std::span<const double> beta, double value, std::span<const double> gradient,
                   std::span<const double> direction, const ArmijoOptions& options) {
  const double slope = dot(gradient, direction);
  if (!(slope > 0.0)) return 0.0;
  // Below this the predicted decrease is lost in the rounding of f and the
  // test can no longer tell steps apart; take the unit step.
  if (slope <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(value))) return 1.0;
  double mu = 1.0;
  for (std::size_t k = 0; k <= options.max_halvings; ++k) {
    const auto trial = axpy(beta, mu, direction);
    if (objective_value(p, trial) <= value - options.c1 * mu * slope) return mu;
    mu *= options.shrink;
  }
  return 0.0;
}

SsnStep ssn_step(const GlmProblem& p, std::span<const double> beta_t, const SsnConfig& config, std::uint64_t seed) {
  if (p.lambda <= 0.0) throw InvalidArgument("sub-sampled Newton needs lambda > 0");
  const ObjectiveEval ev = objective_eval(p, beta_t);
  const DenseMatrix& ah = ev.hessian_sqrt;
  const SymMatrix c = p.regularizer();
  const std::size_t m = config.fixed_draw ? config.fixed_draw->m() : config.m;
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  const double md = static_cast<double>(m);

  SsnDiagnostics diag;
  diag.m = m;
  SymMatrix h_hat;
  if (config.sketch == SketchKind::Sampling) {
    PlanParams params = config.plan_params;
    params.seed = derive_seed(seed, 0);
    SamplingPlan plan = build_plan(config.plan, ah, c, params);
    // Exact scores cost another O(nd^2) pass; only the theorem step and
    // exact fine-grained debiasing read them.
    const bool need_exact = config.plan == PlanKind::ExactLeverage || config.step.rule == StepRule::Theorem ||
                            config.debias == DebiasMode::FineGrainedExact;
    std::vector<double> exact;
    if (need_exact) {
      exact = config.plan == PlanKind::ExactLeverage ? *plan.scores : exact_leverage_scores(ah, c);
      const auto factors = approximation_factors(plan, exact);
      diag.d_eff = effective_dimension(exact);
      diag.rho_min = factors.rho_min;
      diag.rho_max = factors.rho_max;
    } else {
      diag.d_eff = plan.d_eff;
      diag.rho_min = diag.rho_max = std::numeric_limits<double>::quiet_NaN();
    }
    const DebiasSpec spec = make_debias(plan, config.debias, m, exact);
    const SketchDraw sample = config.fixed_draw ? *config.fixed_draw : draw(plan, m, derive_seed(seed, 1));
    h_hat = sketched_gram(apply_debias(sample, spec), ah) + c;
  } else {
    if (config.debias != DebiasMode::None && config.debias != DebiasMode::Scalar) {
      throw InvalidArgument("SRHT supports only none or scalar debiasing");
    }
    const std::vector<double> exact = exact_leverage_scores(ah, c);
    diag.d_eff = effective_dimension(exact);
    const SrhtDraw d = srht_draw(ah.rows(), m, derive_seed(seed, 1));
    if (config.step.rule == StepRule::Theorem) {
      const auto rotated = rotated_leverage_scores(ah, c, d.signs);
      const double top = *std::max_element(rotated.begin(), rotated.end());
      const double bottom = *std::min_element(rotated.begin(), rotated.end());
      diag.rho_max = top * static_cast<double>(d.n_padded) / diag.d_eff;
      diag.rho_min = bottom * static_cast<double>(d.n_padded) / diag.d_eff;
    } else {
      diag.rho_min = diag.rho_max = std::numeric_limits<double>::quiet_NaN();
    }
    const DebiasSpec spec = config.debias == DebiasMode::Scalar ? DebiasSpec::scalar(m, diag.d_eff) : DebiasSpec{};
    h_hat = sketched_gram(apply_debias(d.sample, spec), hadamard_rotate(ah, d.signs)) + c;
  }

  const auto dir = solve_spd(h_hat, ev.gradient);
  diag.step_size = pick_step(p, beta_t, ev, dir, config.step, theorem_mu(md, diag.d_eff, diag.rho_max));
  return {axpy(beta_t, diag.step_size, dir), diag};
}

DenseMatrix sparse_rademacher_sketch(const DenseMatrix& a, std::size_t m, std::size_t nnz_per_row,
                                     std::uint64_t seed) {
  const std::size_t n = a.rows();
  if (m == 0) throw InvalidArgument("sketch size m must be at least 1");
  if (nnz_per_row == 0 || nnz_per_row > n) throw InvalidArgument("nnz per row must lie in [1, rows(A)]");
  const double scale =
      std::sqrt(static_cast<double>(n) / (static_cast<double>(m) * static_cast<double>(nnz_per_row)));
  CounterRng rng(seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> swaps(nnz_per_row);
  DenseMatrix out(m, a.cols());
  for (std::size_t r = 0; r < m; ++r) {
    auto dst = out.row(r);
    // Partial Fisher-Yates; the swaps are undone so perm stays the identity.
    for (std::size_t k = 0; k < nnz_per_row; ++k) {
      swaps[k] = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(perm[k], perm[swaps[k]]);
      const double s = scale * rng.rademacher();
      auto src = a.row(perm[k]);
      for (std::size_t q = 0; q < src.size(); ++q) dst[q] += s * src[q];
    }
    for (std::size_t k = nnz_per_row; k-- > 0;) std::swap(perm[k], perm[swaps[k]]);
  }
  return out;
}

std::string method_name(const Method& method) {
  struct Visitor {
    std::string operator()(const GdConfig&) const { return "gd"; }
    std::string operator()(const SgdConfig&) const { return "sgd"; }
    std::string operator()(const NewtonExactConfig&) const { return "newton"; }
    std::string operator()(const SsnConfig& c) const {
      return c.sketch == SketchKind::Srht ? "ssn-srht" : "ssn-" + to_string(c.plan);
    }
    std::string operator()(const SparseProjConfig&) const { return "newton-sparse"; }
  };
  return std::visit(Visitor{}, method);
}

namespace {

class TraceRecorder {
 public:
  TraceRecorder(const GlmProblem& p, std::span<const double> beta0, const std::optional<std::vector<double>>& ref,
                bool timing)
      : timing_(timing) {
    if (ref) {
      if (ref->size() != p.d()) throw InvalidArgument("ShapeMismatch", "reference length differs from cols(A)");
      ref_ = *ref;
      h_star_ = hessian(p, *ref);
      denom_ = h_norm_sq(h_star_, diff(beta0));
    }
  }

  double rel_error(std::span<const double> beta) const {
    if (ref_.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double num = h_norm_sq(h_star_, diff(beta));
    if (denom_ > 0.0) return num / denom_;
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }

  void record(RunTrace& trace, std::size_t t, std::span<const double> beta, double grad_norm, double step,
              std::chrono::steady_clock::duration wall) const {
    IterRecord r;
    r.t = t;
    r.rel_error_H = rel_error(beta);
    r.grad_norm = grad_norm;
    r.step_size = step;
    r.wall_ns = timing_ ? static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(wall).count())
                        : 0;
    trace.records.push_back(r);
  }

 private:
  std::vector<double> diff(std::span<const double> beta) const {
    std::vector<double> e(beta.begin(), beta.end());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= ref_[k];
    return e;
  }

  bool timing_;
  std::vector<double> ref_;
  SymMatrix h_star_;
  double denom_ = 0.0;
};

// One iteration of `method`; returns the step size taken.
double iterate(const GlmProblem& p, const Method& method, std::vector<double>& beta, std::uint64_t seed) {
  if (const auto* gd = std::get_if<GdConfig>(&method)) {
    const auto g = objective_gradient(p, beta);
    beta = axpy(beta, gd->lr, g);
    return gd->lr;
  }
  if (const auto* sgd = std::get_if<SgdConfig>(&method)) {
    if (sgd->batch == 0) throw InvalidArgument("SGD batch size must be positive");
    std::vector<std::size_t> order(p.n());
    std::iota(order.begin(), order.end(), 0);
    CounterRng rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t start = 0; start < order.size(); start += sgd->batch) {
      const std::size_t len = std::min(sgd->batch, order.size() - start);
      const auto g = minibatch_gradient(p, beta, std::span<const std::size_t>(order).subspan(start, len));
      beta = axpy(beta, sgd->lr, g);
    }
    return sgd->lr;
  }
  if (const auto* nx = std::get_if<NewtonExactConfig>(&method)) {
    const auto ev = objective_eval(p, beta);
    const auto dir = solve_spd(gram(ev.hessian_sqrt) + p.regularizer(), ev.gradient);
    const double mu = nx->line_search ? armijo_step(p, beta, ev.value, ev.gradient, dir) : 1.0;
    beta = axpy(beta, mu, dir);
    return mu;
  }
  if (const auto* ssn = std::get_if<SsnConfig>(&method)) {
    auto step = ssn_step(p, beta, *ssn, seed);
    beta = std::move(step.beta_next);
    return step.diagnostics.step_size;
  }
  const auto& sp = std::get<SparseProjConfig>(method);
  if (p.lambda <= 0.0) throw InvalidArgument("sketched Newton needs lambda > 0");
  const auto ev = objective_eval(p, beta);
  const SymMatrix c = p.regularizer();
  const DenseMatrix sk = sparse_rademacher_sketch(ev.hessian_sqrt, sp.m, sp.nnz, seed);
  const auto dir = solve_spd(gram(sk) + c, ev.gradient);
  double theorem = 1.0;
  if (sp.step.rule == StepRule::Theorem) {
    const double d_eff = effective_dimension(exact_leverage_scores(ev.hessian_sqrt, c));
    theorem = theorem_mu(static_cast<double>(sp.m), d_eff, 1.0);
  }
  const double mu = pick_step(p, beta, ev, dir, sp.step, theorem);
  beta = axpy(beta, mu, dir);
  return mu;
}

}  // namespace

RunTrace run_solver(const GlmProblem& p, const Method& method, std::span<const double> beta0, std::size_t iters,
                    const std::optional<std::vector<double>>& reference, std::uint64_t seed,
                    const RunOptions& options) {
  p.validate();
  if (beta0.size() != p.d()) throw InvalidArgument("ShapeMismatch", "beta0 length differs from cols(A)");
  const TraceRecorder rec(p, beta0, reference, options.timing);
  RunTrace trace;
  trace.method = method_name(method);
  trace.reference = reference;
  std::vector<double> beta(beta0.begin(), beta0.end());
  rec.record(trace, 0, beta, norm2(objective_gradient(p, beta)), 0.0, {});
  for (std::size_t t = 1; t <= iters; ++t) {
    const auto start = std::chrono::steady_clock::now();
    const double mu = iterate(p, method, beta, derive_seed(seed, t));
    const auto wall = std::chrono::steady_clock::now() - start;
    const double g = norm2(objective_gradient(p, beta));
    rec.record(trace, t, beta, g, mu, wall);
    if (g < options.grad_tol) break;
  }
  trace.beta = std::move(beta);
  return trace;
}

RunTrace newton_exact(const GlmProblem& p, std::span<const double> beta0, std::size_t iters, bool line_search,
                      const std::optional<std::vector<double>>& reference, const RunOptions& options) {
  return run_solver(p, NewtonExactConfig{line_search}, beta0, iters, reference, 0, options);
}

Reference reference_solution(const GlmProblem& p, double grad_tol, std::size_t max_iters) {
  p.validate();
  Reference out;
  out.beta.assign(p.d(), 0.0);
  out.grad_norm = norm2(objective_gradient(p, out.beta));
  std::size_t stalls = 0;
  while (out.grad_norm >= grad_tol && out.iterations < max_iters) {
    const double mu = iterate(p, NewtonExactConfig{true}, out.beta, 0);
    ++out.iterations;
    out.grad_norm = norm2(objective_gradient(p, out.beta));
    // A rejected line search means the gradient sits at rounding level.
    stalls = mu == 0.0 ? stalls + 1 : 0;
    if (stalls >= 2) break;
  }
  if (out.grad_norm >= grad_tol && out.grad_norm > 1e-8) {
    throw NoConvergence(out.iterations, "reference Newton solve stopped at gradient norm " +
                                            std::to_string(out.grad_norm));
  }
  return out;
}

}  // namespace randskew
