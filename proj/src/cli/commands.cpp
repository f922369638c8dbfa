#include "randskew/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "randskew/bias_lab.hpp"
#include "randskew/cli/data.hpp"
#include "randskew/optim.hpp"
#include "randskew/parallel.hpp"
#include "randskew/rng.hpp"

namespace randskew::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "source", "path", "n", "d", "distribution", "decay", "heavy_rows", "labels", "noise", "lambda", "problem",
    "plans", "schemes", "debias", "m", "m_mult", "trials", "threads", "batch", "method", "methods", "iters",
    "lr", "sgd_batch", "step_rule", "mu", "m1", "m2", "sjlt_s", "mix", "shrinkage_approx", "nnz", "sketch",
    "plan", "timing", "replicas", "reference", "seed", "format", "standardize"};

PlanKind parse_plan(const std::string& name) {
  if (name == "uniform") return PlanKind::Uniform;
  if (name == "rownorm") return PlanKind::RowNorm;
  if (name == "rlev") return PlanKind::ExactLeverage;
  if (name == "arlev") return PlanKind::ApproxLeverage;
  if (name == "darlev") return PlanKind::DoubleSketchApproxLeverage;
  if (name == "shrinkage") return PlanKind::Shrinkage;
  throw InvalidArgument("unknown sampling plan '" + name + "'");
}

DebiasMode parse_debias(const std::string& name) {
  if (name == "none") return DebiasMode::None;
  if (name == "scalar") return DebiasMode::Scalar;
  if (name == "fine") return DebiasMode::FineGrainedExact;
  if (name == "fine_approx") return DebiasMode::FineGrainedApprox;
  throw InvalidArgument("unknown debias mode '" + name + "'");
}

StepRuleSpec parse_step(const Config& cfg, const std::string& fallback) {
  const std::string rule = cfg.str("step_rule", fallback);
  StepRuleSpec s;
  if (rule == "theorem") {
    s.rule = StepRule::Theorem;
  } else if (rule == "armijo") {
    s.rule = StepRule::Armijo;
  } else if (rule == "fixed") {
    s.rule = StepRule::Fixed;
    s.mu = cfg.real("mu", 1.0);
  } else {
    throw InvalidArgument("step_rule must be theorem, armijo or fixed");
  }
  return s;
}

PlanParams plan_params(const Config& cfg, std::uint64_t seed) {
  PlanParams p;
  p.mix = cfg.real("mix", p.mix);
  p.shrinkage_uses_approx = cfg.flag("shrinkage_approx", false);
  p.sjlt.m1 = cfg.count("m1", 0);
  p.sjlt.m2 = cfg.opt_count("m2");
  p.sjlt.sparsity = cfg.count("sjlt_s", 4);
  p.seed = seed;
  return p;
}

/// Explicit `m` list, or ceil(mult * d_eff) for each entry of `m_mult`.
std::vector<std::size_t> m_grid(const Config& cfg, double d_eff, const std::string& fallback_mult) {
  if (cfg.has("m")) {
    auto grid = cfg.count_list("m", "");
    if (grid.empty()) throw InvalidArgument("m must list at least one sketch size");
    return grid;
  }
  std::vector<std::size_t> grid;
  for (double k : cfg.real_list("m_mult", fallback_mult)) {
    if (!(k > 0.0)) throw InvalidArgument("m_mult entries must be positive");
    grid.push_back(static_cast<std::size_t>(std::ceil(k * d_eff)));
  }
  if (grid.empty()) throw InvalidArgument("m_mult must list at least one multiplier");
  return grid;
}

void check_keys(const Config& cfg) {
  for (const auto& [k, v] : cfg.explicit_values()) {
    if (!kKnownKeys.count(k)) throw InvalidArgument("unknown config key '" + k + "'");
  }
}

GlmProblem make_problem(const Config& cfg, std::uint64_t seed, bool standardize) {
  const std::string kind = cfg.str("problem", "logistic");
  GlmProblem p;
  if (kind == "logistic") {
    p.kind = ProblemKind::Logistic;
  } else if (kind == "least_squares") {
    p.kind = ProblemKind::LeastSquares;
  } else {
    throw InvalidArgument("problem must be logistic or least_squares");
  }
  Dataset data = load_data(cfg, seed, standardize);
  p.a = std::move(data.a);
  p.y = std::move(data.y);
  p.lambda = cfg.real("lambda", 1e-3);
  p.validate();
  return p;
}

/// `name[:debias]` with name in gd, sgd, newton, ssn, ssn-srht, newton-sparse.
Method make_method(const Config& cfg, const std::string& spec, std::size_t m) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string debias = colon == std::string::npos ? cfg.str("debias", "scalar") : spec.substr(colon + 1);
  if (name == "gd") return GdConfig{cfg.real("lr", 1.0)};
  if (name == "sgd") return SgdConfig{cfg.real("lr", 1.0), cfg.count("sgd_batch", 32)};
  if (name == "newton") return NewtonExactConfig{true};
  if (name == "ssn" || name == "ssn-srht") {
    SsnConfig c;
    c.sketch = name == "ssn" ? SketchKind::Sampling : SketchKind::Srht;
    if (c.sketch == SketchKind::Sampling) {
      c.plan = parse_plan(cfg.str("plan", "rlev"));
      c.plan_params = plan_params(cfg, 0);
    }
    c.m = m;
    c.debias = parse_debias(debias);
    c.step = parse_step(cfg, "armijo");
    return c;
  }
  if (name == "newton-sparse") return SparseProjConfig{m, cfg.count("nnz", 4), parse_step(cfg, "armijo")};
  throw InvalidArgument("unknown method '" + name + "'");
}

std::string method_label(const Method& method) {
  std::string label = method_name(method);
  if (const auto* s = std::get_if<SsnConfig>(&method)) label += "-" + to_string(s->debias);
  return label;
}

nlohmann::ordered_json vec_json(const std::vector<double>& v) {
  auto out = nlohmann::ordered_json::array();
  for (double x : v) out.push_back(x);
  return out;
}

/// Solver seed of replica k; solve runs replica 0.
std::uint64_t replica_seed(std::uint64_t seed, std::size_t k) { return derive_seed(derive_seed(seed, 2), k); }

template <class T>
T median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  if (k % 2 == 1) return v[k / 2];
  return v[k / 2 - 1] + (v[k / 2] - v[k / 2 - 1]) / 2;
}

}  // namespace

int exit_code(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::Io: return 2;
    case ErrorClass::Numerical: return 3;
    case ErrorClass::Config: return 4;
  }
  return 1;
}

CommandResult cmd_lev(const Config& cfg, std::uint64_t seed, bool standardize) {
  const Dataset data = load_data(cfg, seed, standardize);
  const DenseMatrix& a = data.a;
  const SymMatrix c = SymMatrix::identity(a.cols(), cfg.real("lambda", 0.0));
  const auto plans = cfg.list("plans", "rlev");
  const PlanParams params = plan_params(cfg, derive_seed(seed, 1));
  const auto exact = exact_leverage_scores(a, c);

  CommandResult r;
  r.table.columns = {"index", "score_exact"};
  std::vector<std::vector<double>> extra;
  for (const auto& name : plans) {
    const PlanKind kind = parse_plan(name);
    const SamplingPlan plan = build_plan(kind, a, c, params);
    if (kind == PlanKind::ApproxLeverage || kind == PlanKind::DoubleSketchApproxLeverage) {
      if (std::find(r.table.columns.begin(), r.table.columns.end(), "score_" + name) == r.table.columns.end()) {
        r.table.columns.push_back("score_" + name);
        extra.push_back(*plan.scores);
      }
    }
    const auto f = approximation_factors(plan, exact);
    r.table.summary.push_back("plan=" + name + " d_eff=" + format_real(plan.d_eff) +
                              " rho_min=" + format_real(f.rho_min) + " rho_max=" + format_real(f.rho_max));
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Cell> row{static_cast<std::uint64_t>(i), exact[i]};
    for (const auto& col : extra) row.emplace_back(col[i]);
    r.table.rows.push_back(std::move(row));
  }
  r.meta["d_eff"] = effective_dimension(exact);
  r.meta["n"] = a.rows();
  r.meta["d"] = a.cols();
  return r;
}

CommandResult cmd_bias(const Config& cfg, std::uint64_t seed, bool standardize) {
  const Dataset data = load_data(cfg, seed, standardize);
  const DenseMatrix& a = data.a;
  const SymMatrix c = SymMatrix::identity(a.cols(), cfg.real("lambda", 0.0));
  const double d_eff = effective_dimension(exact_leverage_scores(a, c));
  const PlanParams params = plan_params(cfg, derive_seed(seed, 1));

  std::vector<SketchScheme> schemes;
  for (const auto& name : cfg.list("schemes", "rlev")) {
    if (name == "srht") {
      schemes.emplace_back(SrhtScheme{});
    } else if (name == "gaussian") {
      schemes.emplace_back(GaussianScheme{});
    } else {
      schemes.emplace_back(build_plan(parse_plan(name), a, c, params));
    }
  }
  std::vector<DebiasMode> modes;
  for (const auto& name : cfg.list("debias", "none,scalar")) modes.push_back(parse_debias(name));
  const auto grid = m_grid(cfg, d_eff, "4,8,16,32");
  BiasOptions opts;
  opts.threads = cfg.count("threads", 1);
  opts.batch = cfg.count("batch", 64);
  const auto rows = bias_sweep(a, c, schemes, modes, grid, cfg.count("trials", 500), derive_seed(seed, 2), opts);

  CommandResult r;
  r.table.columns = {"scheme", "debias", "m", "trials", "discarded", "bias", "stderr_proxy", "eps_def5"};
  for (const auto& e : rows) {
    r.table.rows.push_back({e.scheme, to_string(e.debias_mode), static_cast<std::uint64_t>(e.m),
                            static_cast<std::uint64_t>(e.trials), static_cast<std::uint64_t>(e.discarded), e.bias,
                            e.stderr_proxy, e.eps_def5});
  }
  r.meta["d_eff"] = d_eff;
  r.meta["m_grid"] = grid;
  return r;
}

CommandResult cmd_solve(const Config& cfg, std::uint64_t seed, bool standardize) {
  const GlmProblem p = make_problem(cfg, seed, standardize);
  const bool use_reference = cfg.flag("reference", true);
  std::optional<std::vector<double>> ref;
  Reference reference;
  if (use_reference) {
    reference = reference_solution(p);
    ref = reference.beta;
  }
  const std::vector<double> beta0(p.d(), 0.0);
  const auto& at = ref ? *ref : beta0;
  const double d_eff = effective_dimension(exact_leverage_scores(objective_eval(p, at).hessian_sqrt, p.regularizer()));
  const auto grid = m_grid(cfg, d_eff, "8");
  if (grid.size() != 1) throw InvalidArgument("solve takes a single sketch size");

  const Method method = make_method(cfg, cfg.str("method", "ssn"), grid[0]);
  RunOptions opts;
  opts.timing = cfg.flag("timing", true);
  const std::uint64_t solver_seed = replica_seed(seed, 0);
  const RunTrace trace = run_solver(p, method, beta0, cfg.count("iters", 10), ref, solver_seed, opts);

  CommandResult r;
  r.table.columns = {"t", "rel_error_H", "grad_norm", "step_size", "wall_ns"};
  for (const auto& rec : trace.records) {
    r.table.rows.push_back({static_cast<std::uint64_t>(rec.t), rec.rel_error_H, rec.grad_norm, rec.step_size,
                            static_cast<std::uint64_t>(rec.wall_ns)});
  }
  r.meta["method"] = method_label(method);
  r.meta["m"] = grid[0];
  r.meta["d_eff_at_reference"] = d_eff;
  if (ref) {
    r.meta["beta_star"] = vec_json(reference.beta);
    r.meta["reference_grad_norm"] = reference.grad_norm;
    r.meta["reference_iterations"] = reference.iterations;
  }
  r.meta["beta_final"] = vec_json(trace.beta);
  r.meta["seeds"] = {{"seed", seed}, {"data_seed", derive_seed(seed, 0xda7a)}, {"solver_seed", solver_seed}};
  return r;
}

CommandResult cmd_sweep(const Config& cfg, std::uint64_t seed, bool standardize) {
  const GlmProblem p = make_problem(cfg, seed, standardize);
  const Reference reference = reference_solution(p);
  const std::optional<std::vector<double>> ref = reference.beta;
  const double d_eff =
      effective_dimension(exact_leverage_scores(objective_eval(p, reference.beta).hessian_sqrt, p.regularizer()));
  const auto grid = m_grid(cfg, d_eff, "8,16,32,64");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (grid[k] <= grid[k - 1]) throw InvalidArgument("m grid must be strictly ascending");
  }
  const auto methods = cfg.list("methods", "ssn");
  const std::size_t iters = cfg.count("iters", 5);
  const std::size_t replicas = cfg.count("replicas", 5);
  if (replicas == 0) throw InvalidArgument("replicas must be at least 1");
  const std::size_t threads = cfg.count("threads", 1);
  RunOptions opts;
  opts.timing = cfg.flag("timing", true);
  const std::vector<double> beta0(p.d(), 0.0);

  CommandResult r;
  r.table.columns = {"method", "m", "final_rel_error", "total_wall_ns"};
  for (const auto& spec : methods) {
    for (std::size_t m : grid) {
      const Method method = make_method(cfg, spec, m);
      std::vector<double> finals(replicas);
      std::vector<std::uint64_t> walls(replicas);
      parallel_for(replicas, threads, [&](std::size_t k) {
        const RunTrace t = run_solver(p, method, beta0, iters, ref, replica_seed(seed, k), opts);
        finals[k] = t.records.back().rel_error_H;
        std::uint64_t total = 0;
        for (const auto& rec : t.records) total += rec.wall_ns;
        walls[k] = total;
      });
      r.table.rows.push_back({method_label(method), static_cast<std::uint64_t>(m), median(finals), median(walls)});
    }
  }
  r.meta["d_eff_at_reference"] = d_eff;
  r.meta["m_grid"] = grid;
  r.meta["beta_star"] = vec_json(reference.beta);
  r.meta["reference_grad_norm"] = reference.grad_norm;
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"randskew: sketching, inversion-bias and sub-sampled Newton experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string seed_text;
  std::string out;
  std::string format;
  bool standardize = false;
  std::vector<std::string> overrides;
  for (const char* name : {"lev", "bias", "solve", "sweep"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file (or a run sidecar)");
    sub->add_option("--seed", seed_text, "u64 seed; falls back to RANDSKEW_SEED");
    sub->add_option("--out", out, "output path (stdout when absent)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--standardize", standardize, "z-score feature columns");
    sub->add_option("overrides", overrides, "key=value overrides");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    for (const auto& o : overrides) {
      auto [k, v] = parse_override(o);
      cfg.set(k, v);
    }
    if (!seed_text.empty()) {
      cfg.set("seed", seed_text);
    } else if (!cfg.has("seed")) {
      const char* env = std::getenv("RANDSKEW_SEED");
      if (env == nullptr) throw InvalidArgument("MissingSeed", "no --seed given and RANDSKEW_SEED is unset");
      cfg.set("seed", env);
    }
    if (standardize) cfg.set("standardize", "on");
    if (!format.empty()) cfg.set("format", format);
    check_keys(cfg);
    const std::uint64_t seed = parse_u64(cfg.str("seed", ""), "seed");
    const bool z = cfg.flag("standardize", false);
    const std::string fmt = cfg.str("format", "csv");
    if (fmt != "csv" && fmt != "json") throw InvalidArgument("format must be csv or json");

    CommandResult result;
    if (command == "lev") {
      result = cmd_lev(cfg, seed, z);
    } else if (command == "bias") {
      result = cmd_bias(cfg, seed, z);
    } else if (command == "solve") {
      result = cmd_solve(cfg, seed, z);
    } else {
      result = cmd_sweep(cfg, seed, z);
    }

    write_text(out, fmt == "json" ? to_json(result.table) : to_csv(result.table));
    if (!out.empty() && out != "-") {
      nlohmann::ordered_json meta;
      meta["command"] = command;
      meta["config"] = cfg.effective();
      for (auto& [k, v] : result.meta.items()) meta[k] = v;
      write_text(sidecar_path(out), meta.dump(2) + '\n');
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return exit_code(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace randskew::cli
