#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "randskew/cli/data.hpp"
#include "randskew/errors.hpp"
#include "randskew/optim.hpp"
#include "randskew/rng.hpp"
#include "support/oracles.hpp"

using namespace randskew;

namespace {

GlmProblem logistic_problem(std::size_t n, std::size_t d, double lambda, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(0.5);
  GlmProblem p;
  p.a = oracle::random_matrix(n, d, seed);
  p.y.resize(n);
  for (double& v : p.y) v = coin(gen) ? 1.0 : -1.0;
  p.lambda = lambda;
  p.kind = ProblemKind::Logistic;
  return p;
}

GlmProblem least_squares(std::size_t n, std::size_t d, double lambda, std::uint64_t seed) {
  GlmProblem p;
  p.a = oracle::random_matrix(n, d, seed);
  // A few heavy rows make leverage non-uniform.
  for (std::size_t i = 0; i < n; i += 97) {
    for (double& v : p.a.row(i)) v *= 6.0;
  }
  std::mt19937_64 gen(seed + 1);
  std::normal_distribution<double> nd;
  p.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += p.a(i, k) * std::sin(1.0 + k);
    p.y[i] = s + 0.5 * nd(gen);
  }
  p.lambda = lambda;
  p.kind = ProblemKind::LeastSquares;
  return p;
}

std::vector<double> random_beta(std::size_t d, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<double> b(d);
  for (double& v : b) v = scale * nd(gen);
  return b;
}

std::vector<double> minus(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] - y[k];
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

TEST_CASE("objective closed forms") {
  SUBCASE("logistic at beta = 0") {
    const auto p = logistic_problem(30, 4, 0.3, 2);
    const auto ev = objective_eval(p, std::vector<double>(4, 0.0));
    CHECK(ev.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    for (std::size_t k = 0; k < 4; ++k) {
      double want = 0.0;
      for (std::size_t i = 0; i < 30; ++i) want -= p.a(i, k) * p.y[i];
      want /= 2.0 * 30.0;
      CHECK(ev.gradient[k] == doctest::Approx(want).epsilon(1e-13));
    }
    // sigma(0) sigma(0) = 1/4, so each Hessian row is a_i / (2 sqrt(n)).
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t k = 0; k < 4; ++k)
        CHECK(ev.hessian_sqrt(i, k) == doctest::Approx(p.a(i, k) / (2.0 * std::sqrt(30.0))).epsilon(1e-14));
  }
  SUBCASE("least squares is the standard quadratic") {
    const auto p = least_squares(25, 3, 0.2, 4);
    const auto beta = random_beta(3, 1);
    const auto ev = objective_eval(p, beta);
    const Eigen::MatrixXd a = oracle::to_eigen(p.a);
    Eigen::VectorXd b(3), y(25);
    for (int k = 0; k < 3; ++k) b(k) = beta[k];
    for (int i = 0; i < 25; ++i) y(i) = p.y[i];
    const Eigen::VectorXd r = a * b - y;
    CHECK(ev.value == doctest::Approx(r.squaredNorm() / 50.0 + 0.1 * b.squaredNorm()).epsilon(1e-13));
    const Eigen::VectorXd g = a.transpose() * r / 25.0 + 0.2 * b;
    for (int k = 0; k < 3; ++k) CHECK(ev.gradient[k] == doctest::Approx(g(k)).epsilon(1e-12));
    for (int i = 0; i < 25; ++i)
      for (int k = 0; k < 3; ++k) CHECK(ev.hessian_sqrt(i, k) == doctest::Approx(a(i, k) / 5.0).epsilon(1e-15));
  }
  SUBCASE("extreme margins stay finite") {
    GlmProblem p;
    p.a = DenseMatrix{{1.0}, {-1.0}};
    p.y = {1.0, 1.0};
    p.lambda = 0.0;
    for (double b : {50.0, -50.0, 800.0, -800.0}) {
      const auto ev = objective_eval(p, std::vector<double>{b});
      CHECK(std::isfinite(ev.value));
      CHECK(std::isfinite(ev.gradient[0]));
      for (double v : ev.hessian_sqrt.data()) CHECK(std::isfinite(v));
    }
    CHECK(objective_value(p, std::vector<double>{800.0}) == doctest::Approx(400.0).epsilon(1e-12));
  }
  SUBCASE("label validation") {
    auto p = logistic_problem(5, 2, 0.1, 1);
    p.y[3] = 0.0;
    CHECK_THROWS_AS(p.validate(), IoError);
    p.kind = ProblemKind::LeastSquares;
    CHECK_NOTHROW(p.validate());
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
  }
}

TEST_CASE("finite-difference consistency on 20 random problems") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 5;
    const auto p = seed % 2 ? logistic_problem(40, d, 0.05, seed) : least_squares(40, d, 0.05, seed);
    const auto beta = random_beta(d, 100 + seed, 0.7);
    const auto ev = objective_eval(p, beta);
    double bn = 0.0;
    for (double v : beta) bn += v * v;
    const double h = 1e-5 * (1.0 + std::sqrt(bn));
    std::vector<double> fd(d);
    Eigen::MatrixXd hfd(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      auto up = beta;
      auto dn = beta;
      up[k] += h;
      dn[k] -= h;
      fd[k] = (objective_value(p, up) - objective_value(p, dn)) / (2 * h);
      const auto gu = objective_gradient(p, up);
      const auto gd = objective_gradient(p, dn);
      for (std::size_t j = 0; j < d; ++j) hfd(j, k) = (gu[j] - gd[j]) / (2 * h);
    }
    CHECK(norm2(minus(fd, ev.gradient)) <= 1e-5 * norm2(ev.gradient));
    const Eigen::MatrixXd analytic = oracle::to_eigen(gram(ev.hessian_sqrt) + p.regularizer());
    CHECK((analytic - hfd).norm() <= 1e-4 * analytic.norm());
    CHECK((analytic - oracle::to_eigen(hessian(p, beta))).norm() <= 1e-12 * analytic.norm());
  }
}

TEST_CASE("minibatch gradient over all rows equals the full gradient") {
  const auto p = logistic_problem(20, 3, 0.1, 9);
  const auto beta = random_beta(3, 2);
  std::vector<std::size_t> rows(20);
  for (std::size_t i = 0; i < 20; ++i) rows[i] = i;
  const auto g = minibatch_gradient(p, beta, rows);
  const auto full = objective_gradient(p, beta);
  for (std::size_t k = 0; k < 3; ++k) CHECK(g[k] == doctest::Approx(full[k]).epsilon(1e-13));
}

TEST_CASE("exact Newton") {
  SUBCASE("one step solves a quadratic") {
    const auto p = least_squares(60, 4, 0.1, 3);
    const auto ref = reference_solution(p);
    const auto tr = newton_exact(p, std::vector<double>(4, 0.0), 1, false, ref.beta);
    CHECK(tr.records.size() == 2);
    CHECK(tr.records[0].rel_error_H == 1.0);
    CHECK(tr.records[1].rel_error_H < 1e-20);
    CHECK(tr.records[1].step_size == 1.0);
  }
  SUBCASE("separable two-point logistic problem with lambda = 0.1") {
    GlmProblem p;
    p.a = DenseMatrix{{1.0, 0.5}, {-1.0, 0.5}};
    p.y = {1.0, -1.0};
    p.lambda = 0.1;
    const auto tr = newton_exact(p, std::vector<double>(2, 0.0), 30, true, std::nullopt, RunOptions{false, 1e-12});
    CHECK(tr.records.back().grad_norm < 1e-12);
    CHECK(tr.records.size() <= 31);
  }
  SUBCASE("starting at the optimum gives a zero step") {
    const auto p = logistic_problem(50, 3, 0.05, 4);
    const auto ref = reference_solution(p);
    CHECK(ref.grad_norm < 1e-12);
    const auto tr = newton_exact(p, ref.beta, 1, false);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(tr.beta[k] - ref.beta[k]) < 1e-12);
  }
  SUBCASE("objective and H-norm error never increase under Armijo") {
    const auto p = logistic_problem(200, 5, 1e-3, 8);
    const auto ref = reference_solution(p);
    const auto beta0 = random_beta(5, 3, 2.0);
    const auto tr = newton_exact(p, beta0, 12, true, ref.beta);
    std::vector<double> beta = beta0;
    for (std::size_t t = 1; t < tr.records.size(); ++t) {
      CHECK(tr.records[t].rel_error_H <= tr.records[t - 1].rel_error_H + 1e-15);
    }
  }
}

TEST_CASE("armijo_step") {
  const auto p = logistic_problem(40, 3, 0.1, 5);
  const auto beta = random_beta(3, 6);
  const auto ev = objective_eval(p, beta);
  const double mu = armijo_step(p, beta, ev.value, ev.gradient, ev.gradient);
  CHECK(mu > 0.0);
  CHECK(mu <= 1.0);
  std::vector<double> next(beta);
  for (std::size_t k = 0; k < 3; ++k) next[k] -= mu * ev.gradient[k];
  CHECK(objective_value(p, next) <= ev.value - 1e-4 * mu * dot(ev.gradient, ev.gradient));
  // An ascent direction is rejected outright.
  std::vector<double> up(ev.gradient);
  for (double& v : up) v = -v;
  CHECK(armijo_step(p, beta, ev.value, ev.gradient, up) == 0.0);
}

TEST_CASE("ssn_step") {
  SUBCASE("a full-coverage draw reproduces the exact Newton step") {
    const auto p = logistic_problem(40, 3, 0.1, 12);
    const auto beta = random_beta(3, 7, 0.5);
    SsnConfig cfg;
    cfg.debias = DebiasMode::None;
    cfg.step = StepRuleSpec{StepRule::Fixed, 1.0};
    SketchDraw full;
    for (std::size_t i = 0; i < 40; ++i) {
      full.indices.push_back(i);
      full.weights.push_back(1.0);
    }
    cfg.fixed_draw = full;
    const auto step = ssn_step(p, beta, cfg, 1);
    const auto newton = newton_exact(p, beta, 1, false);
    for (std::size_t k = 0; k < 3; ++k) CHECK(step.beta_next[k] == doctest::Approx(newton.beta[k]).epsilon(1e-12));
    CHECK(step.diagnostics.m == 40);
  }
  SUBCASE("theorem step size and diagnostics") {
    const auto p = least_squares(300, 5, 0.05, 2);
    SsnConfig cfg;
    cfg.m = 80;
    cfg.step = StepRuleSpec{StepRule::Theorem, 1.0};
    const auto step = ssn_step(p, std::vector<double>(5, 0.0), cfg, 4);
    const double d_eff = step.diagnostics.d_eff;
    CHECK(step.diagnostics.rho_max == 1.0);
    CHECK(step.diagnostics.step_size == doctest::Approx(1.0 - 1.0 / (80.0 / d_eff + 1.0)).epsilon(1e-14));
    cfg.plan = PlanKind::Uniform;
    const auto uni = ssn_step(p, std::vector<double>(5, 0.0), cfg, 4);
    CHECK(uni.diagnostics.rho_max > 1.0);
    CHECK(uni.diagnostics.step_size < step.diagnostics.step_size);
  }
  SUBCASE("srht sketch") {
    const auto p = least_squares(200, 4, 0.05, 5);
    SsnConfig cfg;
    cfg.sketch = SketchKind::Srht;
    cfg.m = 64;
    cfg.step = StepRuleSpec{StepRule::Theorem, 1.0};
    const auto step = ssn_step(p, std::vector<double>(4, 0.0), cfg, 3);
    CHECK(step.diagnostics.rho_max >= 1.0);
    CHECK(step.diagnostics.rho_min <= 1.0);
    CHECK(step.diagnostics.step_size > 0.0);
    const auto again = ssn_step(p, std::vector<double>(4, 0.0), cfg, 3);
    CHECK(again.beta_next == step.beta_next);
    cfg.debias = DebiasMode::FineGrainedExact;
    CHECK_THROWS_AS(ssn_step(p, std::vector<double>(4, 0.0), cfg, 3), InvalidArgument);
  }
  SUBCASE("errors") {
    auto p = least_squares(50, 4, 0.05, 1);
    SsnConfig cfg;
    cfg.m = 3;
    CHECK_THROWS_AS(ssn_step(p, std::vector<double>(4, 0.0), cfg, 1), SketchTooSmall);
    p.lambda = 0.0;
    cfg.m = 20;
    CHECK_THROWS_AS(ssn_step(p, std::vector<double>(4, 0.0), cfg, 1), InvalidArgument);
  }
}

TEST_CASE("single-step contraction of debiased SSN on least squares") {
  const auto p = least_squares(1000, 6, 0.05, 21);
  const auto ref = reference_solution(p);
  const SymMatrix h = hessian(p, ref.beta);
  const auto beta_t = random_beta(6, 5);
  const double base = h_norm_sq(h, minus(beta_t, ref.beta));
  const double d_eff = effective_dimension(exact_leverage_scores(objective_eval(p, beta_t).hessian_sqrt, p.regularizer()));
  const auto m = static_cast<std::size_t>(std::ceil(16 * d_eff));

  auto mean_ratio = [&](DebiasMode mode, std::vector<double>* mean_next) {
    SsnConfig cfg;
    cfg.m = m;
    cfg.debias = mode;
    cfg.step = StepRuleSpec{StepRule::Theorem, 1.0};
    double sum = 0.0;
    for (std::uint64_t t = 0; t < 2000; ++t) {
      const auto step = ssn_step(p, beta_t, cfg, derive_seed(808, t));
      sum += h_norm_sq(h, minus(step.beta_next, ref.beta)) / base;
      if (mean_next) {
        for (std::size_t k = 0; k < 6; ++k) (*mean_next)[k] += step.beta_next[k] / 2000.0;
      }
    }
    return sum / 2000.0;
  };
  const double debiased = mean_ratio(DebiasMode::Scalar, nullptr);
  const double plain = mean_ratio(DebiasMode::None, nullptr);
  CHECK(debiased <= 1.3 * d_eff / static_cast<double>(m));
  CHECK(debiased < plain);
}

TEST_CASE("debiased SSN steps are nearly unbiased") {
  const auto p = least_squares(1000, 6, 0.05, 31);
  const auto beta_t = random_beta(6, 8);
  const auto ev = objective_eval(p, beta_t);
  const SymMatrix h = gram(ev.hessian_sqrt) + p.regularizer();
  const double d_eff = effective_dimension(exact_leverage_scores(ev.hessian_sqrt, p.regularizer()));
  const auto m = static_cast<std::size_t>(std::ceil(32 * d_eff));
  SsnConfig cfg;
  cfg.m = m;
  cfg.debias = DebiasMode::Scalar;
  cfg.step = StepRuleSpec{StepRule::Theorem, 1.0};
  const double mu = 1.0 - 1.0 / (static_cast<double>(m) / d_eff + 1.0);
  const auto newton_dir = solve_spd(h, ev.gradient);
  std::vector<double> target(beta_t);
  for (std::size_t k = 0; k < 6; ++k) target[k] -= mu * newton_dir[k];

  const std::size_t trials = 2000;
  std::vector<std::vector<double>> devs;
  std::vector<double> mean(6, 0.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto step = ssn_step(p, beta_t, cfg, derive_seed(909, t));
    devs.push_back(minus(step.beta_next, target));
    for (std::size_t k = 0; k < 6; ++k) mean[k] += devs.back()[k] / trials;
  }
  double spread = 0.0;
  for (const auto& dv : devs) spread += h_norm_sq(h, minus(dv, mean));
  const double stderr_h = std::sqrt(spread / (trials - 1.0) / trials);
  CHECK(std::sqrt(h_norm_sq(h, mean)) <= 3.0 * stderr_h);
}

TEST_CASE("Theorem rate over five iterations at m = 32 d_eff") {
  const auto p = least_squares(2000, 8, 0.05, 41);
  const auto ref = reference_solution(p);
  const double d_eff = effective_dimension(exact_leverage_scores(objective_eval(p, ref.beta).hessian_sqrt, p.regularizer()));
  const auto m = static_cast<std::size_t>(std::ceil(32 * d_eff));
  std::vector<double> rates_debiased;
  std::vector<double> rates_plain;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (DebiasMode mode : {DebiasMode::Scalar, DebiasMode::None}) {
      SsnConfig cfg;
      cfg.m = m;
      cfg.debias = mode;
      cfg.step = StepRuleSpec{StepRule::Theorem, 1.0};
      const auto tr = run_solver(p, cfg, random_beta(8, 50 + seed), 5, ref.beta, seed, RunOptions{false, 0.0});
      const double rate = std::pow(tr.records.back().rel_error_H, 1.0 / 5.0);
      (mode == DebiasMode::Scalar ? rates_debiased : rates_plain).push_back(rate);
    }
  }
  CHECK(median(rates_debiased) <= 2.0 * d_eff / static_cast<double>(m));
  CHECK(median(rates_debiased) < median(rates_plain));
}

TEST_CASE("SSN with approximate leverage on a desk-scale logistic problem") {
  cli::SyntheticSpec spec;
  spec.n = 2048;
  spec.d = 64;
  const auto ds = cli::synthetic(spec, 5);
  const GlmProblem p{ds.a, ds.y, 0.1, ProblemKind::Logistic};
  const auto ref = reference_solution(p);
  SsnConfig cfg;
  cfg.plan = PlanKind::ApproxLeverage;
  cfg.m = 300;
  cfg.debias = DebiasMode::Scalar;
  cfg.step = StepRuleSpec{StepRule::Armijo, 1.0};
  std::vector<double> finals;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto tr = run_solver(p, cfg, std::vector<double>(64, 0.0), 10, ref.beta, seed, RunOptions{false, 0.0});
    for (std::size_t t = 1; t < tr.records.size(); ++t) CHECK(tr.records[t].rel_error_H < tr.records[t - 1].rel_error_H);
    finals.push_back(tr.records.back().rel_error_H);
  }
  CHECK(median(finals) < 1e-8);
}

TEST_CASE("run_solver") {
  const auto p = logistic_problem(100, 4, 0.05, 13);
  const auto ref = reference_solution(p);
  const std::vector<double> zero(4, 0.0);
  SUBCASE("gd with zero learning rate is constant") {
    const auto tr = run_solver(p, GdConfig{0.0}, zero, 5, ref.beta, 1);
    REQUIRE(tr.records.size() == 6);
    for (const auto& r : tr.records) {
      CHECK(r.rel_error_H == 1.0);
      CHECK(r.grad_norm == tr.records[0].grad_norm);
    }
    CHECK(tr.method == "gd");
  }
  SUBCASE("gd and sgd make progress") {
    const auto gd = run_solver(p, GdConfig{1.0}, zero, 50, ref.beta, 1);
    CHECK(gd.records.back().rel_error_H < 0.5);
    const auto sgd = run_solver(p, SgdConfig{0.2, 10}, zero, 20, ref.beta, 1);
    CHECK(sgd.records.back().rel_error_H < 0.5);
    CHECK(sgd.method == "sgd");
  }
  SUBCASE("no reference gives NaN errors") {
    const auto tr = run_solver(p, GdConfig{0.5}, zero, 2, std::nullopt, 1);
    for (const auto& r : tr.records) CHECK(std::isnan(r.rel_error_H));
  }
  SUBCASE("timing off writes zero wall times and keeps results bitwise") {
    SsnConfig cfg;
    cfg.m = 40;
    const auto off = run_solver(p, cfg, zero, 4, ref.beta, 9, RunOptions{false, 0.0});
    const auto on = run_solver(p, cfg, zero, 4, ref.beta, 9, RunOptions{true, 0.0});
    for (std::size_t t = 0; t < off.records.size(); ++t) {
      CHECK(off.records[t].wall_ns == 0);
      CHECK(off.records[t].rel_error_H == on.records[t].rel_error_H);
      CHECK(off.records[t].step_size == on.records[t].step_size);
    }
    CHECK(off.beta == on.beta);
    CHECK(off.method == "ssn-rlev");
  }
  SUBCASE("sparse projection baseline") {
    const auto tr = run_solver(p, SparseProjConfig{60, 4, StepRuleSpec{StepRule::Armijo, 1.0}}, zero, 8, ref.beta, 3);
    CHECK(tr.records.back().rel_error_H < 1e-3);
    CHECK(tr.method == "newton-sparse");
  }
  SUBCASE("grad_tol stops early") {
    const auto tr = run_solver(p, NewtonExactConfig{true}, zero, 50, ref.beta, 0, RunOptions{false, 1e-10});
    CHECK(tr.records.size() < 51);
    CHECK(tr.records.back().grad_norm < 1e-10);
  }
  CHECK_THROWS_AS(run_solver(p, GdConfig{1.0}, std::vector<double>(3, 0.0), 1, std::nullopt, 0), InvalidArgument);
}

TEST_CASE("sparse Rademacher sketch") {
  const DenseMatrix a = oracle::random_matrix(32, 3, 4);
  SUBCASE("determinism") {
    CHECK(sparse_rademacher_sketch(a, 10, 4, 1) == sparse_rademacher_sketch(a, 10, 4, 1));
    CHECK_FALSE(sparse_rademacher_sketch(a, 10, 4, 1) == sparse_rademacher_sketch(a, 10, 4, 2));
  }
  SUBCASE("dense limit is a scaled Rademacher matrix") {
    const DenseMatrix e = DenseMatrix::identity(8);
    const auto s = sparse_rademacher_sketch(e, 5, 8, 3);
    for (double v : s.data()) CHECK(std::abs(v) == doctest::Approx(std::sqrt(8.0 / (5.0 * 8.0))));
  }
  auto check_unbiased = [&](std::size_t m, std::size_t nnz, std::size_t trials) {
    const Eigen::MatrixXd target = oracle::to_eigen(gram(a));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(3, 3);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(3, 3);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto g = oracle::to_eigen(gram(sparse_rademacher_sketch(a, m, nnz, derive_seed(61, t))));
      sum += g;
      sum_sq += g.cwiseProduct(g);
    }
    const double tc = static_cast<double>(trials);
    const Eigen::MatrixXd mean = sum / tc;
    const Eigen::MatrixXd sd = (sum_sq / tc - mean.cwiseProduct(mean)).cwiseMax(0.0).cwiseSqrt();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(mean(i, j) - target(i, j)) < 4.0 * sd(i, j) / std::sqrt(tc));
  };
  SUBCASE("unbiased at nnz = 4, m = 64") { check_unbiased(64, 4, 10'000); }
  SUBCASE("unbiased in the dense limit") { check_unbiased(16, 32, 4'000); }
  CHECK_THROWS_AS(sparse_rademacher_sketch(a, 4, 33, 1), InvalidArgument);
  CHECK_THROWS_AS(sparse_rademacher_sketch(a, 0, 2, 1), InvalidArgument);
}

TEST_CASE("reference_solution") {
  const auto p = logistic_problem(300, 6, 1e-3, 17);
  const auto ref = reference_solution(p);
  CHECK(ref.grad_norm < 1e-12);
  CHECK(norm2(objective_gradient(p, ref.beta)) == ref.grad_norm);
  CHECK_THROWS_AS(reference_solution(p, 1e-30, 1), NoConvergence);
}
