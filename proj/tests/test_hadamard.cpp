#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "randskew/errors.hpp"
#include "randskew/hadamard.hpp"
#include "randskew/rng.hpp"
#include "support/oracles.hpp"

using namespace randskew;

TEST_CASE("power-of-two helpers") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(12));
  CHECK(next_power_of_two(0) == 1);
  CHECK(next_power_of_two(5) == 8);
  CHECK(next_power_of_two(8) == 8);
  CHECK(next_power_of_two(1025) == 2048);
}

TEST_CASE("fwht_inplace") {
  SUBCASE("small vectors") {
    std::vector<double> v{1, 0};
    fwht_inplace(v);
    CHECK(v == std::vector<double>{1, 1});
    std::vector<double> w{1, 1, 1, 1};
    fwht_inplace(w);
    CHECK(w == std::vector<double>{4, 0, 0, 0});
  }
  SUBCASE("length 16 against the Sylvester matrix") {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> nd;
    Eigen::VectorXd x(16);
    std::vector<double> v(16);
    for (int i = 0; i < 16; ++i) v[i] = x(i) = nd(gen);
    fwht_inplace(v);
    const Eigen::VectorXd ref = oracle::hadamard(16) * x;
    for (int i = 0; i < 16; ++i) CHECK(std::abs(v[i] - ref(i)) < 1e-12);
  }
  SUBCASE("applied twice is n times the identity") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (std::size_t n = 1; n <= 1024; n <<= 1) {
      std::vector<double> v(n);
      for (double& x : v) x = ud(gen);
      auto w = v;
      fwht_inplace(w);
      fwht_inplace(w);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(w[i] - n * v[i]) < 1e-10 * n);
    }
  }
  SUBCASE("fwht_rows matches column-wise transforms") {
    const DenseMatrix a = oracle::random_matrix(32, 3, 6);
    DenseMatrix b = a;
    fwht_rows(b);
    const Eigen::MatrixXd ref = oracle::hadamard(32) * oracle::to_eigen(a);
    CHECK((oracle::to_eigen(b) - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
  std::vector<double> bad(6, 1.0);
  CHECK_THROWS_AS(fwht_inplace(bad), InvalidArgument);
  DenseMatrix badm(3, 2);
  CHECK_THROWS_AS(fwht_rows(badm), InvalidArgument);
}

TEST_CASE("srht_draw") {
  const auto dr = srht_draw(100, 20, 5);
  CHECK(dr.n_original == 100);
  CHECK(dr.n_padded == 128);
  CHECK(dr.signs.size() == 128);
  for (double s : dr.signs) CHECK(std::abs(s) == 1.0);
  CHECK(dr.sample.m() == 20);
  for (std::size_t s = 0; s < 20; ++s) {
    CHECK(dr.sample.indices[s] < 128);
    CHECK(dr.sample.weights[s] == doctest::Approx(std::sqrt(128.0 / 20.0)).epsilon(1e-15));
  }
  const auto again = srht_draw(100, 20, 5);
  CHECK(again.signs == dr.signs);
  CHECK(again.sample.indices == dr.sample.indices);
  CHECK_THROWS_AS(srht_draw(0, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(srht_draw(4, 0, 1), InvalidArgument);
}

TEST_CASE("srht_apply") {
  SUBCASE("full draw applies H_n / sqrt(n) and keeps the Gram") {
    const std::size_t n = 8;
    DenseMatrix e1(n, 1);
    e1(0, 0) = 1.0;
    const auto out = srht_apply(srht_full_draw(std::vector<double>(n, 1.0), n), e1);
    const Eigen::MatrixXd h = oracle::hadamard(n) / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(out(i, 0) - h(i, 0)) < 1e-15);
    CHECK(gram(out)(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("Gram invariance for arbitrary signs, including padding") {
    std::mt19937_64 gen(11);
    for (std::size_t n : {16u, 37u, 100u}) {
      const DenseMatrix a = oracle::random_matrix(n, 5, n);
      const std::size_t padded = next_power_of_two(n);
      std::vector<double> signs(padded);
      for (double& s : signs) s = (gen() & 1U) ? 1.0 : -1.0;
      const auto rotated = oracle::to_eigen(gram(hadamard_rotate(a, signs)));
      const auto base = oracle::to_eigen(gram(a));
      CHECK((rotated - base).norm() / base.norm() < 1e-10);
      const auto full = oracle::to_eigen(gram(srht_apply(srht_full_draw(signs, n), a)));
      CHECK((full - base).norm() / base.norm() < 1e-10);
    }
  }
  SUBCASE("rotation agrees with the dense product H D A / sqrt(n)") {
    const DenseMatrix a = oracle::random_matrix(12, 3, 2);
    std::vector<double> signs(16);
    for (std::size_t i = 0; i < 16; ++i) signs[i] = (i % 3 == 0) ? -1.0 : 1.0;
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(16, 3);
    padded.topRows(12) = oracle::to_eigen(a);
    Eigen::VectorXd dsg(16);
    for (int i = 0; i < 16; ++i) dsg(i) = signs[i];
    const Eigen::MatrixXd ref = oracle::hadamard(16) * dsg.asDiagonal() * padded / 4.0;
    CHECK((oracle::to_eigen(hadamard_rotate(a, signs)) - ref).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("zero matrix gives a zero sketch") {
    const auto out = srht_apply(srht_draw(10, 4, 3), DenseMatrix(10, 3));
    CHECK(out.rows() == 4);
    for (double v : out.data()) CHECK(v == 0.0);
  }
  SUBCASE("unbiased Gram: n = 4, A = I, m = 4") {
    const std::size_t trials = 2000;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 4);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(4, 4);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto g = oracle::to_eigen(gram(srht_apply(srht_draw(4, 4, derive_seed(31, t)), DenseMatrix::identity(4))));
      sum += g;
      sum_sq += g.cwiseProduct(g);
    }
    const double tc = static_cast<double>(trials);
    const Eigen::MatrixXd mean = sum / tc;
    const Eigen::MatrixXd sd = (sum_sq / tc - mean.cwiseProduct(mean)).cwiseMax(0.0).cwiseSqrt();
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        const double target = p == q ? 1.0 : 0.0;
        CHECK(std::abs(mean(p, q) - target) <= 3.0 * sd(p, q) / std::sqrt(tc) + 1e-12);
      }
  }
  CHECK_THROWS_AS(srht_apply(srht_draw(10, 4, 3), DenseMatrix(9, 3)), InvalidArgument);
}

TEST_CASE("rotated leverage scores") {
  SUBCASE("identity block sums to d") {
    const auto s = rotated_leverage_scores(DenseMatrix::identity(8), SymMatrix::zeros(8), std::vector<double>(8, 1.0));
    double sum = 0.0;
    for (double v : s) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(8.0).epsilon(1e-13));
  }
  SUBCASE("sum equals d_eff for a ridge problem with padding") {
    const DenseMatrix a = oracle::random_matrix(50, 4, 17);
    const SymMatrix c = SymMatrix::identity(4, 3.0);
    const auto dr = srht_draw(50, 5, 2);
    const auto s = rotated_leverage_scores(a, c, dr.signs);
    CHECK(s.size() == 64);
    const auto ref = oracle::leverage(a, oracle::to_eigen(c));
    double want = 0.0;
    for (double v : ref) want += v;
    CHECK(effective_dimension(s) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("scores concentrate near d/n") {
    const std::size_t n = 1024;
    const std::size_t d = 16;
    const DenseMatrix a = oracle::random_matrix(n, d, 123);
    const double scale = std::sqrt(d * std::log(static_cast<double>(n))) / n;
    // Calibrate the constant with dense oracle rotations on separate signs.
    const Eigen::MatrixXd e = oracle::to_eigen(a);
    const Eigen::MatrixXd h = oracle::hadamard(n) / std::sqrt(static_cast<double>(n));
    std::mt19937_64 gen(77);
    double calibrated = 0.0;
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd sg(n);
      for (std::size_t i = 0; i < n; ++i) sg(i) = (gen() & 1U) ? 1.0 : -1.0;
      const Eigen::MatrixXd r = h * sg.asDiagonal() * e;
      const Eigen::MatrixXd hat = r * (e.transpose() * e).llt().solve(r.transpose());
      calibrated = std::max(calibrated, (hat.diagonal().array() - double(d) / n).abs().maxCoeff() / scale);
    }
    const double c_prime = 1.5 * calibrated;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto s = rotated_leverage_scores(a, SymMatrix::zeros(d), srht_draw(n, 1, derive_seed(400, t)).signs);
      double worst = 0.0;
      for (double v : s) worst = std::max(worst, std::abs(v - static_cast<double>(d) / n));
      CHECK(worst < c_prime * scale);
    }
    // Raw leverage of a Gaussian matrix is already flat; a spiky matrix is not,
    // yet its rotation is.
    DenseMatrix spiky(n, d);
    for (std::size_t j = 0; j < d; ++j) spiky(j, j) = 1.0;
    for (std::size_t i = d; i < n; ++i) spiky(i, i % d) = 1e-3;
    const auto raw = exact_leverage_scores(spiky, SymMatrix::zeros(d));
    CHECK(*std::max_element(raw.begin(), raw.end()) > 0.5);
    const auto rot = rotated_leverage_scores(spiky, SymMatrix::zeros(d), srht_draw(n, 1, 9).signs);
    CHECK(*std::max_element(rot.begin(), rot.end()) < 0.1);
  }
  SUBCASE("a Hadamard column rotates onto a basis vector") {
    const std::size_t n = 16;
    const Eigen::MatrixXd h = oracle::hadamard(n);
    DenseMatrix col(n, 1);
    for (std::size_t i = 0; i < n; ++i) col(i, 0) = h(i, 5) / std::sqrt(static_cast<double>(n));
    const auto s = rotated_leverage_scores(col, SymMatrix::zeros(1), std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - (i == 5 ? 1.0 : 0.0)) < 1e-12);
  }
  CHECK_THROWS_AS(rotated_leverage_scores(DenseMatrix(4, 2), SymMatrix::zeros(2), std::vector<double>(4, 1.0)),
                  NotPositiveDefinite);
}
