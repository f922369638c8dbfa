#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randskew/cli/config.hpp"
#include "randskew/linalg.hpp"

namespace randskew::cli {

enum class Distribution { GaussianIid, Spiked, Coherent, Counterexample, Identity };

/// Seeded generator settings. Spiked scales column j by decay^j; Coherent
/// multiplies `heavy_rows` Gaussian rows by 10; Counterexample is the n = 2d
/// matrix with rows e1/2, (sqrt(3)/2) e1 and pairs e_j/sqrt(2).
struct SyntheticSpec {
  std::size_t n = 1024;
  std::size_t d = 32;
  Distribution distribution = Distribution::GaussianIid;
  double decay = 0.9;
  std::size_t heavy_rows = 8;
  /// "logistic" draws y ~ Bernoulli(sigmoid(a^T beta_true)) in {-1,+1};
  /// "linear" draws y = a^T beta_true + noise * N(0,1).
  std::string labels = "logistic";
  double noise = 0.1;
};

struct Dataset {
  DenseMatrix a;
  std::vector<double> y;
};

/// Rows "f1,...,fd,label"; ParseError names the offending line.
Dataset load_csv(const std::string& path);
/// "label idx:val ..." with 1-based indices; `d` defaults to the largest index.
Dataset load_libsvm(const std::string& path, std::optional<std::size_t> d = std::nullopt);
Dataset synthetic(const SyntheticSpec& spec, std::uint64_t seed);
DenseMatrix counterexample_matrix(std::size_t d);
/// Per-column z-scoring; constant columns are only centered.
void standardize(DenseMatrix& a);

Distribution parse_distribution(const std::string& name);
/// Reads source/path/n/d/distribution/... from the config.
Dataset load_data(const Config& cfg, std::uint64_t seed, bool standardize_columns);

}  // namespace randskew::cli
