#include "randskew/cli/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "randskew/errors.hpp"
#include "randskew/rng.hpp"

namespace randskew::cli {

namespace {

double parse_number(const std::string& tok, const std::string& where) {
  std::string t = tok;
  t.erase(0, t.find_first_not_of(" \t\r"));
  t.erase(t.find_last_not_of(" \t\r") + 1);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw IoError("ParseError", where + ": '" + tok + "' is not a number");
  }
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("IoError", "cannot open data file '" + path + "'");
  return in;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  auto in = open(path);
  std::vector<double> feats;
  std::vector<double> labels;
  std::size_t cols = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(parse_number(tok, where));
    if (row.size() < 2) throw IoError("ParseError", where + ": need at least one feature and a label");
    if (cols == 0) cols = row.size();
    if (row.size() != cols) throw IoError("ParseError", where + ": expected " + std::to_string(cols) + " fields");
    labels.push_back(row.back());
    feats.insert(feats.end(), row.begin(), row.end() - 1);
  }
  if (labels.empty()) throw IoError("ParseError", path + ": no data rows");
  return {DenseMatrix::from_external(labels.size(), cols - 1, std::move(feats)), std::move(labels)};
}

Dataset load_libsvm(const std::string& path, std::optional<std::size_t> d) {
  auto in = open(path);
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<double> labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    labels.push_back(parse_number(tok, where));
    rows.emplace_back();
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw IoError("ParseError", where + ": '" + tok + "' is not index:value");
      const double idx = parse_number(tok.substr(0, colon), where);
      if (idx < 1 || idx != std::floor(idx)) throw IoError("ParseError", where + ": indices are 1-based integers");
      const auto j = static_cast<std::size_t>(idx);
      rows.back().emplace_back(j - 1, parse_number(tok.substr(colon + 1), where));
      max_index = std::max(max_index, j);
    }
  }
  if (labels.empty()) throw IoError("ParseError", path + ": no data rows");
  const std::size_t cols = d.value_or(max_index);
  if (cols == 0 || max_index > cols) {
    throw IoError("ParseError", path + ": feature index " + std::to_string(max_index) + " exceeds d");
  }
  std::vector<double> data(labels.size() * cols, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto [j, v] : rows[i]) data[i * cols + j] = v;
  return {DenseMatrix::from_external(labels.size(), cols, std::move(data)), std::move(labels)};
}

DenseMatrix counterexample_matrix(std::size_t d) {
  if (d < 1) throw InvalidArgument("counterexample needs d >= 1");
  DenseMatrix a(2 * d, d);
  a(0, 0) = 0.5;
  a(1, 0) = std::sqrt(3.0) / 2.0;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 1; j < d; ++j) {
    a(2 * j, j) = r;
    a(2 * j + 1, j) = r;
  }
  return a;
}

Dataset synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  CounterRng rng(derive_seed(seed, 0));
  DenseMatrix a;
  switch (spec.distribution) {
    case Distribution::Counterexample:
      a = counterexample_matrix(spec.d);
      break;
    case Distribution::Identity:
      a = DenseMatrix::identity(spec.d);
      break;
    default: {
      if (spec.n == 0 || spec.d == 0) throw InvalidArgument("synthetic data needs n, d >= 1");
      a = DenseMatrix(spec.n, spec.d);
      for (double& v : a.data()) v = rng.normal();
      if (spec.distribution == Distribution::Spiked) {
        for (std::size_t i = 0; i < spec.n; ++i)
          for (std::size_t j = 0; j < spec.d; ++j) a(i, j) *= std::pow(spec.decay, static_cast<double>(j));
      }
      if (spec.distribution == Distribution::Coherent) {
        if (spec.heavy_rows > spec.n) throw InvalidArgument("heavy_rows exceeds n");
        const double base = std::sqrt(static_cast<double>(spec.d));
        std::vector<std::size_t> order(spec.n);
        for (std::size_t i = 0; i < spec.n; ++i) order[i] = i;
        for (std::size_t i = 0; i < spec.heavy_rows; ++i) std::swap(order[i], order[i + rng.below(spec.n - i)]);
        std::vector<char> heavy(spec.n, 0);
        for (std::size_t i = 0; i < spec.heavy_rows; ++i) heavy[order[i]] = 1;
        for (std::size_t i = 0; i < spec.n; ++i) {
          auto row = a.row(i);
          const double target = heavy[i] ? 10.0 * base : base;
          const double s = target / norm2(row);
          for (double& v : row) v *= s;
        }
      }
    }
  }

  CounterRng lrng(derive_seed(seed, 1));
  std::vector<double> beta(a.cols());
  const double bs = 1.0 / std::sqrt(static_cast<double>(a.cols()));
  for (double& b : beta) b = bs * lrng.normal();
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double t = dot(a.row(i), beta);
    if (spec.labels == "logistic") {
      y[i] = lrng.uniform() < 1.0 / (1.0 + std::exp(-t)) ? 1.0 : -1.0;
    } else if (spec.labels == "linear") {
      y[i] = t + spec.noise * lrng.normal();
    } else {
      throw InvalidArgument("labels must be 'logistic' or 'linear'");
    }
  }
  return {std::move(a), std::move(y)};
}

void standardize(DenseMatrix& a) {
  const double n = static_cast<double>(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) mean += a(i, j);
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) var += (a(i, j) - mean) * (a(i, j) - mean);
    const double sd = std::sqrt(var / n);
    const double inv = sd > 0.0 ? 1.0 / sd : 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = (a(i, j) - mean) * inv;
  }
}

Distribution parse_distribution(const std::string& name) {
  if (name == "gaussian") return Distribution::GaussianIid;
  if (name == "spiked") return Distribution::Spiked;
  if (name == "coherent") return Distribution::Coherent;
  if (name == "counterexample") return Distribution::Counterexample;
  if (name == "identity") return Distribution::Identity;
  throw InvalidArgument("unknown distribution '" + name + "'");
}

Dataset load_data(const Config& cfg, std::uint64_t seed, bool standardize_columns) {
  const std::string source = cfg.str("source", "synthetic");
  Dataset data;
  if (source == "csv") {
    data = load_csv(cfg.str("path", ""));
  } else if (source == "libsvm") {
    data = load_libsvm(cfg.str("path", ""), cfg.opt_count("d"));
  } else if (source == "synthetic") {
    SyntheticSpec spec;
    spec.distribution = parse_distribution(cfg.str("distribution", "gaussian"));
    spec.d = cfg.count("d", spec.d);
    if (spec.distribution != Distribution::Counterexample && spec.distribution != Distribution::Identity) {
      spec.n = cfg.count("n", spec.n);
    }
    if (spec.distribution == Distribution::Spiked) spec.decay = cfg.real("decay", spec.decay);
    if (spec.distribution == Distribution::Coherent) spec.heavy_rows = cfg.count("heavy_rows", spec.heavy_rows);
    spec.labels = cfg.str("labels", cfg.str("problem", "logistic") == "logistic" ? "logistic" : "linear");
    if (spec.labels == "linear") spec.noise = cfg.real("noise", spec.noise);
    data = synthetic(spec, derive_seed(seed, 0xda7a));
  } else {
    throw InvalidArgument("source must be synthetic, csv or libsvm");
  }
  if (standardize_columns) standardize(data.a);
  return data;
}

}  // namespace randskew::cli
