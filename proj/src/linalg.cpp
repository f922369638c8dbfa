#include "randskew/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "randskew/errors.hpp"
#include "randskew/rng.hpp"

namespace randskew {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("ShapeMismatch", "data length " + std::to_string(data_.size()) +
                                               " does not match " + std::to_string(rows_) + "x" +
                                               std::to_string(cols_));
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ShapeMismatch", "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::from_external(std::size_t rows, std::size_t cols, std::vector<double> data) {
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!std::isfinite(data[k])) {
      throw IoError("NonFiniteInput", "non-finite entry at row " + std::to_string(cols ? k / cols : 0) +
                                          ", column " + std::to_string(cols ? k % cols : 0));
    }
  }
  return DenseMatrix(rows, cols, std::move(data));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(DenseMatrix m) {
  if (m.rows() != m.cols()) throw InvalidArgument("ShapeMismatch", "symmetric matrix must be square");
  const std::size_t n = m.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = m(i, j) - m(j, i);
      asym += 2.0 * diff * diff;
    }
  if (std::sqrt(asym) > 1e-12 * m.frobenius_norm()) {
    throw InvalidArgument("NotSymmetric", "matrix is not symmetric within 1e-12 relative tolerance");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  m_ = std::move(m);
}

SymMatrix make_symmetric_unchecked(DenseMatrix m) { return SymMatrix(std::move(m), SymMatrix::Trusted{}); }

SymMatrix SymMatrix::identity(std::size_t n, double scale) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
  return make_symmetric_unchecked(std::move(m));
}

SymMatrix SymMatrix::zeros(std::size_t n) { return make_symmetric_unchecked(DenseMatrix(n, n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return make_symmetric_unchecked(std::move(m));
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

bool SymMatrix::is_numerically_psd() const {
  if (dim() == 0) return true;
  const auto eig = symmetric_eigen(*this);
  const double largest = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  return eig.values.front() >= -1e-10 * largest;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("ShapeMismatch", "dimension mismatch in sum");
  DenseMatrix r = a.dense();
  auto rd = r.data();
  auto bd = b.dense().data();
  for (std::size_t k = 0; k < rd.size(); ++k) rd[k] += bd[k];
  return make_symmetric_unchecked(std::move(r));
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("ShapeMismatch", "dimension mismatch in difference");
  DenseMatrix r = a.dense();
  auto rd = r.data();
  auto bd = b.dense().data();
  for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= bd[k];
  return make_symmetric_unchecked(std::move(r));
}

SymMatrix operator*(double s, const SymMatrix& a) {
  DenseMatrix r = a.dense();
  for (double& v : r.data()) v *= s;
  return make_symmetric_unchecked(std::move(r));
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("ShapeMismatch", "inner dimensions differ in matmul");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InvalidArgument("ShapeMismatch", "matvec dimension mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

std::vector<double> matvec(const SymMatrix& a, std::span<const double> x) { return matvec(a.dense(), x); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

SymMatrix mirror_upper(DenseMatrix g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return make_symmetric_unchecked(std::move(g));
}

}  // namespace

SymMatrix gram(const DenseMatrix& a) {
  const std::size_t d = a.cols();
  DenseMatrix g(d, d);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto ar = a.row(r);
    for (std::size_t i = 0; i < d; ++i) {
      const double ai = ar[i];
      if (ai == 0.0) continue;
      auto gi = g.row(i);
      for (std::size_t j = i; j < d; ++j) gi[j] += ai * ar[j];
    }
  }
  return mirror_upper(std::move(g));
}

SymMatrix weighted_gram(const DenseMatrix& a, std::span<const double> w) {
  if (w.size() != a.rows()) throw InvalidArgument("ShapeMismatch", "weight count differs from row count");
  const std::size_t d = a.cols();
  DenseMatrix g(d, d);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (w[r] == 0.0) continue;
    auto ar = a.row(r);
    for (std::size_t i = 0; i < d; ++i) {
      const double ai = w[r] * ar[i];
      if (ai == 0.0) continue;
      auto gi = g.row(i);
      for (std::size_t j = i; j < d; ++j) gi[j] += ai * ar[j];
    }
  }
  return mirror_upper(std::move(g));
}

SymMatrix congruence(const SymMatrix& m, const SymMatrix& s) {
  const DenseMatrix ms = matmul(m.dense(), s.dense());
  DenseMatrix r = matmul(s.dense(), ms);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = i + 1; j < r.cols(); ++j) {
      const double avg = 0.5 * (r(i, j) + r(j, i));
      r(i, j) = avg;
      r(j, i) = avg;
    }
  return make_symmetric_unchecked(std::move(r));
}

// ---------------------------------------------------------------------------

LowerTriangularFactor cholesky(const SymMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return LowerTriangularFactor(DenseMatrix());
  const double threshold = 1e-14 * m.trace() / static_cast<double>(n);
  if (!(threshold > 0.0)) throw NotPositiveDefinite(0);
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    auto lj = l.row(j);
    for (std::size_t k = 0; k < j; ++k) diag -= lj[k] * lj[k];
    if (!(diag > threshold)) throw NotPositiveDefinite(j);
    const double ljj = std::sqrt(diag);
    lj[j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      auto li = l.row(i);
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      li[j] = s / ljj;
    }
  }
  return LowerTriangularFactor(std::move(l));
}

void LowerTriangularFactor::forward_solve(std::span<double> x) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l_.row(i);
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * x[k];
    x[i] = s / li[i];
  }
}

void LowerTriangularFactor::backward_solve(std::span<double> x) const {
  const std::size_t n = dim();
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l_(k, ii) * x[k];
    x[ii] = s / l_(ii, ii);
  }
}

std::vector<double> LowerTriangularFactor::solve(std::span<const double> b) const {
  if (b.size() != dim()) throw InvalidArgument("ShapeMismatch", "right-hand side length differs from dim");
  std::vector<double> x(b.begin(), b.end());
  forward_solve(x);
  backward_solve(x);
  return x;
}

DenseMatrix LowerTriangularFactor::solve(const DenseMatrix& b) const {
  if (b.rows() != dim()) throw InvalidArgument("ShapeMismatch", "right-hand side rows differ from dim");
  DenseMatrix x(b.rows(), b.cols());
  std::vector<double> col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    forward_solve(col);
    backward_solve(col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = col[i];
  }
  return x;
}

SymMatrix LowerTriangularFactor::inverse() const {
  const std::size_t n = dim();
  // Only the lower triangle of L^{-1} is nonzero; M^{-1} = L^{-T} L^{-1}.
  DenseMatrix linv(n, n);
  std::vector<double> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    forward_solve(e);
    for (std::size_t i = 0; i < n; ++i) linv(i, j) = e[i];
  }
  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = j; k < n; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return make_symmetric_unchecked(std::move(inv));
}

DenseMatrix LowerTriangularFactor::whiten_rows(const DenseMatrix& a) const {
  if (a.cols() != dim()) throw InvalidArgument("ShapeMismatch", "row length differs from factor dim");
  DenseMatrix z = a;
  for (std::size_t i = 0; i < z.rows(); ++i) forward_solve(z.row(i));
  return z;
}

DenseMatrix solve_spd(const SymMatrix& m, const DenseMatrix& b) { return cholesky(m).solve(b); }

std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> b) { return cholesky(m).solve(b); }

// ---------------------------------------------------------------------------

EigenDecomposition symmetric_eigen(const SymMatrix& m) {
  const std::size_t n = m.dim();
  DenseMatrix a = m.dense();
  DenseMatrix v = DenseMatrix::identity(n);
  const double fro = a.frobenius_norm();
  constexpr std::size_t kMaxSweeps = 100;

  for (std::size_t sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-12 * fro) break;
    if (sweep == kMaxSweeps) throw NoConvergence(kMaxSweeps, "Jacobi eigenvalue sweeps");

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {

// Returns -1 when the start vector lies in the null space (stagnation) and
// NaN when the iteration cap is hit.
double power_run(const SymMatrix& m, std::vector<double> v, double tol, std::size_t max_iters) {
  double nrm = norm2(v);
  for (double& x : v) x /= nrm;
  double estimate = 0.0;
  // ||M v_k|| is nondecreasing for symmetric M, so a tiny increment means the
  // estimate has settled; the 1e-3 factor absorbs slow geometric tails.
  const double stop = 1e-3 * tol;
  for (std::size_t k = 0; k < max_iters; ++k) {
    std::vector<double> w = matvec(m, v);
    nrm = norm2(w);
    if (nrm == 0.0) return k == 0 ? -1.0 : 0.0;
    if (k > 0 && nrm - estimate <= stop * nrm) return nrm;
    estimate = nrm;
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nrm;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double max_abs_eigenvalue(const SymMatrix& m) {
  const auto values = symmetric_eigen(m).values;
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

}  // namespace

double spectral_norm(const SymMatrix& m, double tol, std::size_t max_iters) {
  const std::size_t n = m.dim();
  if (n == 0) throw InvalidArgument("spectral_norm needs dim >= 1");
  if (m.dense().frobenius_norm() == 0.0) return 0.0;

  CounterRng rng(0x5eed5eedULL);
  auto random_start = [&] {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    return v;
  };

  double best = power_run(m, std::vector<double>(n, 1.0), tol, max_iters);
  for (int attempt = 0; best < 0.0 && attempt < 8; ++attempt) best = power_run(m, random_start(), tol, max_iters);
  // A second start guards against the all-ones vector being orthogonal to the
  // dominant eigenvector.
  const double second = std::isnan(best) ? best : power_run(m, random_start(), tol, max_iters);
  if (std::isnan(best) || std::isnan(second)) {
    // Near-tied top pair (often of opposite sign): the iterate keeps rotating
    // although its norm is already close. Jacobi settles it directly.
    const double exact = max_abs_eigenvalue(m);
    if (!std::isfinite(exact)) throw NoConvergence(max_iters, "power iteration for spectral norm");
    return exact;
  }
  return std::max({best, second, 0.0});
}

double psd_relative_error(const SymMatrix& x_hat, const SymMatrix& x) {
  if (x_hat.dim() != x.dim()) throw InvalidArgument("ShapeMismatch", "psd_relative_error dimension mismatch");
  const auto l = cholesky(x);
  const std::size_t n = x.dim();
  // B = L^{-1} X_hat L^{-T}, whose eigenvalues are those of X^{-1/2} X_hat X^{-1/2}.
  DenseMatrix y = x_hat.dense();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = y(i, j);
    l.forward_solve(col);
    for (std::size_t i = 0; i < n; ++i) y(i, j) = col[i];
  }
  DenseMatrix b = y.transpose();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    l.forward_solve(col);
    for (std::size_t i = 0; i < n; ++i) b(i, j) = col[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = avg;
      b(j, i) = avg;
    }
  const auto eig = symmetric_eigen(make_symmetric_unchecked(std::move(b)));
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max({hi - 1.0, 1.0 / lo - 1.0, 0.0});
}

namespace {

SymMatrix spectral_map(const SymMatrix& m, double (*fn)(double), bool allow_singular) {
  auto eig = symmetric_eigen(m);
  const std::size_t n = m.dim();
  const double largest = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  for (std::size_t k = 0; k < n; ++k) {
    if (allow_singular && eig.values[k] >= -1e-10 * largest) {
      eig.values[k] = std::max(eig.values[k], 0.0);
    } else if (!(eig.values[k] > 1e-14 * largest)) {
      throw NotPositiveDefinite(k);
    }
  }
  DenseMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = fn(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = f * eig.vectors(i, k);
      for (std::size_t j = i; j < n; ++j) r(i, j) += vik * eig.vectors(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) r(i, j) = r(j, i);
  return make_symmetric_unchecked(std::move(r));
}

}  // namespace

SymMatrix inv_sqrt(const SymMatrix& m) {
  return spectral_map(m, [](double x) { return 1.0 / std::sqrt(x); }, false);
}

SymMatrix sqrt_psd(const SymMatrix& m) {
  return spectral_map(m, [](double x) { return std::sqrt(x); }, true);
}

}  // namespace randskew
