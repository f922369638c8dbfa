#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace randskew {

/// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  /// Throws InvalidArgument when data.size() != rows*cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Same as the data constructor, but additionally rejects NaN/Inf entries
  /// (NonFiniteInput). Use for anything read from outside the process.
  static DenseMatrix from_external(std::size_t rows, std::size_t cols, std::vector<double> data);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  double frobenius_norm() const;
  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square symmetric matrix. Construction checks symmetry to 1e-12 relative
/// (Frobenius) and stores the exactly symmetrized average. Positive
/// (semi)definiteness is checked by the operations that need it.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(DenseMatrix m);
  static SymMatrix identity(std::size_t n, double scale = 1.0);
  static SymMatrix zeros(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const DenseMatrix& dense() const noexcept { return m_; }
  double trace() const;

  /// Smallest eigenvalue >= -1e-10 * largest |eigenvalue|.
  bool is_numerically_psd() const;

 private:
  struct Trusted {};
  SymMatrix(DenseMatrix m, Trusted) : m_(std::move(m)) {}
  friend SymMatrix make_symmetric_unchecked(DenseMatrix m);

  DenseMatrix m_;
};

/// Internal fast path for matrices symmetric by construction (Gram products).
SymMatrix make_symmetric_unchecked(DenseMatrix m);

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);
std::vector<double> matvec(const SymMatrix& a, std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// A^T A.
SymMatrix gram(const DenseMatrix& a);
/// A^T diag(w) A.
SymMatrix weighted_gram(const DenseMatrix& a, std::span<const double> w);
/// S^T M S for symmetric M and square S (congruence).
SymMatrix congruence(const SymMatrix& m, const SymMatrix& s);

/// Lower-triangular L with L L^T = M.
class LowerTriangularFactor {
 public:
  explicit LowerTriangularFactor(DenseMatrix l) : l_(std::move(l)) {}

  std::size_t dim() const noexcept { return l_.rows(); }
  const DenseMatrix& lower() const noexcept { return l_; }

  /// In-place L^{-1} x.
  void forward_solve(std::span<double> x) const;
  /// In-place L^{-T} x.
  void backward_solve(std::span<double> x) const;
  std::vector<double> solve(std::span<const double> b) const;
  /// Column-wise M^{-1} B.
  DenseMatrix solve(const DenseMatrix& b) const;
  SymMatrix inverse() const;
  /// Rows z_i = L^{-1} a_i for each row a_i, so ||z_i||^2 = a_i^T M^{-1} a_i.
  DenseMatrix whiten_rows(const DenseMatrix& a) const;

 private:
  DenseMatrix l_;
};

/// Fails with NotPositiveDefinite when a pivot drops below 1e-14 * trace / dim.
LowerTriangularFactor cholesky(const SymMatrix& m);
DenseMatrix solve_spd(const SymMatrix& m, const DenseMatrix& b);
std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> b);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k pairs with values[k]
};

/// Cyclic Jacobi sweeps; stops once the off-diagonal Frobenius mass falls
/// below 1e-12 * ||M||_F.
EigenDecomposition symmetric_eigen(const SymMatrix& m);

/// Largest |eigenvalue| by power iteration, started from the normalized
/// all-ones vector and cross-checked from a fixed pseudo-random start. When
/// the iteration cap is hit, falls back to the Jacobi eigensolver.
double spectral_norm(const SymMatrix& m, double tol = 1e-10, std::size_t max_iters = 10'000);

/// Smallest eps with (1+eps)^{-1} X <= X_hat <= (1+eps) X; +inf when X_hat has a
/// nonpositive generalized eigenvalue. Throws NotPositiveDefinite for X.
double psd_relative_error(const SymMatrix& x_hat, const SymMatrix& x);

SymMatrix inv_sqrt(const SymMatrix& m);
SymMatrix sqrt_psd(const SymMatrix& m);

}  // namespace randskew
