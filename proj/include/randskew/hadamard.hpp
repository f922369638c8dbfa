#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "randskew/linalg.hpp"
#include "randskew/sampling.hpp"

namespace randskew {

bool is_power_of_two(std::size_t n) noexcept;
/// Least power of two >= n (1 for n == 0).
std::size_t next_power_of_two(std::size_t n);

/// Unnormalized Walsh-Hadamard transform H_n v; throws NotPowerOfTwo.
void fwht_inplace(std::span<double> v);
/// H_n applied to the row dimension of `a` (each column transformed).
void fwht_rows(DenseMatrix& a);

/// Signs D_n plus a uniform row sample of H_n D_n A / sqrt(n_padded).
struct SrhtDraw {
  std::vector<double> signs;
  SketchDraw sample;  // weights sqrt(n_padded / m)
  std::size_t n_original = 0;
  std::size_t n_padded = 0;
};

SrhtDraw srht_draw(std::size_t n, std::size_t m, std::uint64_t seed);
/// Test path: the given signs with every padded row kept once at weight 1.
SrhtDraw srht_full_draw(std::vector<double> signs, std::size_t n_original);

/// H_n D_n A / sqrt(n_padded), A zero-padded to n_padded rows.
DenseMatrix hadamard_rotate(const DenseMatrix& a, std::span<const double> signs);

/// m x d sketch S H_n D_n A / sqrt(n_padded).
DenseMatrix srht_apply(const SrhtDraw& draw, const DenseMatrix& a);

/// Leverage scores of the rotated matrix, one per padded row; they sum to d_eff(A).
std::vector<double> rotated_leverage_scores(const DenseMatrix& a, const SymMatrix& c, std::span<const double> signs);

}  // namespace randskew
