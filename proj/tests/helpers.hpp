#pragma once

// Synthetic constructions shared across the test suites.

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "nfpf/common.hpp"
#include "nfpf/rng.hpp"
#include "nfpf/sflm.hpp"

namespace nfpf::testing {

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed,
                            bool gaussian = true) {
  SplitRng rng(seed);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = gaussian ? rng.normal() : rng.uniform(-1.0, 1.0);
  return m;
}

// Orthonormal basis of a random `rank`-dimensional subspace of R^dim.
inline Matrix random_basis(Index dim, Index rank, std::uint64_t seed) {
  Matrix a = random_matrix(dim, rank, seed);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(dim, rank);
}

// n samples lying exactly on a rank-dimensional subspace of R^dim.
inline Matrix subspace_data(Index n, Index dim, Index rank, std::uint64_t seed) {
  Matrix basis = random_basis(dim, rank, seed);
  Matrix coeff = random_matrix(n, rank, mix_seed(seed, 1));
  return coeff * basis.transpose();
}

// Two mutually orthogonal subspaces of R^dim with n samples on each.
struct TwoSubspaces {
  Matrix a;       // n x dim, on subspace A
  Matrix b;       // n x dim, on subspace B
  Matrix basis_a; // dim x rank
  Matrix basis_b;
};

inline TwoSubspaces two_subspace_data(Index n, Index dim, Index rank,
                                      std::uint64_t seed) {
  Matrix joint = random_basis(dim, 2 * rank, seed);
  TwoSubspaces out;
  out.basis_a = joint.leftCols(rank);
  out.basis_b = joint.rightCols(rank);
  out.a = random_matrix(n, rank, mix_seed(seed, 2)) * out.basis_a.transpose();
  out.b = random_matrix(n, rank, mix_seed(seed, 3)) * out.basis_b.transpose();
  return out;
}

// Mirror image of a model under the feature swap (0 <-> 1): processes
// swapped inputs exactly as the original processes the originals.
inline SflmModel swap_mirror_model(const SflmModel& model) {
  SflmModel mirrored = model;
  mirrored.input_weights.row(0).swap(mirrored.input_weights.row(1));
  mirrored.output_weights.col(0).swap(mirrored.output_weights.col(1));
  return mirrored;
}

inline Matrix swap_features(const Matrix& x) {
  Matrix out = x;
  out.col(0).swap(out.col(1));
  return out;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace nfpf::testing
