#pragma once

#include <cstdint>
#include <vector>

#include "nfpf/common.hpp"

namespace nfpf {

// m distinct uniform indices from [0, n_total), seeded.
std::vector<Index> random_select(Index n_total, Index m, std::uint64_t seed);

// k-means with m centers, then for each center (in order) the nearest
// not-yet-picked sample by Euclidean distance.
std::vector<Index> kmeans_distance_select(const Matrix& x, Index m,
                                          std::uint64_t seed);

// Deterministic leverage-score sampling over rows: leverage of sample i is
// the squared norm of row i of the top-`rank` left singular block, i.e. the
// whitened projection onto the top right-singular subspace. Returns the m
// highest-leverage rows, ties to the lower index.
std::vector<Index> dcs_select(const Matrix& x, Index m, Index rank);

}  // namespace nfpf
