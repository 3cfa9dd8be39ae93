#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nfpf/common.hpp"
#include "nfpf/sflm.hpp"

namespace nfpf {

struct KmeansResult {
  Matrix centers;                     // C x d
  std::vector<Index> assignments;     // one cluster id per sample row
  double inertia = 0.0;
  int iterations = 0;
};

// Lloyd's algorithm with k-means++ seeding; deterministic per seed.
// Empty clusters are re-seeded to the point farthest from its center.
KmeansResult kmeans(const Matrix& x, Index num_clusters, std::uint64_t seed,
                    int max_iter = 100);

struct ClusterModel {
  Index cluster_id = 0;
  SflmModel model;
  double alpha = 0.0;                 // mean training phi on the cluster members
  std::vector<Index> member_indices;
};

// One SFLM per cluster, trained on that cluster's member rows with seed
// offset by the cluster id. alpha_c summarizes training performance.
std::vector<ClusterModel> train_core_models(const Matrix& x,
                                            const std::vector<Index>& assignments,
                                            Index hidden_size,
                                            Activation activation, RidgeParam c,
                                            std::uint64_t seed);

struct RdResult {
  Matrix phi;                  // u x C score matrix
  Matrix dist;                 // d_ic = |phi_ic - alpha_c|
  Vector rd;                   // |d_{i,c1} - d_{i,c2}|
  std::vector<Index> nearest;  // c1, argmin_c d_ic
  std::vector<Index> second;   // c2, second argmin
};

// Boundary-proximity scores for every sample against every cluster core.
// Ties in the nearest/second-nearest cores go to the lower cluster index.
RdResult rd_scores(const std::vector<ClusterModel>& models, const Matrix& x_all);

// Indices of the k smallest-RD samples, ascending RD, ties by sample index.
std::vector<Index> init_subset(const RdResult& rd, Index k);

// Audit dump: sample_index, c1, c2, d_c1, d_c2, rd.
void write_rd_audit_csv(std::ostream& os, const RdResult& rd);

}  // namespace nfpf
