#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "nfpf/baselines.hpp"
#include "nfpf/rd_init.hpp"
#include "nfpf/rng.hpp"

using namespace nfpf;
using namespace nfpf::testing;

namespace {

// Two displaced isotropic blobs along e1 with a known midpoint sample at the
// end; feature dimension is kept >= 8 so row-wise correlation is informative.
struct BlobInstance {
  Matrix x;
  Index mid_index;
  Index deep_index;
};

BlobInstance displaced_blobs(std::uint64_t seed, Index per_cluster = 60,
                             Index dim = 8, double offset = 4.0) {
  SplitRng rng(seed);
  BlobInstance inst;
  inst.x.resize(2 * per_cluster + 2, dim);
  for (Index i = 0; i < per_cluster; ++i) {
    for (Index j = 0; j < dim; ++j) inst.x(i, j) = rng.normal();
    inst.x(i, 0) += offset;
  }
  for (Index i = per_cluster; i < 2 * per_cluster; ++i) {
    for (Index j = 0; j < dim; ++j) inst.x(i, j) = rng.normal();
    inst.x(i, 0) -= offset;
  }
  inst.mid_index = 2 * per_cluster;
  inst.deep_index = 2 * per_cluster + 1;
  for (Index j = 0; j < dim; ++j) {
    inst.x(inst.mid_index, j) = rng.normal();
    inst.x(inst.deep_index, j) = rng.normal();
  }
  inst.x(inst.mid_index, 0) = 0.0;            // on the midplane
  inst.x(inst.deep_index, 0) = 1.75 * offset; // beyond cluster 1
  return inst;
}

// Exactly symmetric two-cluster instance: cluster B and its core model are
// the feature-swap images of cluster A's. Swap-invariant samples (x0 == x1)
// sit on the instance's mirror plane.
struct SwapInstance {
  Matrix x;                           // members A, members B, then probes
  std::vector<ClusterModel> models;
  std::vector<double> midplane_dist;  // |x0 - x1| per row
  Index first_probe;
};

SwapInstance swap_symmetric_instance(std::uint64_t seed, Index members = 40,
                                     Index probes = 30, Index dim = 6) {
  Matrix base = subspace_data(members, dim, 3, seed);
  Matrix mirrored = swap_features(base);

  SwapInstance inst;
  inst.x.resize(2 * members + probes, dim);
  inst.x.topRows(members) = base;
  inst.x.middleRows(members, members) = mirrored;

  // probes interpolate from swap-invariant to strongly asymmetric
  SplitRng rng(mix_seed(seed, 9));
  for (Index p = 0; p < probes; ++p) {
    Vector v(dim);
    for (Index j = 0; j < dim; ++j) v(j) = rng.normal();
    const double sym = 0.5 * (v(0) + v(1));
    const double t = static_cast<double>(p) / static_cast<double>(probes - 1);
    const double half_gap = 1.5 * t;
    v(0) = sym + half_gap;
    v(1) = sym - half_gap;
    inst.x.row(2 * members + p) = v.transpose();
  }
  inst.first_probe = 2 * members;

  ClusterModel a;
  a.cluster_id = 0;
  a.model = train_sflm(base, 12, Activation::Sigmoid, RidgeParam{1.0}, seed + 50);
  a.alpha = score_phi(a.model, base).mean();
  for (Index i = 0; i < members; ++i) a.member_indices.push_back(i);

  ClusterModel b;
  b.cluster_id = 1;
  b.model = swap_mirror_model(a.model);
  b.alpha = score_phi(b.model, mirrored).mean();
  for (Index i = members; i < 2 * members; ++i) b.member_indices.push_back(i);

  inst.models = {a, b};
  for (Index i = 0; i < inst.x.rows(); ++i)
    inst.midplane_dist.push_back(std::abs(inst.x(i, 0) - inst.x(i, 1)));
  return inst;
}

}  // namespace

TEST_SUITE("rd_init") {

TEST_CASE("kmeans recovers the means of two separated blobs") {
  SplitRng rng(3);
  Matrix x(80, 2);
  Eigen::RowVector2d mean_a(4.0, 0.0), mean_b(-4.0, 1.0);
  for (Index i = 0; i < 40; ++i)
    x.row(i) = mean_a + 0.3 * Eigen::RowVector2d(rng.normal(), rng.normal());
  for (Index i = 40; i < 80; ++i)
    x.row(i) = mean_b + 0.3 * Eigen::RowVector2d(rng.normal(), rng.normal());
  Eigen::RowVector2d emp_a = x.topRows(40).colwise().mean();
  Eigen::RowVector2d emp_b = x.bottomRows(40).colwise().mean();

  const KmeansResult km = kmeans(x, 2, 11);
  const double d0a = (km.centers.row(0) - emp_a).norm();
  const double d0b = (km.centers.row(0) - emp_b).norm();
  if (d0a < d0b) {
    CHECK(d0a < 0.1);
    CHECK((km.centers.row(1) - emp_b).norm() < 0.1);
  } else {
    CHECK(d0b < 0.1);
    CHECK((km.centers.row(1) - emp_a).norm() < 0.1);
  }
}

TEST_CASE("kmeans with one cluster per point has zero inertia") {
  const Matrix x = random_matrix(12, 3, 8);
  const KmeansResult km = kmeans(x, 12, 5);
  CHECK(km.inertia == doctest::Approx(0.0).epsilon(1e-12));
  std::set<Index> distinct(km.assignments.begin(), km.assignments.end());
  CHECK(distinct.size() == 12);
}

TEST_CASE("kmeans is deterministic per seed") {
  const Matrix x = random_matrix(100, 5, 21);
  const KmeansResult a = kmeans(x, 4, 9);
  const KmeansResult b = kmeans(x, 4, 9);
  CHECK(a.assignments == b.assignments);
  CHECK(a.centers == b.centers);
}

TEST_CASE("kmeans rejects more clusters than points") {
  const Matrix x = random_matrix(5, 2, 1);
  CHECK_THROWS_AS(kmeans(x, 6, 1), Error);
}

TEST_CASE("kmeans keeps every cluster nonempty") {
  // many duplicate points force empty-cluster repair
  Matrix x(20, 2);
  for (Index i = 0; i < 18; ++i) x.row(i) << 1.0, 1.0;
  x.row(18) << -5.0, 0.0;
  x.row(19) << 5.0, 0.0;
  const KmeansResult km = kmeans(x, 3, 4);
  std::vector<int> counts(3, 0);
  for (Index a : km.assignments) ++counts[static_cast<std::size_t>(a)];
  for (int c : counts) CHECK(c > 0);
}

TEST_CASE("train_core_models: disjoint subspace clusters score high alpha") {
  const TwoSubspaces ts = two_subspace_data(50, 12, 3, 41);
  Matrix x(100, 12);
  x.topRows(50) = ts.a;
  x.bottomRows(50) = ts.b;
  std::vector<Index> assign(100, 0);
  for (std::size_t i = 50; i < 100; ++i) assign[i] = 1;

  const auto models =
      train_core_models(x, assign, 16, Activation::Sigmoid, RidgeParam{1.0}, 7);
  REQUIRE(models.size() == 2);
  CHECK(models[0].alpha >= 0.95);
  CHECK(models[1].alpha >= 0.95);
  CHECK(models[0].member_indices.size() == 50);
  CHECK(models[1].member_indices.front() == 50);
}

TEST_CASE("train_core_models: a single cluster reduces to one model") {
  const Matrix x = subspace_data(30, 8, 3, 15);
  const std::vector<Index> assign(30, 0);
  const auto models =
      train_core_models(x, assign, 10, Activation::Sigmoid, RidgeParam{1.0}, 5);
  REQUIRE(models.size() == 1);
  const SflmModel direct =
      train_sflm(x, 10, Activation::Sigmoid, RidgeParam{1.0}, 5);
  CHECK(models[0].model.output_weights == direct.output_weights);
  CHECK(models[0].alpha == doctest::Approx(score_phi(direct, x).mean()));
}

TEST_CASE("train_core_models: per-cluster seeds are offset and reproducible") {
  const Matrix x = random_matrix(40, 6, 3);
  std::vector<Index> assign(40, 0);
  for (std::size_t i = 20; i < 40; ++i) assign[i] = 1;
  const auto run1 =
      train_core_models(x, assign, 8, Activation::Sigmoid, RidgeParam{1.0}, 100);
  const auto run2 =
      train_core_models(x, assign, 8, Activation::Sigmoid, RidgeParam{1.0}, 100);
  CHECK(run1[0].model.seed == 100);
  CHECK(run1[1].model.seed == 101);
  CHECK(run1[0].model.input_weights != run1[1].model.input_weights);
  CHECK(run1[0].model.output_weights == run2[0].model.output_weights);
  CHECK(run1[1].model.output_weights == run2[1].model.output_weights);
}

TEST_CASE("rd_scores: two clusters reduce to the closed form") {
  const SwapInstance inst = swap_symmetric_instance(61);
  const RdResult rd = rd_scores(inst.models, inst.x);
  for (Index i = 0; i < inst.x.rows(); ++i) {
    CHECK(rd.rd(i) ==
          doctest::Approx(std::abs(rd.dist(i, 0) - rd.dist(i, 1))).epsilon(1e-12));
    CHECK(rd.nearest[static_cast<std::size_t>(i)] !=
          rd.second[static_cast<std::size_t>(i)]);
    CHECK(rd.rd(i) >= 0.0);
  }
}

TEST_CASE("rd_scores: swap-symmetric instance pins the midplane sample") {
  const SwapInstance inst = swap_symmetric_instance(62);
  // the mirrored core is a genuine image of the original
  CHECK(inst.models[0].alpha == doctest::Approx(inst.models[1].alpha).epsilon(1e-12));

  const RdResult rd = rd_scores(inst.models, inst.x);
  const Index mid = inst.first_probe;  // probe 0 is exactly swap-invariant
  CHECK(inst.midplane_dist[static_cast<std::size_t>(mid)] == 0.0);
  CHECK(rd.rd(mid) <= 1e-6);

  const auto first = init_subset(rd, 1);
  REQUIRE(first.size() == 1);
  CHECK(first[0] == mid);
}

TEST_CASE("rd_scores: organic pipeline ranks the midpoint below a deep outlier") {
  const BlobInstance inst = displaced_blobs(31);
  const Matrix members = inst.x.topRows(inst.mid_index);
  const KmeansResult km = kmeans(members, 2, 17);
  const auto models = train_core_models(members, km.assignments, 20,
                                        Activation::Sigmoid, RidgeParam{1.0}, 17);
  const RdResult rd = rd_scores(models, inst.x);
  CHECK(rd.rd(inst.mid_index) < rd.rd(inst.deep_index));
}

TEST_CASE("rd_scores: needs at least two clusters") {
  const Matrix x = subspace_data(20, 6, 2, 3);
  std::vector<ClusterModel> one;
  ClusterModel cm;
  cm.model = train_sflm(x, 5, Activation::Sigmoid, RidgeParam{1.0}, 1);
  cm.alpha = 0.9;
  one.push_back(cm);
  CHECK_THROWS_AS(rd_scores(one, x), Error);
}

TEST_CASE("rd is permutation-equivariant over samples") {
  const SwapInstance inst = swap_symmetric_instance(63);
  const RdResult base = rd_scores(inst.models, inst.x);

  std::vector<Index> perm(static_cast<std::size_t>(inst.x.rows()));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<Index>(i);
  SplitRng rng(5);
  for (std::size_t i = 0; i + 1 < perm.size(); ++i)
    std::swap(perm[i], perm[i + rng.index_below(perm.size() - i)]);

  Matrix shuffled(inst.x.rows(), inst.x.cols());
  for (std::size_t i = 0; i < perm.size(); ++i)
    shuffled.row(static_cast<Index>(i)) = inst.x.row(perm[i]);
  const RdResult permuted = rd_scores(inst.models, shuffled);
  // equivariant up to blocked-GEMM summation order
  for (std::size_t i = 0; i < perm.size(); ++i)
    CHECK(permuted.rd(static_cast<Index>(i)) ==
          doctest::Approx(base.rd(perm[i])).epsilon(1e-12));
}

TEST_CASE("rd is invariant to cluster relabeling") {
  const SwapInstance inst = swap_symmetric_instance(64);
  const RdResult base = rd_scores(inst.models, inst.x);
  std::vector<ClusterModel> reversed = {inst.models[1], inst.models[0]};
  reversed[0].cluster_id = 0;
  reversed[1].cluster_id = 1;
  const RdResult flipped = rd_scores(reversed, inst.x);
  for (Index i = 0; i < inst.x.rows(); ++i)
    CHECK(flipped.rd(i) == doctest::Approx(base.rd(i)).epsilon(1e-12));
}

TEST_CASE("init_subset: boundary cases and ordering contract") {
  const SwapInstance inst = swap_symmetric_instance(65);
  const RdResult rd = rd_scores(inst.models, inst.x);

  CHECK(init_subset(rd, 0).empty());

  const auto all = init_subset(rd, inst.x.rows());
  CHECK(static_cast<Index>(all.size()) == inst.x.rows());
  std::set<Index> dedup(all.begin(), all.end());
  CHECK(dedup.size() == all.size());
  for (std::size_t i = 1; i < all.size(); ++i)
    CHECK(rd.rd(all[i - 1]) <= rd.rd(all[i]));

  CHECK_THROWS_AS(init_subset(rd, inst.x.rows() + 1), Error);
  CHECK(init_subset(rd, 5) == init_subset(rd, 5));
}

TEST_CASE("smallest-RD samples concentrate near the instance midplane") {
  // statistical, aggregated over seeds: k lowest-RD samples lie closer to
  // the mirror plane than k random picks
  std::vector<double> chosen_dist, random_dist;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SwapInstance inst = swap_symmetric_instance(700 + seed);
    const RdResult rd = rd_scores(inst.models, inst.x);
    const Index k = 10;
    for (Index idx : init_subset(rd, k))
      chosen_dist.push_back(inst.midplane_dist[static_cast<std::size_t>(idx)]);
    for (Index idx :
         random_select(inst.x.rows(), k, mix_seed(seed, 4)))
      random_dist.push_back(inst.midplane_dist[static_cast<std::size_t>(idx)]);
  }
  CHECK(mean(chosen_dist) < mean(random_dist));
}

TEST_CASE("audit CSV has the documented columns") {
  const SwapInstance inst = swap_symmetric_instance(66);
  const RdResult rd = rd_scores(inst.models, inst.x);
  std::ostringstream os;
  write_rd_audit_csv(os, rd);
  std::string line;
  std::istringstream is(os.str());
  std::getline(is, line);
  CHECK(line == "sample_index,c1,c2,d_c1,d_c2,rd");
  Index rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == inst.x.rows());
}

}  // TEST_SUITE
