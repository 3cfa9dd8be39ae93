#include "nfpf/rd_init.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "nfpf/rng.hpp"

namespace nfpf {

namespace {

Vector squared_dist_to(const Matrix& x, const Eigen::RowVectorXd& center) {
  return (x.rowwise() - center).rowwise().squaredNorm();
}

}  // namespace

KmeansResult kmeans(const Matrix& x, Index num_clusters, std::uint64_t seed,
                    int max_iter) {
  const Index n = x.rows();
  require(num_clusters >= 1 && num_clusters <= n, ErrorCode::TooManyClusters,
          "kmeans: num_clusters must be in [1, n]");
  require(max_iter >= 1, ErrorCode::ConfigInvalid, "kmeans: max_iter >= 1");

  SplitRng rng(seed);
  Matrix centers(num_clusters, x.cols());

  // k-means++ seeding
  centers.row(0) = x.row(static_cast<Index>(rng.index_below(static_cast<std::size_t>(n))));
  Vector d2 = squared_dist_to(x, centers.row(0));
  for (Index j = 1; j < num_clusters; ++j) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double r = rng.uniform01() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > r) {  // strict: zero-weight (already-chosen) points never trigger
          pick = i;
          break;
        }
      }
    } else {
      // all residual distances zero (duplicate-heavy input); take the first
      // sample not already used as a center
      for (Index i = 0; i < n; ++i) {
        bool used = false;
        for (Index jj = 0; jj < j; ++jj)
          if ((x.row(i) - centers.row(jj)).squaredNorm() == 0.0) used = true;
        if (!used) {
          pick = i;
          break;
        }
      }
    }
    centers.row(j) = x.row(pick);
    d2 = d2.cwiseMin(squared_dist_to(x, centers.row(j)));
  }

  KmeansResult result;
  result.assignments.assign(static_cast<std::size_t>(n), 0);
  std::vector<Index> counts(static_cast<std::size_t>(num_clusters), 0);

  for (int it = 0; it < max_iter; ++it) {
    // assignment step, ties to the lower cluster index
    bool changed = false;
    Matrix dist(n, num_clusters);
    for (Index j = 0; j < num_clusters; ++j)
      dist.col(j) = squared_dist_to(x, centers.row(j));
    std::fill(counts.begin(), counts.end(), 0);
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      double bd = dist(i, 0);
      for (Index j = 1; j < num_clusters; ++j)
        if (dist(i, j) < bd) {
          bd = dist(i, j);
          best = j;
        }
      if (result.assignments[static_cast<std::size_t>(i)] != best) changed = true;
      result.assignments[static_cast<std::size_t>(i)] = best;
      ++counts[static_cast<std::size_t>(best)];
    }

    // re-seed any empty cluster to the point farthest from its center
    for (Index j = 0; j < num_clusters; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) continue;
      Index far = 0;
      double fd = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(
                result.assignments[static_cast<std::size_t>(i)])] <= 1)
          continue;  // do not empty another cluster
        const double di = dist(i, result.assignments[static_cast<std::size_t>(i)]);
        if (di > fd) {
          fd = di;
          far = i;
        }
      }
      --counts[static_cast<std::size_t>(
          result.assignments[static_cast<std::size_t>(far)])];
      result.assignments[static_cast<std::size_t>(far)] = j;
      ++counts[static_cast<std::size_t>(j)];
      centers.row(j) = x.row(far);
      changed = true;
    }

    if (!changed && it > 0) {
      result.iterations = it;
      break;
    }

    // update step
    centers.setZero();
    for (Index i = 0; i < n; ++i)
      centers.row(result.assignments[static_cast<std::size_t>(i)]) += x.row(i);
    for (Index j = 0; j < num_clusters; ++j)
      centers.row(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
    result.iterations = it + 1;
  }

  result.centers = centers;
  result.inertia = 0.0;
  for (Index i = 0; i < n; ++i)
    result.inertia +=
        (x.row(i) - centers.row(result.assignments[static_cast<std::size_t>(i)]))
            .squaredNorm();
  return result;
}

std::vector<ClusterModel> train_core_models(const Matrix& x,
                                            const std::vector<Index>& assignments,
                                            Index hidden_size,
                                            Activation activation, RidgeParam c,
                                            std::uint64_t seed) {
  require(static_cast<Index>(assignments.size()) == x.rows(),
          ErrorCode::DimensionMismatch,
          "train_core_models: assignments must cover all rows");
  Index num_clusters = 0;
  for (Index a : assignments) num_clusters = std::max(num_clusters, a + 1);

  std::vector<ClusterModel> models;
  models.reserve(static_cast<std::size_t>(num_clusters));
  for (Index cid = 0; cid < num_clusters; ++cid) {
    ClusterModel cm;
    cm.cluster_id = cid;
    for (Index i = 0; i < x.rows(); ++i)
      if (assignments[static_cast<std::size_t>(i)] == cid)
        cm.member_indices.push_back(i);
    require(!cm.member_indices.empty(), ErrorCode::TooManyClusters,
            "train_core_models: empty cluster " + std::to_string(cid));

    Matrix members(static_cast<Index>(cm.member_indices.size()), x.cols());
    for (std::size_t r = 0; r < cm.member_indices.size(); ++r)
      members.row(static_cast<Index>(r)) = x.row(cm.member_indices[r]);

    cm.model = train_sflm(members, hidden_size, activation, c,
                          seed + static_cast<std::uint64_t>(cid));
    cm.alpha = score_phi(cm.model, members).mean();
    models.push_back(std::move(cm));
  }
  return models;
}

RdResult rd_scores(const std::vector<ClusterModel>& models, const Matrix& x_all) {
  const Index num_clusters = static_cast<Index>(models.size());
  require(num_clusters >= 2, ErrorCode::NeedTwoClusters,
          "rd_scores: need at least 2 cluster models");
  const Index n = x_all.rows();

  RdResult out;
  out.phi.resize(n, num_clusters);
  out.dist.resize(n, num_clusters);
  for (Index c = 0; c < num_clusters; ++c) {
    out.phi.col(c) = score_phi(models[static_cast<std::size_t>(c)].model, x_all);
    out.dist.col(c) =
        (out.phi.col(c).array() - models[static_cast<std::size_t>(c)].alpha)
            .abs();
  }

  out.rd.resize(n);
  out.nearest.resize(static_cast<std::size_t>(n));
  out.second.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Index c1 = 0, c2 = 1;
    if (out.dist(i, 1) < out.dist(i, 0)) {
      c1 = 1;
      c2 = 0;
    }
    for (Index c = 2; c < num_clusters; ++c) {
      if (out.dist(i, c) < out.dist(i, c1)) {
        c2 = c1;
        c1 = c;
      } else if (out.dist(i, c) < out.dist(i, c2)) {
        c2 = c;
      }
    }
    out.nearest[static_cast<std::size_t>(i)] = c1;
    out.second[static_cast<std::size_t>(i)] = c2;
    out.rd(i) = std::abs(out.dist(i, c1) - out.dist(i, c2));
  }
  return out;
}

std::vector<Index> init_subset(const RdResult& rd, Index k) {
  const Index n = rd.rd.size();
  require(k >= 0 && k <= n, ErrorCode::BudgetTooLarge,
          "init_subset: k exceeds sample count");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (rd.rd(a) != rd.rd(b)) return rd.rd(a) < rd.rd(b);
    return a < b;
  });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

void write_rd_audit_csv(std::ostream& os, const RdResult& rd) {
  char buf[32];
  const auto fmt = [&buf](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  };
  os << "sample_index,c1,c2,d_c1,d_c2,rd\n";
  for (Index i = 0; i < rd.rd.size(); ++i) {
    const Index c1 = rd.nearest[static_cast<std::size_t>(i)];
    const Index c2 = rd.second[static_cast<std::size_t>(i)];
    os << i << ',' << c1 << ',' << c2 << ',' << fmt(rd.dist(i, c1)) << ','
       << fmt(rd.dist(i, c2)) << ',' << fmt(rd.rd(i)) << '\n';
  }
}

}  // namespace nfpf
