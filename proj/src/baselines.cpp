#include "nfpf/baselines.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

#include "nfpf/rd_init.hpp"
#include "nfpf/rng.hpp"

namespace nfpf {

std::vector<Index> random_select(Index n_total, Index m, std::uint64_t seed) {
  require(m >= 0 && m <= n_total, ErrorCode::BudgetTooLarge,
          "random_select: m exceeds n_total");
  SplitRng rng(seed);
  auto raw = rng.sample_without_replacement(static_cast<std::size_t>(n_total),
                                            static_cast<std::size_t>(m));
  return std::vector<Index>(raw.begin(), raw.end());
}

std::vector<Index> kmeans_distance_select(const Matrix& x, Index m,
                                          std::uint64_t seed) {
  require(m >= 0 && m <= x.rows(), ErrorCode::BudgetTooLarge,
          "kmeans_distance_select: m exceeds row count");
  if (m == 0) return {};
  const KmeansResult km = kmeans(x, m, seed);

  std::vector<char> picked(static_cast<std::size_t>(x.rows()), 0);
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    Index best = -1;
    double bd = 0.0;
    for (Index i = 0; i < x.rows(); ++i) {
      if (picked[static_cast<std::size_t>(i)]) continue;
      const double d = (x.row(i) - km.centers.row(j)).squaredNorm();
      if (best < 0 || d < bd) {
        best = i;
        bd = d;
      }
    }
    picked[static_cast<std::size_t>(best)] = 1;
    out.push_back(best);
  }
  return out;
}

std::vector<Index> dcs_select(const Matrix& x, Index m, Index rank) {
  require(m >= 0 && m <= x.rows(), ErrorCode::BudgetTooLarge,
          "dcs_select: m exceeds row count");
  require(rank >= 1 && rank <= std::min(x.rows(), x.cols()),
          ErrorCode::RankTooLarge, "dcs_select: rank out of range");

  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const Matrix& u = svd.matrixU();
  Vector leverage = u.leftCols(rank).rowwise().squaredNorm();

  std::vector<Index> order(static_cast<std::size_t>(x.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (leverage(a) != leverage(b)) return leverage(a) > leverage(b);
    return a < b;
  });
  order.resize(static_cast<std::size_t>(m));
  return order;
}

}  // namespace nfpf
