#include "nfpf/eval.hpp"

#include <algorithm>
#include <cmath>

#include "nfpf/rng.hpp"

namespace nfpf {

LinearClassifier train_linear_classifier(const Matrix& x_s,
                                         const std::vector<int>& y_s,
                                         int class_count, RidgeParam c) {
  const Index n = x_s.rows();
  require(n >= 1 && static_cast<Index>(y_s.size()) == n,
          ErrorCode::DimensionMismatch,
          "train_linear_classifier: label count differs from row count");
  require(class_count >= 1, ErrorCode::ConfigInvalid,
          "train_linear_classifier: class_count >= 1");
  for (int y : y_s)
    require(y >= 0 && y < class_count, ErrorCode::ConfigInvalid,
            "train_linear_classifier: label outside [0, class_count)");

  LinearClassifier clf;
  clf.class_count = class_count;
  clf.class_present.assign(static_cast<std::size_t>(class_count), 0);
  for (int y : y_s) clf.class_present[static_cast<std::size_t>(y)] = 1;
  for (int k = 0; k < class_count; ++k)
    if (!clf.class_present[static_cast<std::size_t>(k)])
      clf.missing_classes.push_back(k);

  Matrix z(n, x_s.cols() + 1);
  z.leftCols(x_s.cols()) = x_s;
  z.col(x_s.cols()).setOnes();
  Matrix targets = Matrix::Constant(n, class_count, -1.0);
  for (Index i = 0; i < n; ++i)
    targets(i, y_s[static_cast<std::size_t>(i)]) = 1.0;
  clf.weights = solve_output_weights(z, targets, c);
  return clf;
}

std::vector<int> predict(const LinearClassifier& clf, const Matrix& x) {
  require(x.cols() + 1 == clf.weights.rows(), ErrorCode::DimensionMismatch,
          "predict: feature dimension differs from classifier");
  Matrix z(x.rows(), x.cols() + 1);
  z.leftCols(x.cols()) = x;
  z.col(x.cols()).setOnes();
  Matrix scores = z * clf.weights;

  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < x.rows(); ++i) {
    int best = -1;
    double bs = 0.0;
    for (int k = 0; k < clf.class_count; ++k) {
      if (!clf.class_present[static_cast<std::size_t>(k)]) continue;
      if (best < 0 || scores(i, k) > bs) {
        best = k;
        bs = scores(i, k);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

AccuracyReport evaluate_accuracy(const LinearClassifier& clf,
                                 const Matrix& x_test,
                                 const std::vector<int>& y_test) {
  require(x_test.rows() > 0, ErrorCode::EmptyTestSet,
          "evaluate_accuracy: empty test set");
  require(static_cast<Index>(y_test.size()) == x_test.rows(),
          ErrorCode::DimensionMismatch,
          "evaluate_accuracy: label count differs from row count");

  const std::vector<int> pred = predict(clf, x_test);
  AccuracyReport report;
  report.per_class_accuracy.assign(static_cast<std::size_t>(clf.class_count), 0.0);
  report.per_class_total.assign(static_cast<std::size_t>(clf.class_count), 0);
  Index correct = 0;
  for (std::size_t i = 0; i < y_test.size(); ++i) {
    const int y = y_test[i];
    require(y >= 0 && y < clf.class_count, ErrorCode::ConfigInvalid,
            "evaluate_accuracy: test label outside [0, class_count)");
    ++report.per_class_total[static_cast<std::size_t>(y)];
    if (pred[i] == y) {
      ++correct;
      report.per_class_accuracy[static_cast<std::size_t>(y)] += 1.0;
    }
  }
  for (int k = 0; k < clf.class_count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    if (report.per_class_total[idx] > 0)
      report.per_class_accuracy[idx] /=
          static_cast<double>(report.per_class_total[idx]);
  }
  report.accuracy =
      static_cast<double>(correct) / static_cast<double>(y_test.size());
  return report;
}

std::vector<int> inject_label_noise(const std::vector<int>& y, double ratio,
                                    int class_count, std::uint64_t seed) {
  require(ratio >= 0.0 && ratio <= 1.0, ErrorCode::BadRatio,
          "inject_label_noise: ratio must lie in [0, 1]");
  std::vector<int> out = y;
  if (class_count < 2) return out;
  const auto n_corrupt = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(y.size())));
  SplitRng rng(seed);
  const auto rows = rng.sample_without_replacement(y.size(), n_corrupt);
  for (std::size_t r : rows) {
    // uniform over the other class ids
    const auto shift =
        1 + static_cast<int>(rng.index_below(static_cast<std::size_t>(class_count - 1)));
    out[r] = (y[r] + shift) % class_count;
  }
  return out;
}

SubsetStats subset_stats(const std::vector<Index>& indices,
                         const std::vector<int>& y, int class_count) {
  SubsetStats stats;
  stats.histogram.assign(static_cast<std::size_t>(class_count), 0);
  for (Index i : indices) {
    require(i >= 0 && i < static_cast<Index>(y.size()), ErrorCode::ConfigInvalid,
            "subset_stats: index out of range");
    ++stats.histogram[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])];
  }
  if (indices.empty() || class_count < 2) return stats;
  const double total = static_cast<double>(indices.size());
  double entropy = 0.0;
  for (Index count : stats.histogram) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    entropy -= p * std::log(p);
  }
  stats.normalized_entropy = entropy / std::log(static_cast<double>(class_count));
  return stats;
}

std::vector<CurvePoint> learning_curve(const LabeledDataset& candidate,
                                       const LabeledDataset& test,
                                       const Selector& selector,
                                       const std::vector<Index>& m_list,
                                       const std::vector<std::uint64_t>& seeds,
                                       RidgeParam classifier_c) {
  require(!m_list.empty() && !seeds.empty(), ErrorCode::ConfigInvalid,
          "learning_curve: empty budget or seed list");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    require(m_list[i - 1] <= m_list[i], ErrorCode::ConfigInvalid,
            "learning_curve: m_list must be ascending");

  std::vector<CurvePoint> curve;
  for (Index m : m_list) {
    std::vector<double> accs;
    for (std::uint64_t seed : seeds) {
      const std::vector<Index> sel = selector(candidate.features, m, seed);
      Matrix xs(static_cast<Index>(sel.size()), candidate.features.cols());
      std::vector<int> ys(sel.size());
      for (std::size_t r = 0; r < sel.size(); ++r) {
        xs.row(static_cast<Index>(r)) = candidate.features.row(sel[r]);
        ys[r] = candidate.labels[static_cast<std::size_t>(sel[r])];
      }
      const LinearClassifier clf =
          train_linear_classifier(xs, ys, candidate.class_count, classifier_c);
      accs.push_back(evaluate_accuracy(clf, test.features, test.labels).accuracy);
    }
    CurvePoint point;
    point.m = m;
    double mean = 0.0;
    for (double a : accs) mean += a;
    mean /= static_cast<double>(accs.size());
    double var = 0.0;
    for (double a : accs) var += (a - mean) * (a - mean);
    var /= static_cast<double>(accs.size());
    point.mean_accuracy = mean;
    point.std_accuracy = std::sqrt(var);
    curve.push_back(point);
  }
  return curve;
}

}  // namespace nfpf
