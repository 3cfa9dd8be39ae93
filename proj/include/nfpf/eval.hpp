#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nfpf/common.hpp"
#include "nfpf/data_io.hpp"
#include "nfpf/linalg.hpp"

namespace nfpf {

// One-vs-rest ridge regression to +-1 targets with an appended bias feature.
// Classes absent from the training labels are flagged and never predicted.
struct LinearClassifier {
  Matrix weights;  // (d+1) x K
  std::vector<char> class_present;
  int class_count = 0;
  std::vector<int> missing_classes;
};

LinearClassifier train_linear_classifier(const Matrix& x_s,
                                         const std::vector<int>& y_s,
                                         int class_count, RidgeParam c);

std::vector<int> predict(const LinearClassifier& clf, const Matrix& x);

struct AccuracyReport {
  double accuracy = 0.0;
  std::vector<double> per_class_accuracy;
  std::vector<Index> per_class_total;
};

AccuracyReport evaluate_accuracy(const LinearClassifier& clf,
                                 const Matrix& x_test,
                                 const std::vector<int>& y_test);

// Symmetric label noise: exactly floor(ratio * n) seeded rows reassigned
// to a uniformly drawn different class.
std::vector<int> inject_label_noise(const std::vector<int>& y, double ratio,
                                    int class_count, std::uint64_t seed);

struct SubsetStats {
  std::vector<Index> histogram;     // per-class counts, sums to |indices|
  double normalized_entropy = 0.0;  // entropy / log(class_count), in [0, 1]
};

SubsetStats subset_stats(const std::vector<Index>& indices,
                         const std::vector<int>& y, int class_count);

using Selector =
    std::function<std::vector<Index>(const Matrix& candidates, Index m,
                                     std::uint64_t seed)>;

struct CurvePoint {
  Index m = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
};

// For each budget and seed: select on candidate features (label-blind),
// attach labels to the selected rows only, train, evaluate on the test set.
std::vector<CurvePoint> learning_curve(const LabeledDataset& candidate,
                                       const LabeledDataset& test,
                                       const Selector& selector,
                                       const std::vector<Index>& m_list,
                                       const std::vector<std::uint64_t>& seeds,
                                       RidgeParam classifier_c);

}  // namespace nfpf
