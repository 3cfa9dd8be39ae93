#include <doctest.h>

#include <cmath>

#include <Eigen/QR>

#include "helpers.hpp"
#include "nfpf/baselines.hpp"
#include "nfpf/data_io.hpp"
#include "nfpf/eval.hpp"

using namespace nfpf;
using namespace nfpf::testing;

TEST_SUITE("eval") {

TEST_CASE("classifier: linearly separable blobs reach perfect training accuracy") {
  SplitRng rng(2);
  Matrix x(40, 2);
  std::vector<int> y(40);
  for (Index i = 0; i < 20; ++i) {
    x.row(i) << 5.0 + 0.2 * rng.normal(), 0.2 * rng.normal();
    y[static_cast<std::size_t>(i)] = 0;
  }
  for (Index i = 20; i < 40; ++i) {
    x.row(i) << -5.0 + 0.2 * rng.normal(), 0.2 * rng.normal();
    y[static_cast<std::size_t>(i)] = 1;
  }
  const LinearClassifier clf = train_linear_classifier(x, y, 2, RidgeParam{1.0});
  CHECK(evaluate_accuracy(clf, x, y).accuracy == doctest::Approx(1.0));
}

TEST_CASE("classifier: a single present class is always predicted") {
  const Matrix x = random_matrix(15, 4, 3);
  const std::vector<int> y(15, 2);
  const LinearClassifier clf = train_linear_classifier(x, y, 4, RidgeParam{1.0});
  CHECK(clf.missing_classes == std::vector<int>{0, 1, 3});
  for (int p : predict(clf, random_matrix(8, 4, 9))) CHECK(p == 2);
}

TEST_CASE("classifier: tracks a direct least-squares oracle on a 3-class mixture") {
  const LabeledDataset ds = synth_gaussian_mixture(3, 8, 200, 3.0, 31);
  const SplitResult split = split_dataset(ds, 0.5, 7);
  const LinearClassifier clf = train_linear_classifier(
      split.candidate.features, split.candidate.labels, 3, RidgeParam{1.0});
  const double ours =
      evaluate_accuracy(clf, split.test.features, split.test.labels).accuracy;

  // oracle: unregularized normal equations through a QR solve
  const Matrix& xc = split.candidate.features;
  Matrix z(xc.rows(), xc.cols() + 1);
  z.leftCols(xc.cols()) = xc;
  z.col(xc.cols()).setOnes();
  Matrix t = Matrix::Constant(xc.rows(), 3, -1.0);
  for (Index i = 0; i < xc.rows(); ++i)
    t(i, split.candidate.labels[static_cast<std::size_t>(i)]) = 1.0;
  const Matrix w = z.colPivHouseholderQr().solve(t);
  Matrix zt(split.test.features.rows(), xc.cols() + 1);
  zt.leftCols(xc.cols()) = split.test.features;
  zt.col(xc.cols()).setOnes();
  const Matrix scores = zt * w;
  Index correct = 0;
  for (Index i = 0; i < scores.rows(); ++i) {
    Index arg;
    scores.row(i).maxCoeff(&arg);
    if (static_cast<int>(arg) == split.test.labels[static_cast<std::size_t>(i)])
      ++correct;
  }
  const double oracle =
      static_cast<double>(correct) / static_cast<double>(scores.rows());
  CHECK(std::abs(ours - oracle) <= 0.01);
}

TEST_CASE("evaluate_accuracy: exact agreement, flipped labels, empty test") {
  Matrix x(10, 2);
  std::vector<int> y(10);
  for (Index i = 0; i < 10; ++i) {
    const int cls = i < 5 ? 0 : 1;
    x.row(i) << (cls == 0 ? 3.0 : -3.0), 0.1 * static_cast<double>(i);
    y[static_cast<std::size_t>(i)] = cls;
  }
  const LinearClassifier clf = train_linear_classifier(x, y, 2, RidgeParam{1.0});
  CHECK(evaluate_accuracy(clf, x, y).accuracy == doctest::Approx(1.0));

  std::vector<int> flipped(y);
  for (int& v : flipped) v = 1 - v;
  const AccuracyReport rep = evaluate_accuracy(clf, x, flipped);
  CHECK(rep.accuracy == doctest::Approx(0.0));
  CHECK(rep.per_class_accuracy[0] == doctest::Approx(0.0));

  CHECK_THROWS_AS(evaluate_accuracy(clf, Matrix(0, 2), {}), Error);
}

TEST_CASE("inject_label_noise: count contract and edge ratios") {
  std::vector<int> y(1000);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<int>(i % 4);

  CHECK(inject_label_noise(y, 0.0, 4, 1) == y);

  const auto noisy = inject_label_noise(y, 0.4, 4, 5);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (noisy[i] != y[i]) ++flips;
  CHECK(flips == 400);
  for (int v : noisy) {
    CHECK(v >= 0);
    CHECK(v < 4);
  }

  std::vector<int> binary(50);
  for (std::size_t i = 0; i < binary.size(); ++i) binary[i] = static_cast<int>(i % 2);
  const auto all_flipped = inject_label_noise(binary, 1.0, 2, 9);
  for (std::size_t i = 0; i < binary.size(); ++i)
    CHECK(all_flipped[i] == 1 - binary[i]);

  CHECK_THROWS_AS(inject_label_noise(y, 1.5, 4, 1), Error);
  CHECK_THROWS_AS(inject_label_noise(y, -0.1, 4, 1), Error);
}

TEST_CASE("subset_stats: entropy across balance regimes") {
  std::vector<int> y = {0, 0, 1, 1, 2, 2};
  const SubsetStats balanced = subset_stats({0, 2, 4}, y, 3);
  CHECK(balanced.normalized_entropy == doctest::Approx(1.0));
  CHECK(balanced.histogram == std::vector<Index>{1, 1, 1});

  const SubsetStats single = subset_stats({0, 1}, y, 3);
  CHECK(single.normalized_entropy == doctest::Approx(0.0));

  // counts (2,1,1): 1.5 bits over log2(3)
  const SubsetStats skewed = subset_stats({0, 1, 2, 4}, y, 3);
  CHECK(skewed.normalized_entropy ==
        doctest::Approx(1.5 / std::log2(3.0)).epsilon(1e-9));
  Index total = 0;
  for (Index c : skewed.histogram) total += c;
  CHECK(total == 4);
}

TEST_CASE("learning_curve: full budget makes all selectors coincide") {
  const LabeledDataset ds = synth_gaussian_mixture(3, 6, 40, 4.0, 3);
  const SplitResult split = split_dataset(ds, 0.5, 5);
  const Index full = split.candidate.features.rows();

  const Selector random_sel = [](const Matrix& x, Index m, std::uint64_t seed) {
    return random_select(x.rows(), m, seed);
  };
  const Selector front_sel = [](const Matrix&, Index m, std::uint64_t) {
    std::vector<Index> v(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
  };
  const auto a = learning_curve(split.candidate, split.test, random_sel, {full},
                                {1, 2}, RidgeParam{1.0});
  const auto b = learning_curve(split.candidate, split.test, front_sel, {full},
                                {1, 2}, RidgeParam{1.0});
  REQUIRE(a.size() == 1);
  CHECK(a[0].mean_accuracy == doctest::Approx(b[0].mean_accuracy));
  CHECK(a[0].std_accuracy == doctest::Approx(0.0));
}

TEST_CASE("learning_curve: random selection improves with budget") {
  const LabeledDataset ds = synth_gaussian_mixture(4, 10, 120, 5.0, 17);
  const SplitResult split = split_dataset(ds, 0.5, 9);
  const Selector random_sel = [](const Matrix& x, Index m, std::uint64_t seed) {
    return random_select(x.rows(), m, seed);
  };
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto curve = learning_curve(split.candidate, split.test, random_sel,
                                    {8, 24, 96}, seeds, RidgeParam{1.0});
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].mean_accuracy <= curve[1].mean_accuracy);
  CHECK(curve[1].mean_accuracy <= curve[2].mean_accuracy);
}

TEST_CASE("learning_curve: input validation") {
  const LabeledDataset ds = synth_gaussian_mixture(2, 4, 20, 3.0, 1);
  const SplitResult split = split_dataset(ds, 0.5, 2);
  const Selector sel = [](const Matrix& x, Index m, std::uint64_t seed) {
    return random_select(x.rows(), m, seed);
  };
  CHECK_THROWS_AS(
      learning_curve(split.candidate, split.test, sel, {10, 5}, {1}, RidgeParam{1.0}),
      Error);
  CHECK_THROWS_AS(
      learning_curve(split.candidate, split.test, sel, {}, {1}, RidgeParam{1.0}),
      Error);
}

}  // TEST_SUITE
