#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nfpf/common.hpp"

namespace nfpf {

enum class Normalization { Zscore, Minmax, None };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct DatasetSpec {
  std::string path;
  std::string label_column = "label";  // header name, or 0-based index as digits
  char delimiter = ',';
  bool has_header = true;
  Normalization normalization = Normalization::Zscore;
};

struct LabeledDataset {
  Matrix features;                       // samples as rows
  std::vector<int> labels;               // dense 0-based class ids
  int class_count = 0;
  std::vector<std::string> class_names;  // id -> original label string
};

// CSV ingestion. Features parse as reals; raw labels map to dense ids
// (numeric labels in numeric order, otherwise lexicographic).
LabeledDataset load_csv_dataset(const DatasetSpec& spec);

void write_csv_dataset(std::ostream& os, const LabeledDataset& dataset);

struct SplitResult {
  LabeledDataset candidate;
  LabeledDataset test;
  std::vector<Index> candidate_rows;  // original row indices
  std::vector<Index> test_rows;
};

// Seeded, class-stratified split via largest-remainder quotas; each class's
// test share lands within one sample of the global fraction.
SplitResult split_dataset(const LabeledDataset& dataset, double test_fraction,
                          std::uint64_t seed);

struct NormalizationParams {
  Normalization method = Normalization::None;
  Vector offset;  // per-column
  Vector scale;   // per-column; constant columns get scale 0 -> output 0
};

// Fit on the given matrix (candidate split only in the pipeline) and
// transform it; reapply to other matrices with apply_normalization.
std::pair<Matrix, NormalizationParams> normalize_features(const Matrix& x,
                                                          Normalization method);
Matrix apply_normalization(const NormalizationParams& params, const Matrix& x);

// Isotropic unit-covariance Gaussian blobs, class c centered at
// separation * e_{c mod dim}; rows ordered class-major; seeded.
LabeledDataset synth_gaussian_mixture(int class_count, Index dim,
                                      Index per_class, double separation,
                                      std::uint64_t seed);

}  // namespace nfpf
