#include "nfpf/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nfpf/rng.hpp"

namespace nfpf {

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::Zscore: return "zscore";
    case Normalization::Minmax: return "minmax";
    default: return "none";
  }
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "zscore") return Normalization::Zscore;
  if (s == "minmax") return Normalization::Minmax;
  if (s == "none") return Normalization::None;
  throw Error(ErrorCode::ConfigInvalid, "unknown normalization: " + s);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

bool all_integer_labels(const std::vector<std::string>& names) {
  for (const auto& s : names) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

LabeledDataset load_csv_dataset(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  require(in.good(), ErrorCode::EmptyFile, "cannot open " + spec.path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line, spec.delimiter));
  }
  require(!rows.empty(), ErrorCode::EmptyFile, spec.path + " has no data rows");

  std::vector<std::string> header;
  if (spec.has_header) {
    header = rows.front();
    rows.erase(rows.begin());
    require(!rows.empty(), ErrorCode::EmptyFile,
            spec.path + " has a header but no data rows");
  }
  const std::size_t width = rows.front().size();
  require(width >= 3, ErrorCode::ParseError,
          "need a label column plus at least 2 feature columns");
  for (std::size_t r = 0; r < rows.size(); ++r)
    require(rows[r].size() == width, ErrorCode::RaggedRows,
            "row " + std::to_string(r + 1) + " has " +
                std::to_string(rows[r].size()) + " cells, expected " +
                std::to_string(width));

  // resolve the label column: header name if present, else a 0-based index
  std::size_t label_col = width;
  bool numeric_ref = !spec.label_column.empty() &&
                     std::all_of(spec.label_column.begin(), spec.label_column.end(),
                                 [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  if (spec.has_header && !numeric_ref) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (trim(header[j]) == spec.label_column) label_col = j;
    require(label_col < width, ErrorCode::ConfigInvalid,
            "label column '" + spec.label_column + "' not found in header");
  } else {
    require(numeric_ref, ErrorCode::ConfigInvalid,
            "label column must be an index when the file has no header");
    label_col = static_cast<std::size_t>(std::stoul(spec.label_column));
    require(label_col < width, ErrorCode::ConfigInvalid,
            "label column index out of range");
  }

  LabeledDataset ds;
  const Index n = static_cast<Index>(rows.size());
  const Index d = static_cast<Index>(width - 1);
  ds.features.resize(n, d);
  std::vector<std::string> raw_labels(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Index fc = 0;
    for (std::size_t cidx = 0; cidx < width; ++cidx) {
      if (cidx == label_col) {
        raw_labels[r] = trim(rows[r][cidx]);
        continue;
      }
      double v;
      require(parse_double(rows[r][cidx], v), ErrorCode::ParseError,
              "non-numeric feature at row " + std::to_string(r + 1) +
                  ", column " + std::to_string(cidx + 1) + ": '" +
                  rows[r][cidx] + "'");
      ds.features(static_cast<Index>(r), fc++) = v;
    }
  }

  // dense 0-based label ids; numeric labels keep numeric order
  std::vector<std::string> distinct(raw_labels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (all_integer_labels(distinct)) {
    std::sort(distinct.begin(), distinct.end(),
              [](const std::string& a, const std::string& b) {
                return std::stoll(a) < std::stoll(b);
              });
  }
  std::map<std::string, int> id_of;
  for (std::size_t i = 0; i < distinct.size(); ++i)
    id_of[distinct[i]] = static_cast<int>(i);
  ds.class_names = distinct;
  ds.class_count = static_cast<int>(distinct.size());
  ds.labels.resize(raw_labels.size());
  for (std::size_t r = 0; r < raw_labels.size(); ++r)
    ds.labels[r] = id_of[raw_labels[r]];
  return ds;
}

void write_csv_dataset(std::ostream& os, const LabeledDataset& dataset) {
  char buf[32];
  const auto fmt = [&buf](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  };
  os << "label";
  for (Index j = 0; j < dataset.features.cols(); ++j) os << ",f" << j;
  os << '\n';
  for (Index i = 0; i < dataset.features.rows(); ++i) {
    const int lab = dataset.labels[static_cast<std::size_t>(i)];
    if (!dataset.class_names.empty())
      os << dataset.class_names[static_cast<std::size_t>(lab)];
    else
      os << lab;
    for (Index j = 0; j < dataset.features.cols(); ++j)
      os << ',' << fmt(dataset.features(i, j));
    os << '\n';
  }
}

namespace {

LabeledDataset take_rows(const LabeledDataset& src, const std::vector<Index>& rows) {
  LabeledDataset out;
  out.class_count = src.class_count;
  out.class_names = src.class_names;
  out.features.resize(static_cast<Index>(rows.size()), src.features.cols());
  out.labels.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.features.row(static_cast<Index>(r)) = src.features.row(rows[r]);
    out.labels[r] = src.labels[static_cast<std::size_t>(rows[r])];
  }
  return out;
}

}  // namespace

SplitResult split_dataset(const LabeledDataset& dataset, double test_fraction,
                          std::uint64_t seed) {
  const Index n = dataset.features.rows();
  require(test_fraction > 0.0 && test_fraction < 1.0, ErrorCode::ConfigInvalid,
          "split_dataset: test_fraction must lie in (0, 1)");
  require(n >= 2, ErrorCode::TooSmall, "split_dataset: need at least 2 rows");

  // per-class quotas by largest remainder so the global total is exact
  const int K = std::max(dataset.class_count, 1);
  std::vector<std::vector<Index>> by_class(static_cast<std::size_t>(K));
  for (Index i = 0; i < n; ++i)
    by_class[static_cast<std::size_t>(dataset.labels[static_cast<std::size_t>(i)])]
        .push_back(i);

  const Index total_test = static_cast<Index>(
      std::llround(test_fraction * static_cast<double>(n)));
  require(total_test >= 1 && total_test < n, ErrorCode::TooSmall,
          "split_dataset: split leaves an empty side");

  std::vector<Index> quota(static_cast<std::size_t>(K), 0);
  std::vector<std::pair<double, int>> remainders;
  Index assigned = 0;
  for (int c = 0; c < K; ++c) {
    const double exact =
        test_fraction * static_cast<double>(by_class[static_cast<std::size_t>(c)].size());
    quota[static_cast<std::size_t>(c)] = static_cast<Index>(std::floor(exact));
    assigned += quota[static_cast<std::size_t>(c)];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first > b.first;
                     return a.second < b.second;
                   });
  for (std::size_t i = 0; assigned < total_test && i < remainders.size(); ++i) {
    const int c = remainders[i].second;
    if (quota[static_cast<std::size_t>(c)] <
        static_cast<Index>(by_class[static_cast<std::size_t>(c)].size())) {
      ++quota[static_cast<std::size_t>(c)];
      ++assigned;
    }
  }

  SplitResult out;
  SplitRng rng(seed);
  for (int c = 0; c < K; ++c) {
    auto& members = by_class[static_cast<std::size_t>(c)];
    // seeded shuffle of the class members
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      const std::size_t j = i + rng.index_below(members.size() - i);
      std::swap(members[i], members[j]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (static_cast<Index>(i) < quota[static_cast<std::size_t>(c)])
        out.test_rows.push_back(members[i]);
      else
        out.candidate_rows.push_back(members[i]);
    }
  }
  std::sort(out.candidate_rows.begin(), out.candidate_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.candidate = take_rows(dataset, out.candidate_rows);
  out.test = take_rows(dataset, out.test_rows);
  return out;
}

std::pair<Matrix, NormalizationParams> normalize_features(const Matrix& x,
                                                          Normalization method) {
  NormalizationParams params;
  params.method = method;
  if (method == Normalization::None) {
    params.offset = Vector::Zero(x.cols());
    params.scale = Vector::Ones(x.cols());
    return {x, params};
  }
  if (method == Normalization::Zscore) {
    params.offset = x.colwise().mean().transpose();
    Matrix centered = x.rowwise() - params.offset.transpose();
    params.scale =
        (centered.colwise().squaredNorm() / static_cast<double>(x.rows()))
            .cwiseSqrt()
            .transpose();
  } else {
    params.offset = x.colwise().minCoeff().transpose();
    params.scale = x.colwise().maxCoeff().transpose() - params.offset;
  }
  return {apply_normalization(params, x), params};
}

Matrix apply_normalization(const NormalizationParams& params, const Matrix& x) {
  if (params.method == Normalization::None) return x;
  require(x.cols() == params.offset.size(), ErrorCode::DimensionMismatch,
          "apply_normalization: column count differs from fitted params");
  Matrix out = x.rowwise() - params.offset.transpose();
  for (Index j = 0; j < x.cols(); ++j) {
    if (params.scale(j) > 0.0)
      out.col(j) /= params.scale(j);
    else
      out.col(j).setZero();  // constant column
  }
  return out;
}

LabeledDataset synth_gaussian_mixture(int class_count, Index dim,
                                      Index per_class, double separation,
                                      std::uint64_t seed) {
  require(class_count >= 1 && dim >= 1 && per_class >= 1,
          ErrorCode::ConfigInvalid, "synth_gaussian_mixture: counts must be >= 1");
  LabeledDataset ds;
  ds.class_count = class_count;
  const Index n = static_cast<Index>(class_count) * per_class;
  ds.features.resize(n, dim);
  ds.labels.resize(static_cast<std::size_t>(n));
  SplitRng rng(seed);
  Index row = 0;
  for (int c = 0; c < class_count; ++c) {
    const Index axis = static_cast<Index>(c) % dim;
    for (Index s = 0; s < per_class; ++s, ++row) {
      for (Index j = 0; j < dim; ++j) ds.features(row, j) = rng.normal();
      ds.features(row, axis) += separation;
      ds.labels[static_cast<std::size_t>(row)] = c;
    }
  }
  for (int c = 0; c < class_count; ++c)
    ds.class_names.push_back(std::to_string(c));
  return ds;
}

}  // namespace nfpf
