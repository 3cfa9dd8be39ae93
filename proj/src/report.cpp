#include "nfpf/report.hpp"

#include <charconv>
#include <cstring>
#include <ostream>

namespace nfpf {

namespace {

void fnv1a(std::uint64_t& h, const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

// shortest round-trip decimal form, matching the JSON float style
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string dataset_hash(const LabeledDataset& dataset) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const Index rows = dataset.features.rows(), cols = dataset.features.cols();
  fnv1a(h, &rows, sizeof(rows));
  fnv1a(h, &cols, sizeof(cols));
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double v = dataset.features(i, j);
      fnv1a(h, &v, sizeof(v));
    }
  if (!dataset.labels.empty())
    fnv1a(h, dataset.labels.data(), dataset.labels.size() * sizeof(int));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

nlohmann::ordered_json selection_report_to_json(const SelectionReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["dataset_hash"] = report.hash;
  j["split"] = {{"test_fraction", report.test_fraction},
                {"seed", report.split_seed}};
  j["seed"] = report.seed;
  j["m"] = report.m;
  j["k"] = report.k;
  j["n"] = report.n;
  j["config"] = report.config_echo;
  j["initial_indices"] = report.initial_indices;
  nlohmann::ordered_json cycles = nlohmann::ordered_json::array();
  for (const CycleRecord& rec : report.cycles) {
    nlohmann::ordered_json c;
    c["cycle"] = rec.cycle;
    c["added"] = rec.added;
    c["g_min"] = rec.g_min;
    c["g_median"] = rec.g_median;
    c["g_max"] = rec.g_max;
    cycles.push_back(std::move(c));
  }
  j["cycles"] = std::move(cycles);
  j["final_indices"] = report.final_indices;
  return j;
}

SelectionReport selection_report_from_json(const nlohmann::ordered_json& j) {
  SelectionReport report;
  report.method = j.at("method").get<std::string>();
  report.hash = j.at("dataset_hash").get<std::string>();
  report.test_fraction = j.at("split").at("test_fraction").get<double>();
  report.split_seed = j.at("split").at("seed").get<std::uint64_t>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.m = j.at("m").get<Index>();
  report.k = j.at("k").get<Index>();
  report.n = j.at("n").get<Index>();
  if (j.contains("config")) report.config_echo = j.at("config");
  report.initial_indices = j.at("initial_indices").get<std::vector<Index>>();
  for (const auto& c : j.at("cycles")) {
    CycleRecord rec;
    rec.cycle = c.at("cycle").get<int>();
    rec.added = c.at("added").get<std::vector<Index>>();
    rec.g_min = c.at("g_min").get<double>();
    rec.g_median = c.at("g_median").get<double>();
    rec.g_max = c.at("g_max").get<double>();
    report.cycles.push_back(std::move(rec));
  }
  report.final_indices = j.at("final_indices").get<std::vector<Index>>();
  return report;
}

void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows) {
  os << "method,m,k,n,seed,noise,accuracy\n";
  for (const SeriesRow& r : rows) {
    os << r.method << ',' << r.m << ',' << r.k << ',' << r.n << ',' << r.seed
       << ',' << format_double(r.noise) << ',' << format_double(r.accuracy)
       << '\n';
  }
}

}  // namespace nfpf
