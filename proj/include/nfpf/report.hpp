#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfpf/common.hpp"
#include "nfpf/data_io.hpp"
#include "nfpf/nfpf_loop.hpp"

namespace nfpf {

// Content hash (FNV-1a over feature bytes and labels) embedded in every
// report so select/eval runs can verify they saw the same data.
std::string dataset_hash(const LabeledDataset& dataset);

struct SelectionReport {
  std::string method;
  std::string hash;
  double test_fraction = 0.5;
  std::uint64_t split_seed = 0;
  std::uint64_t seed = 0;
  Index m = 0, k = 0, n = 0;
  nlohmann::ordered_json config_echo;
  std::vector<Index> initial_indices;   // empty for the baselines
  std::vector<CycleRecord> cycles;      // empty for the baselines
  std::vector<Index> final_indices;     // into the candidate split
};

nlohmann::ordered_json selection_report_to_json(const SelectionReport& report);
SelectionReport selection_report_from_json(const nlohmann::ordered_json& j);

// One CSV row of the plot-ready series. Header: method,m,k,n,seed,noise,accuracy
struct SeriesRow {
  std::string method;
  Index m = 0, k = 0, n = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  double accuracy = 0.0;
};

void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows);

}  // namespace nfpf
