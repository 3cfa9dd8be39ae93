// Command-line front end: select subsets, evaluate them, run parameter
// sweeps and label-noise ablations. Configuration is a single JSON file;
// outputs are deterministic given fixed seeds.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfpf/baselines.hpp"
#include "nfpf/data_io.hpp"
#include "nfpf/eval.hpp"
#include "nfpf/nfpf_loop.hpp"
#include "nfpf/rd_init.hpp"
#include "nfpf/report.hpp"
#include "nfpf/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace nfpf;

namespace {

// ---------------------------------------------------------------- logging
enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel g_log_level = LogLevel::Info;

void init_log_level() {
  const char* env = std::getenv("NFPF_LOG_LEVEL");
  if (!env) return;
  std::string v(env);
  if (v == "error") g_log_level = LogLevel::Error;
  else if (v == "info") g_log_level = LogLevel::Info;
  else if (v == "debug") g_log_level = LogLevel::Debug;
}

void log_at(LogLevel level, const std::string& msg) {
  if (level <= g_log_level) std::cerr << "[nfpf] " << msg << "\n";
}

void sidecar_log(const fs::path& out_dir, const std::string& line) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream log(out_dir / "run.log", std::ios::app);
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
  log << stamp << " " << line << "\n";
}

// ----------------------------------------------------------------- config
struct CliConfig {
  // dataset
  bool synthetic = false;
  DatasetSpec csv;
  int synth_class_count = 4;
  Index synth_dim = 20;
  Index synth_per_class = 500;
  double synth_separation = 3.0;
  std::uint64_t synth_seed = 42;

  Normalization normalization = Normalization::Zscore;
  double test_fraction = 0.5;
  std::uint64_t split_seed = 1;

  std::string method = "nfpf";
  Index m = 100;
  double k_percent = 40.0;
  double n_percent = 10.0;
  Index h_current = 50;
  Index h_reference = 0;
  double c = 1.0;
  double classifier_c = 1.0;
  Activation activation = Activation::Sigmoid;
  int class_count = 0;    // 0 = infer from labels
  Index num_clusters = 0; // 0 = class_count
  Index dcs_rank = 0;     // 0 = class_count
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> noise_ratios{0.0, 0.1, 0.2, 0.3, 0.4};
  std::vector<double> sweep_k_percents;
  std::vector<double> sweep_n_percents;
  std::vector<Index> sweep_m_values;
  bool rd_audit = false;
  std::string output_dir = "out";

  ordered_json echo;
};

template <typename T>
T field(const ordered_json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid, "config field '" + key + "' has the wrong type");
  }
}

CliConfig parse_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in.good())
    throw Error(ErrorCode::ConfigInvalid, "config file not readable: " + path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
  }

  CliConfig cfg;
  cfg.echo = j;

  if (!j.contains("dataset"))
    throw Error(ErrorCode::ConfigInvalid, "config field 'dataset' is required");
  const ordered_json& ds = j.at("dataset");
  const std::string type = field<std::string>(ds, "type", "csv");
  if (type == "synthetic") {
    cfg.synthetic = true;
    cfg.synth_class_count = field<int>(ds, "class_count", 4);
    cfg.synth_dim = field<Index>(ds, "dim", 20);
    cfg.synth_per_class = field<Index>(ds, "per_class", 500);
    cfg.synth_separation = field<double>(ds, "separation", 3.0);
    cfg.synth_seed = field<std::uint64_t>(ds, "seed", 42);
  } else if (type == "csv") {
    if (!ds.contains("path"))
      throw Error(ErrorCode::ConfigInvalid, "config field 'dataset.path' is required");
    cfg.csv.path = ds.at("path").get<std::string>();
    cfg.csv.label_column = field<std::string>(ds, "label_column", "label");
    const std::string delim = field<std::string>(ds, "delimiter", ",");
    if (delim.size() != 1)
      throw Error(ErrorCode::ConfigInvalid, "config field 'dataset.delimiter' must be one character");
    cfg.csv.delimiter = delim[0];
    cfg.csv.has_header = field<bool>(ds, "has_header", true);
  } else {
    throw Error(ErrorCode::ConfigInvalid, "config field 'dataset.type' must be 'csv' or 'synthetic'");
  }

  cfg.normalization =
      normalization_from_string(field<std::string>(j, "normalization", "zscore"));
  cfg.test_fraction = field<double>(j, "test_fraction", 0.5);
  cfg.split_seed = field<std::uint64_t>(j, "split_seed", 1);
  cfg.method = field<std::string>(j, "method", "nfpf");
  if (cfg.method != "nfpf" && cfg.method != "random" && cfg.method != "kmeans" &&
      cfg.method != "dcs")
    throw Error(ErrorCode::ConfigInvalid,
                "config field 'method' must be one of nfpf|random|kmeans|dcs");
  cfg.m = field<Index>(j, "m", cfg.m);
  cfg.k_percent = field<double>(j, "k_percent", cfg.k_percent);
  cfg.n_percent = field<double>(j, "n_percent", cfg.n_percent);
  if (cfg.k_percent < 0 || cfg.k_percent > 100)
    throw Error(ErrorCode::ConfigInvalid, "config field 'k_percent' must lie in [0, 100]");
  if (cfg.n_percent <= 0 || cfg.n_percent > 100)
    throw Error(ErrorCode::ConfigInvalid, "config field 'n_percent' must lie in (0, 100]");
  cfg.h_current = field<Index>(j, "h_current", cfg.h_current);
  cfg.h_reference = field<Index>(j, "h_reference", cfg.h_reference);
  cfg.c = field<double>(j, "c", cfg.c);
  cfg.classifier_c = field<double>(j, "classifier_c", cfg.classifier_c);
  if (cfg.c <= 0 || cfg.classifier_c <= 0)
    throw Error(ErrorCode::ConfigInvalid, "config fields 'c'/'classifier_c' must be positive");
  cfg.activation =
      activation_from_string(field<std::string>(j, "activation", "sigmoid"));
  cfg.class_count = field<int>(j, "class_count", 0);
  cfg.num_clusters = field<Index>(j, "num_clusters", 0);
  cfg.dcs_rank = field<Index>(j, "dcs_rank", 0);
  cfg.seeds = field<std::vector<std::uint64_t>>(j, "seeds", cfg.seeds);
  if (cfg.seeds.empty())
    throw Error(ErrorCode::ConfigInvalid, "config field 'seeds' must be nonempty");
  cfg.noise_ratios = field<std::vector<double>>(j, "noise_ratios", cfg.noise_ratios);
  if (j.contains("sweep")) {
    const ordered_json& sw = j.at("sweep");
    cfg.sweep_k_percents = field<std::vector<double>>(sw, "k_percents", {});
    cfg.sweep_n_percents = field<std::vector<double>>(sw, "n_percents", {});
    cfg.sweep_m_values = field<std::vector<Index>>(sw, "m_values", {});
  }
  cfg.rd_audit = field<bool>(j, "rd_audit", false);
  cfg.output_dir = field<std::string>(j, "output_dir", "out");
  return cfg;
}

// --------------------------------------------------------------- pipeline
struct Prepared {
  LabeledDataset dataset;
  std::string hash;
  SplitResult split;
  Matrix candidate_norm;
  Matrix test_norm;
  NormalizationParams norm_params;
};

Prepared prepare(const CliConfig& cfg) {
  Prepared p;
  if (cfg.synthetic) {
    p.dataset = synth_gaussian_mixture(cfg.synth_class_count, cfg.synth_dim,
                                       cfg.synth_per_class, cfg.synth_separation,
                                       cfg.synth_seed);
  } else {
    p.dataset = load_csv_dataset(cfg.csv);
  }
  p.hash = dataset_hash(p.dataset);
  p.split = split_dataset(p.dataset, cfg.test_fraction, cfg.split_seed);
  auto [norm, params] =
      normalize_features(p.split.candidate.features, cfg.normalization);
  p.candidate_norm = std::move(norm);
  p.norm_params = std::move(params);
  p.test_norm = apply_normalization(p.norm_params, p.split.test.features);
  return p;
}

int effective_class_count(const CliConfig& cfg, const Prepared& p) {
  return cfg.class_count > 0 ? cfg.class_count : p.dataset.class_count;
}

Index round_percent(double percent, Index m) {
  return std::max<Index>(1, static_cast<Index>(std::llround(percent / 100.0 *
                                                            static_cast<double>(m))));
}

SelectionReport run_selection(const CliConfig& cfg, const Prepared& p, Index m,
                              double k_percent, double n_percent,
                              std::uint64_t seed,
                              std::optional<fs::path> audit_path) {
  const Matrix& x = p.candidate_norm;
  require(m <= x.rows(), ErrorCode::BudgetTooLarge,
          "m exceeds the candidate pool size");

  SelectionReport report;
  report.method = cfg.method;
  report.hash = p.hash;
  report.test_fraction = cfg.test_fraction;
  report.split_seed = cfg.split_seed;
  report.seed = seed;
  report.m = m;
  report.config_echo = cfg.echo;

  if (cfg.method == "nfpf") {
    report.k = round_percent(k_percent, m);
    report.n = round_percent(n_percent, m);
    if (report.k > m) report.k = m;

    Index clusters = cfg.num_clusters > 0
                         ? cfg.num_clusters
                         : static_cast<Index>(effective_class_count(cfg, p));
    require(clusters >= 2, ErrorCode::ConfigInvalid,
            "nfpf needs at least 2 clusters (set 'num_clusters' or 'class_count')");
    clusters = std::min(clusters, x.rows());

    const KmeansResult km = kmeans(x, clusters, mix_seed(seed, 101));
    const std::vector<ClusterModel> cores =
        train_core_models(x, km.assignments, cfg.h_current, cfg.activation,
                          RidgeParam{cfg.c}, mix_seed(seed, 102));
    const RdResult rd = rd_scores(cores, x);
    if (audit_path) {
      std::ofstream audit(*audit_path);
      write_rd_audit_csv(audit, rd);
    }
    report.initial_indices = init_subset(rd, report.k);

    NfpfConfig loop;
    loop.m = m;
    loop.k = report.k;
    loop.n = report.n;
    loop.h_current = cfg.h_current;
    loop.h_reference = cfg.h_reference;
    loop.c = RidgeParam{cfg.c};
    loop.activation = cfg.activation;
    loop.seed = seed;
    const SelectionState state = run_nfpf(x, report.initial_indices, loop);
    report.cycles = state.history;
    report.final_indices = state.selected;
  } else if (cfg.method == "random") {
    report.final_indices = random_select(x.rows(), m, seed);
  } else if (cfg.method == "kmeans") {
    report.final_indices = kmeans_distance_select(x, m, seed);
  } else {  // dcs
    Index rank = cfg.dcs_rank > 0
                     ? cfg.dcs_rank
                     : static_cast<Index>(effective_class_count(cfg, p));
    rank = std::max<Index>(1, std::min(rank, std::min(x.rows(), x.cols())));
    report.final_indices = dcs_select(x, m, rank);
  }
  return report;
}

struct EvalOutcome {
  AccuracyReport accuracy;
  SubsetStats stats;
  std::vector<int> missing_classes;
};

EvalOutcome evaluate_selection(const CliConfig& cfg, const Prepared& p,
                               const std::vector<Index>& selected,
                               const std::vector<int>& candidate_labels) {
  Matrix xs(static_cast<Index>(selected.size()), p.candidate_norm.cols());
  std::vector<int> ys(selected.size());
  for (std::size_t r = 0; r < selected.size(); ++r) {
    xs.row(static_cast<Index>(r)) = p.candidate_norm.row(selected[r]);
    ys[r] = candidate_labels[static_cast<std::size_t>(selected[r])];
  }
  const int classes = std::max(effective_class_count(cfg, p), p.dataset.class_count);
  EvalOutcome out;
  const LinearClassifier clf =
      train_linear_classifier(xs, ys, classes, RidgeParam{cfg.classifier_c});
  out.missing_classes = clf.missing_classes;
  out.accuracy = evaluate_accuracy(clf, p.test_norm, p.split.test.labels);
  out.stats = subset_stats(selected, candidate_labels, classes);
  return out;
}

fs::path select_report_path(const fs::path& out_dir, const std::string& method,
                            std::uint64_t seed) {
  return out_dir / ("select_" + method + "_seed" + std::to_string(seed) + ".json");
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f.good())
    throw Error(ErrorCode::ConfigInvalid, "cannot write output file: " + path.string());
  f << content;
}

// ------------------------------------------------------------ subcommands
void write_dataset_meta(const CliConfig& cfg, const Prepared& p,
                        const fs::path& out_dir) {
  ordered_json j;
  j["rows"] = p.dataset.features.rows();
  j["cols"] = p.dataset.features.cols();
  j["class_count"] = p.dataset.class_count;
  j["class_names"] = p.dataset.class_names;
  j["dataset_hash"] = p.hash;
  j["candidate_rows"] = p.split.candidate.features.rows();
  j["test_rows"] = p.split.test.features.rows();
  ordered_json norm;
  norm["method"] = to_string(cfg.normalization);
  norm["offset"] = std::vector<double>(
      p.norm_params.offset.data(),
      p.norm_params.offset.data() + p.norm_params.offset.size());
  norm["scale"] = std::vector<double>(
      p.norm_params.scale.data(),
      p.norm_params.scale.data() + p.norm_params.scale.size());
  j["normalization"] = std::move(norm);
  write_text_file(out_dir / "dataset_meta.json", j.dump(2) + "\n");
}

int cmd_select(const CliConfig& cfg, const fs::path& out_dir,
               std::optional<std::uint64_t> seed_override) {
  const Prepared p = prepare(cfg);
  write_dataset_meta(cfg, p, out_dir);
  std::vector<std::uint64_t> seeds =
      seed_override ? std::vector<std::uint64_t>{*seed_override} : cfg.seeds;
  for (std::uint64_t seed : seeds) {
    std::optional<fs::path> audit;
    if (cfg.rd_audit && cfg.method == "nfpf")
      audit = out_dir / ("rd_audit_seed" + std::to_string(seed) + ".csv");
    const SelectionReport report = run_selection(
        cfg, p, cfg.m, cfg.k_percent, cfg.n_percent, seed, audit);
    const fs::path path = select_report_path(out_dir, cfg.method, seed);
    write_text_file(path, selection_report_to_json(report).dump(2) + "\n");
    log_at(LogLevel::Info, "wrote " + path.string());
  }
  return 0;
}

int cmd_eval(const CliConfig& cfg, const fs::path& out_dir,
             std::optional<std::uint64_t> seed_override) {
  const Prepared p = prepare(cfg);
  std::vector<std::uint64_t> seeds =
      seed_override ? std::vector<std::uint64_t>{*seed_override} : cfg.seeds;

  ordered_json per_seed = ordered_json::array();
  std::vector<SeriesRow> rows;
  double mean = 0.0;
  std::vector<double> accs;
  Index k_echo = 0, n_echo = 0;
  for (std::uint64_t seed : seeds) {
    const fs::path rpath = select_report_path(out_dir, cfg.method, seed);
    std::ifstream rf(rpath);
    require(rf.good(), ErrorCode::EmptyFile,
            "selection report not found: " + rpath.string() + " (run select first)");
    ordered_json rj;
    rf >> rj;
    const SelectionReport report = selection_report_from_json(rj);
    require(report.hash == p.hash, ErrorCode::HashMismatch,
            "selection report was produced on different data (hash " +
                report.hash + " != " + p.hash + ")");
    k_echo = report.k;
    n_echo = report.n;

    const EvalOutcome out =
        evaluate_selection(cfg, p, report.final_indices, p.split.candidate.labels);
    accs.push_back(out.accuracy.accuracy);
    mean += out.accuracy.accuracy;

    ordered_json js;
    js["seed"] = seed;
    js["accuracy"] = out.accuracy.accuracy;
    js["per_class_accuracy"] = out.accuracy.per_class_accuracy;
    js["subset_class_histogram"] = out.stats.histogram;
    js["subset_class_entropy"] = out.stats.normalized_entropy;
    js["missing_classes"] = out.missing_classes;
    per_seed.push_back(std::move(js));

    rows.push_back(SeriesRow{cfg.method, report.m, report.k, report.n, seed,
                             0.0, out.accuracy.accuracy});
  }
  mean /= static_cast<double>(accs.size());
  double var = 0.0;
  for (double a : accs) var += (a - mean) * (a - mean);
  var /= static_cast<double>(accs.size());

  ordered_json j;
  j["method"] = cfg.method;
  j["dataset_hash"] = p.hash;
  j["m"] = cfg.m;
  j["k"] = k_echo;
  j["n"] = n_echo;
  j["mean_accuracy"] = mean;
  j["std_accuracy"] = std::sqrt(var);
  j["per_seed"] = std::move(per_seed);
  j["config"] = cfg.echo;

  write_text_file(out_dir / ("eval_" + cfg.method + ".json"), j.dump(2) + "\n");
  std::ostringstream csv;
  write_series_csv(csv, rows);
  write_text_file(out_dir / ("series_" + cfg.method + ".csv"), csv.str());
  log_at(LogLevel::Info,
         "eval " + cfg.method + ": mean accuracy " + std::to_string(mean));
  return 0;
}

int cmd_sweep(CliConfig cfg, const fs::path& out_dir, unsigned workers,
              std::optional<std::uint64_t> seed_override) {
  if (seed_override) cfg.seeds = {*seed_override};
  const Prepared p = prepare(cfg);
  std::vector<double> ks = cfg.sweep_k_percents.empty()
                               ? std::vector<double>{cfg.k_percent}
                               : cfg.sweep_k_percents;
  std::vector<double> ns = cfg.sweep_n_percents.empty()
                               ? std::vector<double>{cfg.n_percent}
                               : cfg.sweep_n_percents;
  std::vector<Index> ms = cfg.sweep_m_values.empty()
                              ? std::vector<Index>{cfg.m}
                              : cfg.sweep_m_values;
  require(!ks.empty() && !ns.empty() && !ms.empty(), ErrorCode::ConfigInvalid,
          "sweep grid is empty");
  std::sort(ks.begin(), ks.end());
  std::sort(ns.begin(), ns.end());
  std::sort(ms.begin(), ms.end());

  struct Cell {
    double kp, np;
    Index m;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double kp : ks)
    for (double np : ns)
      for (Index m : ms)
        for (std::uint64_t seed : cfg.seeds) cells.push_back({kp, np, m, seed});

  std::vector<SeriesRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::optional<Error> first_error;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      try {
        const SelectionReport report = run_selection(
            cfg, p, cell.m, cell.kp, cell.np, cell.seed, std::nullopt);
        const EvalOutcome out = evaluate_selection(
            cfg, p, report.final_indices, p.split.candidate.labels);
        rows[i] = SeriesRow{cfg.method, cell.m, report.k, report.n,
                            cell.seed, 0.0, out.accuracy.accuracy};
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = e;
        return;
      }
    }
  };
  const unsigned count = std::max(1u, workers);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) throw *first_error;

  std::ostringstream csv;
  write_series_csv(csv, rows);
  write_text_file(out_dir / ("sweep_" + cfg.method + ".csv"), csv.str());
  log_at(LogLevel::Info, "sweep wrote " + std::to_string(rows.size()) + " rows");
  return 0;
}

int cmd_noise(CliConfig cfg, const fs::path& out_dir,
              std::optional<std::uint64_t> seed_override) {
  if (seed_override) cfg.seeds = {*seed_override};
  require(!cfg.noise_ratios.empty(), ErrorCode::ConfigInvalid,
          "config field 'noise_ratios' must be nonempty");
  const Prepared p = prepare(cfg);

  std::vector<SeriesRow> rows;
  bool selection_equal = true;
  for (std::uint64_t seed : cfg.seeds) {
    std::optional<std::vector<Index>> reference_selection;
    for (std::size_t ri = 0; ri < cfg.noise_ratios.size(); ++ri) {
      const double ratio = cfg.noise_ratios[ri];
      // selection sees only features; labels are corrupted afterwards
      const SelectionReport report = run_selection(
          cfg, p, cfg.m, cfg.k_percent, cfg.n_percent, seed, std::nullopt);
      if (!reference_selection) {
        reference_selection = report.final_indices;
      } else if (*reference_selection != report.final_indices) {
        selection_equal = false;
      }
      const std::vector<int> noisy = inject_label_noise(
          p.split.candidate.labels, ratio,
          std::max(effective_class_count(cfg, p), p.dataset.class_count),
          mix_seed(seed, 7000 + static_cast<std::uint64_t>(ri)));
      const EvalOutcome out =
          evaluate_selection(cfg, p, report.final_indices, noisy);
      rows.push_back(SeriesRow{cfg.method, report.m, report.k, report.n, seed,
                               ratio, out.accuracy.accuracy});
    }
  }

  std::ostringstream csv;
  write_series_csv(csv, rows);
  write_text_file(out_dir / ("noise_" + cfg.method + ".csv"), csv.str());
  ordered_json j;
  j["method"] = cfg.method;
  j["dataset_hash"] = p.hash;
  j["noise_ratios"] = cfg.noise_ratios;
  j["selection_identical_across_ratios"] = selection_equal;
  write_text_file(out_dir / ("noise_" + cfg.method + ".json"), j.dump(2) + "\n");
  require(selection_equal, ErrorCode::ConfigInvalid,
          "selection indices changed across noise ratios (selection must be label-blind)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  init_log_level();

  CLI::App app{"Unsupervised subset selection with SFLM autoencoders: "
               "RD-seeded progressive selection, baselines, and a linear "
               "evaluation harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed_override;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub, bool with_workers) {
    sub->add_option("--config", config_path, "path to the JSON config")->required();
    sub->add_option("--out", out_override, "output directory (overrides config)");
    if (with_workers)
      sub->add_option("--workers", workers, "concurrent sweep cells")->default_val(1);
    sub->add_option("--seed", seed_value, "single-seed override");
  };

  CLI::App* sel = app.add_subcommand("select", "run subset selection, write reports");
  CLI::App* eva = app.add_subcommand("eval", "evaluate selection reports");
  CLI::App* swp = app.add_subcommand("sweep", "grid over k/n/m, write a CSV matrix");
  CLI::App* noi = app.add_subcommand("noise", "label-noise ablation series");
  add_common(sel, false);
  add_common(eva, false);
  add_common(swp, true);
  add_common(noi, false);

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* sub : {sel, eva, swp, noi})
    if (sub->parsed() && sub->count("--seed") > 0) seed_override = seed_value;

  try {
    const CliConfig cfg = parse_config(config_path);
    const fs::path out_dir = out_override.empty() ? cfg.output_dir : out_override;
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    int rc = 1;
    if (sel->parsed()) {
      sidecar_log(out_dir, "select --config " + config_path);
      rc = cmd_select(cfg, out_dir, seed_override);
    } else if (eva->parsed()) {
      sidecar_log(out_dir, "eval --config " + config_path);
      rc = cmd_eval(cfg, out_dir, seed_override);
    } else if (swp->parsed()) {
      sidecar_log(out_dir, "sweep --config " + config_path);
      rc = cmd_sweep(cfg, out_dir, workers, seed_override);
    } else if (noi->parsed()) {
      sidecar_log(out_dir, "noise --config " + config_path);
      rc = cmd_noise(cfg, out_dir, seed_override);
    }
    return rc;
  } catch (const Error& e) {
    log_at(LogLevel::Error, e.what());
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::RaggedRows:
      case ErrorCode::EmptyFile:
      case ErrorCode::HashMismatch:
      case ErrorCode::NonFinite:
      case ErrorCode::EmptyTestSet:
      case ErrorCode::TooSmall:
        return 3;  // data error
      default:
        return 2;  // config error
    }
  } catch (const std::exception& e) {
    log_at(LogLevel::Error, e.what());
    return 1;
  }
}
