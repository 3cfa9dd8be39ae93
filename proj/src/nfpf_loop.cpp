#include "nfpf/nfpf_loop.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "nfpf/rng.hpp"

namespace nfpf {

Vector learnability_scores(const SflmModel& current, const SflmModel& reference,
                           const Matrix& x_u) {
  require(current.input_weights.rows() == x_u.cols() &&
              reference.input_weights.rows() == x_u.cols(),
          ErrorCode::DimensionMismatch,
          "learnability_scores: model/input dimension mismatch");
  return score_phi(current, x_u) - score_phi(reference, x_u);
}

SelectionState select_cycle(SelectionState state, const Vector& scores, Index n) {
  require(scores.size() == static_cast<Index>(state.remaining.size()),
          ErrorCode::DimensionMismatch,
          "select_cycle: scores must align with the remaining pool");
  require(n >= 0 && n <= static_cast<Index>(state.remaining.size()),
          ErrorCode::BudgetExceeded,
          "select_cycle: n exceeds the remaining pool");

  std::vector<Index> pos(state.remaining.size());
  std::iota(pos.begin(), pos.end(), Index{0});
  std::stable_sort(pos.begin(), pos.end(), [&](Index a, Index b) {
    if (scores(a) != scores(b)) return scores(a) < scores(b);
    return state.remaining[static_cast<std::size_t>(a)] <
           state.remaining[static_cast<std::size_t>(b)];
  });

  CycleRecord record;
  record.cycle = state.cycle + 1;
  if (scores.size() > 0) {
    record.g_min = scores(pos.front());
    record.g_max = scores(pos.back());
    const std::size_t mid = pos.size() / 2;
    record.g_median =
        pos.size() % 2 == 1
            ? scores(pos[mid])
            : 0.5 * (scores(pos[mid - 1]) + scores(pos[mid]));
  }

  std::unordered_set<Index> taken;
  for (Index r = 0; r < n; ++r) {
    const Index idx = state.remaining[static_cast<std::size_t>(pos[static_cast<std::size_t>(r)])];
    state.selected.push_back(idx);
    record.added.push_back(idx);
    taken.insert(idx);
  }
  std::erase_if(state.remaining, [&](Index i) { return taken.count(i) > 0; });
  state.cycle += 1;
  state.history.push_back(std::move(record));
  return state;
}

SelectionState run_nfpf(const Matrix& x, const std::vector<Index>& initial,
                        const NfpfConfig& config) {
  const Index total = x.rows();
  require(config.m >= 0 && config.m <= total, ErrorCode::ConfigInvalid,
          "run_nfpf: m exceeds sample count");
  require(config.k == static_cast<Index>(initial.size()), ErrorCode::ConfigInvalid,
          "run_nfpf: |initial| must equal k");
  require(config.k <= config.m, ErrorCode::ConfigInvalid, "run_nfpf: k > m");
  require(config.n >= 1, ErrorCode::ConfigInvalid, "run_nfpf: n >= 1");
  require(config.h_current >= 1, ErrorCode::InvalidHiddenSize,
          "run_nfpf: h_current >= 1");

  Index h_ref = config.h_reference;
  if (h_ref == 0) h_ref = std::max(config.h_current, std::min(10 * config.h_current, total));
  require(h_ref >= config.h_current, ErrorCode::ConfigInvalid,
          "run_nfpf: h_reference < h_current");

  SelectionState state;
  {
    std::unordered_set<Index> seen;
    for (Index idx : initial) {
      require(idx >= 0 && idx < total, ErrorCode::ConfigInvalid,
              "run_nfpf: initial index out of range");
      require(seen.insert(idx).second, ErrorCode::ConfigInvalid,
              "run_nfpf: duplicate initial index");
      state.selected.push_back(idx);
    }
    for (Index i = 0; i < total; ++i)
      if (!seen.count(i)) state.remaining.push_back(i);
  }

  if (static_cast<Index>(state.selected.size()) >= config.m) return state;

  const SflmModel reference = train_sflm(x, h_ref, config.activation, config.c,
                                         mix_seed(config.seed, 0));
  while (static_cast<Index>(state.selected.size()) < config.m) {
    Matrix xs(static_cast<Index>(state.selected.size()), x.cols());
    for (std::size_t r = 0; r < state.selected.size(); ++r)
      xs.row(static_cast<Index>(r)) = x.row(state.selected[r]);
    const SflmModel current =
        train_sflm(xs, config.h_current, config.activation, config.c,
                   mix_seed(config.seed, static_cast<std::uint64_t>(state.cycle) + 1));

    Matrix xu(static_cast<Index>(state.remaining.size()), x.cols());
    for (std::size_t r = 0; r < state.remaining.size(); ++r)
      xu.row(static_cast<Index>(r)) = x.row(state.remaining[r]);
    const Vector g = learnability_scores(current, reference, xu);

    const Index take = std::min<Index>(
        config.n, config.m - static_cast<Index>(state.selected.size()));
    state = select_cycle(std::move(state), g, take);
  }
  return state;
}

}  // namespace nfpf
