#pragma once

#include <cstdint>
#include <vector>

#include "nfpf/common.hpp"
#include "nfpf/sflm.hpp"

namespace nfpf {

struct CycleRecord {
  int cycle = 0;
  std::vector<Index> added;
  // learnability-score distribution over the scored pool, for audit
  double g_min = 0.0;
  double g_median = 0.0;
  double g_max = 0.0;
};

struct SelectionState {
  std::vector<Index> selected;   // acquisition order
  std::vector<Index> remaining;  // ascending sample index
  int cycle = 0;
  std::vector<CycleRecord> history;
};

struct NfpfConfig {
  Index m = 0;          // target subset size
  Index k = 0;          // initial (RD-seeded) size
  Index n = 1;          // per-cycle acquisitions
  Index h_current = 10;
  Index h_reference = 0;  // 0 = auto: 10 * h_current, clamped to sample count
  RidgeParam c;
  Activation activation = Activation::Sigmoid;
  std::uint64_t seed = 0;
};

// G_i = phi(current) - phi(reference); very negative marks samples the
// subset model cannot yet explain but the full-data model can.
Vector learnability_scores(const SflmModel& current, const SflmModel& reference,
                           const Matrix& x_u);

// Moves the n remaining samples with smallest score into the selected set
// (ties to the smaller sample index), increments the cycle, logs history.
// scores[j] must correspond to state.remaining[j].
SelectionState select_cycle(SelectionState state, const Vector& scores, Index n);

// Full progressive loop: one reference model on all rows, then per-cycle
// retrained current models until |selected| == m. Deterministic per seed;
// never reads labels.
SelectionState run_nfpf(const Matrix& x, const std::vector<Index>& initial,
                        const NfpfConfig& config);

}  // namespace nfpf
