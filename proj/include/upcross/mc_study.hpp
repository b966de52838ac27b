#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "upcross/simulate.hpp"

namespace upcross {

// Multi-sample Monte Carlo study of the runs estimator on a process with
// known eta: `replicates` independent replicates of `runs` samples each, the
// estimator evaluated on a k grid per sample. Replicate statistics (mean,
// MSE against the true eta, SD) are averaged across replicates and reported
// with normal-approximation half-widths from the replicate spread.
//
// Sample g of sample-size index s, replicate m, run j draws from substream
// (s * replicates + m) * runs + j of the master seed, and per-run results
// are aggregated in run order, so a study result depends only on its spec —
// never on thread count or scheduling.
struct McStudySpec {
  ProcessKind process = ProcessKind::armax;
  int r = 2;                            // ar1 only
  std::vector<int> sample_sizes;
  int runs = 500;
  int replicates = 4;
  std::optional<std::vector<int>> k_grid;  // strictly increasing; default 1..n/4 per n
  std::uint64_t master_seed = 0;
  double ci_level = 0.95;               // for the replicate half-widths
  int threads = 1;
};

// Aggregates for one (n, k) cell. A run is skipped at k when the sample has
// no upcrossings of the level X_{n-k:n}; skipped runs are counted, never
// imputed. absent marks cells where every run was skipped.
struct McCell {
  int n = 0;
  int k = 0;
  bool absent = false;
  double mean_eta = 0.0;
  double mse = 0.0;
  double sd = 0.0;
  double halfwidth_mean = 0.0;
  double halfwidth_mse = 0.0;
  double halfwidth_sd = 0.0;
  long skipped_runs = 0;
};

// Per sample size: the k minimizing aggregated MSE (smallest k under ties).
struct McSummary {
  int n = 0;
  int k0 = 0;
  double k0_fraction = 0.0;
  McCell at_k0;
};

struct McStudyResult {
  double eta_true = 0.0;
  std::vector<McCell> cells;        // ordered by (n, k)
  std::vector<McSummary> summaries; // one per sample size
};

McStudyResult run_study(const McStudySpec& spec);

struct BiasVariance {
  int n = 0;
  int k = 0;
  double bias_sq = 0.0;
  double variance = 0.0;  // mse - bias^2, floored at zero
};

// bias^2 + variance reproduces each cell's MSE exactly before flooring.
std::vector<BiasVariance> bias_variance_decomposition(const McStudyResult& result,
                                                      double eta_true);

}  // namespace upcross
