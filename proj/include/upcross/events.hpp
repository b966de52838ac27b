#pragma once

#include <vector>

#include "upcross/series.hpp"

namespace upcross {

// Positions are 1-based throughout this module: an upcrossing of level u at
// position i means X_i <= u < X_{i+1}, for i in [1, n-1]. A run start is a
// position i in [1, n-3] with no upcrossing at i and an upcrossing at i+2;
// the run length counts the chain of upcrossings at i+2, i+4, ... until the
// first even offset that is not an upcrossing. Any position beyond n-1 counts
// as "not an upcrossing", so a run still open at the series end is truncated
// there and kept with its observed length.

struct RunSet {
  std::vector<int> starts;   // ascending, in [1, n-3]
  std::vector<int> lengths;  // aligned with starts, each >= 1
};

// Everything the estimators need about one (series, threshold) pair.
struct EventSummary {
  double threshold = 0.0;
  int n = 0;
  std::vector<int> upcrossing_positions;  // ascending, in [1, n-1]
  int exceedance_count = 0;               // #{i : X_i > u}
  std::vector<int> run_starts;
  std::vector<int> run_lengths;
};

// Count-only view of the same events, for hot loops that sweep thresholds.
struct EventCounts {
  int upcrossings = 0;       // number of positions with X_i <= u < X_{i+1}
  int run_starts = 0;
  int run_upcrossings = 0;   // total upcrossings inside detected runs
  double sum_sq_run_lengths = 0.0;
};

// All i in [1, n-1] with X_i <= u < X_{i+1}; empty when n < 2. Comparisons
// are exact, no tolerance is applied.
std::vector<int> detect_upcrossings(const TimeSeries& series, double u);

int count_exceedances(const TimeSeries& series, double u);

RunSet detect_runs(const TimeSeries& series, double u);

EventSummary summarize_events(const TimeSeries& series, double u);

// Single pass over the series, no allocation.
EventCounts count_events(const TimeSeries& series, double u);

}  // namespace upcross
