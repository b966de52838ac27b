#include "upcross/events.hpp"

namespace upcross {

namespace {

// Upcrossing indicator at 1-based position i; positions outside [1, n-1]
// evaluate to false (series-end truncation).
inline bool upcrossing_at(const std::vector<double>& x, int n, double u, int i) {
  return i >= 1 && i <= n - 1 && x[static_cast<std::size_t>(i - 1)] <= u &&
         u < x[static_cast<std::size_t>(i)];
}

}  // namespace

std::vector<int> detect_upcrossings(const TimeSeries& series, double u) {
  const auto& x = series.values();
  const int n = series.size();
  std::vector<int> positions;
  for (int i = 1; i <= n - 1; ++i) {
    if (upcrossing_at(x, n, u, i)) {
      positions.push_back(i);
    }
  }
  return positions;
}

int count_exceedances(const TimeSeries& series, double u) {
  int count = 0;
  for (double v : series.values()) {
    if (v > u) {
      ++count;
    }
  }
  return count;
}

RunSet detect_runs(const TimeSeries& series, double u) {
  const auto& x = series.values();
  const int n = series.size();
  RunSet runs;
  for (int i = 1; i <= n - 3; ++i) {
    if (!upcrossing_at(x, n, u, i) && upcrossing_at(x, n, u, i + 2)) {
      int length = 1;
      int p = i + 2;
      while (upcrossing_at(x, n, u, p + 2)) {
        ++length;
        p += 2;
      }
      runs.starts.push_back(i);
      runs.lengths.push_back(length);
    }
  }
  return runs;
}

EventSummary summarize_events(const TimeSeries& series, double u) {
  EventSummary summary;
  summary.threshold = u;
  summary.n = series.size();
  summary.upcrossing_positions = detect_upcrossings(series, u);
  summary.exceedance_count = count_exceedances(series, u);
  RunSet runs = detect_runs(series, u);
  summary.run_starts = std::move(runs.starts);
  summary.run_lengths = std::move(runs.lengths);
  return summary;
}

EventCounts count_events(const TimeSeries& series, double u) {
  const auto& x = series.values();
  const int n = series.size();
  EventCounts counts;
  for (int i = 1; i <= n - 1; ++i) {
    if (upcrossing_at(x, n, u, i)) {
      ++counts.upcrossings;
    }
  }
  for (int i = 1; i <= n - 3; ++i) {
    if (!upcrossing_at(x, n, u, i) && upcrossing_at(x, n, u, i + 2)) {
      int length = 1;
      int p = i + 2;
      while (upcrossing_at(x, n, u, p + 2)) {
        ++length;
        p += 2;
      }
      ++counts.run_starts;
      counts.run_upcrossings += length;
      counts.sum_sq_run_lengths += static_cast<double>(length) * length;
    }
  }
  return counts;
}

}  // namespace upcross
