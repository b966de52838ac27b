#include "upcross/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "upcross/normal.hpp"

namespace upcross {

EtaEstimate estimate_from_counts(const EventCounts& counts, const ThresholdSpec& spec, double u,
                                 std::optional<double> ci_level) {
  if (ci_level && !(*ci_level > 0.0 && *ci_level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }

  EtaEstimate est;
  est.spec = spec;
  est.threshold = u;
  est.n_upcrossings = counts.upcrossings;
  est.n_run_starts = counts.run_starts;
  est.n_run_upcrossings = counts.run_upcrossings;

  if (counts.upcrossings == 0) {
    est.status = EstimateStatus::no_upcrossings;
    return est;
  }

  est.status = EstimateStatus::ok;
  est.eta_hat = static_cast<double>(counts.run_starts) / counts.upcrossings;
  est.sigma2_hat =
      counts.run_starts > 0 ? counts.sum_sq_run_lengths / counts.run_starts : 0.0;

  if (ci_level) {
    ConfidenceInterval ci;
    ci.level = *ci_level;
    const double t = est.eta_hat * est.eta_hat * est.sigma2_hat;  // (eta_hat * sigma_hat)^2
    if (t <= 1.0 || counts.run_upcrossings == 0) {
      ci.lower = ci.upper = est.eta_hat;
      ci.degenerate = true;
      est.status = EstimateStatus::degenerate_ci;
    } else {
      const double z = normal_quantile(0.5 * (1.0 + *ci_level));
      const double half_width = z * std::sqrt(est.eta_hat * (t - 1.0) / counts.run_upcrossings);
      ci.lower = std::max(0.0, est.eta_hat - half_width);
      ci.upper = std::min(1.0, est.eta_hat + half_width);
    }
    est.ci = ci;
  }
  return est;
}

EtaEstimate estimate_eta(const TimeSeries& series, const ThresholdSpec& spec,
                         std::optional<double> ci_level) {
  const double u = resolve_threshold(series, spec);
  return estimate_from_counts(count_events(series, u), spec, u, ci_level);
}

std::optional<double> estimate_eta_star(const TimeSeries& series, const ThresholdSpec& spec) {
  const double u = resolve_threshold(series, spec);
  const EventCounts counts = count_events(series, u);
  if (counts.run_starts == 0) {
    return std::nullopt;
  }
  return static_cast<double>(counts.run_starts) / counts.run_upcrossings;
}

std::optional<std::map<int, double>> run_length_distribution(const TimeSeries& series,
                                                             const ThresholdSpec& spec) {
  const double u = resolve_threshold(series, spec);
  const RunSet runs = detect_runs(series, u);
  if (runs.lengths.empty()) {
    return std::nullopt;
  }
  std::map<int, double> freq;
  for (int length : runs.lengths) {
    freq[length] += 1.0;
  }
  const double total = static_cast<double>(runs.lengths.size());
  for (auto& [length, count] : freq) {
    count /= total;
  }
  return freq;
}

std::optional<double> estimate_theta_via_relation(const TimeSeries& series,
                                                  const ThresholdSpec& spec) {
  const double u = resolve_threshold(series, spec);
  const EventCounts counts = count_events(series, u);
  const int exceedances = count_exceedances(series, u);
  if (exceedances == 0 || counts.upcrossings == 0) {
    return std::nullopt;
  }
  const double eta_hat = static_cast<double>(counts.run_starts) / counts.upcrossings;
  return (static_cast<double>(counts.upcrossings) / exceedances) * eta_hat;
}

EtaCurve eta_curve(const TimeSeries& series, const std::vector<int>& k_grid,
                   std::optional<double> ci_level) {
  if (k_grid.empty()) {
    throw std::invalid_argument("eta_curve requires a nonempty k grid");
  }
  const int n = series.size();
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid[i] < 1 || k_grid[i] > n - 1) {
      throw std::out_of_range("k grid entry " + std::to_string(k_grid[i]) +
                              " out of range for series of length n=" + std::to_string(n));
    }
    if (i > 0 && k_grid[i] <= k_grid[i - 1]) {
      throw std::invalid_argument("k grid must be strictly increasing");
    }
  }

  std::vector<double> sorted_desc = series.values();
  std::sort(sorted_desc.begin(), sorted_desc.end(), std::greater<double>());

  EtaCurve curve;
  curve.entries.reserve(k_grid.size());
  for (int k : k_grid) {
    const double u = threshold_from_sorted(sorted_desc, k);
    EtaCurveEntry entry;
    entry.k = k;
    entry.estimate =
        estimate_from_counts(count_events(series, u), TopOrderStatistic{k}, u, ci_level);
    curve.entries.push_back(std::move(entry));
  }
  return curve;
}

std::vector<int> default_k_grid(int n) {
  const int k_max = std::min(n / 4, n - 1);
  std::vector<int> grid;
  for (int k = 1; k <= k_max; ++k) {
    grid.push_back(k);
  }
  return grid;
}

}  // namespace upcross
