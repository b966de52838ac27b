#pragma once

#include <map>
#include <optional>
#include <vector>

#include "upcross/events.hpp"
#include "upcross/series.hpp"

namespace upcross {

// The runs estimator of the upcrossings index eta at a threshold u is the
// ratio of run starts to upcrossings,
//
//   eta_hat = N_hat / N_tilde,
//
// where N_tilde counts positions with X_i <= u < X_{i+1} and N_hat counts
// positions i with no upcrossing at i followed by one at i+2. 1/eta is the
// limiting mean length of a run of upcrossings, so the companion estimator
// eta_star = N_hat / N_bar (N_bar = total upcrossings inside detected runs)
// is the reciprocal of the mean detected run length.
//
// Confidence intervals use the self-normalizing pivot
//
//   sqrt(N_bar / (eta_hat * ((eta_hat * sigma_hat)^2 - 1))) * (eta_hat - eta)
//
// which is asymptotically standard normal; sigma_hat^2 is the mean squared
// run length. When (eta_hat * sigma_hat)^2 <= 1 the variance estimate is
// nonpositive (every detected run has the same reciprocal-eta length) and the
// interval is reported as degenerate at eta_hat with a flag.

enum class EstimateStatus {
  ok,
  no_upcrossings,  // N_tilde = 0; numeric fields are meaningless
  degenerate_ci,   // interval collapsed to a point, see above
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  bool degenerate = false;
};

struct EtaEstimate {
  ThresholdSpec spec;
  double threshold = 0.0;
  EstimateStatus status = EstimateStatus::no_upcrossings;
  double eta_hat = 0.0;        // N_hat / N_tilde
  int n_upcrossings = 0;       // N_tilde
  int n_run_starts = 0;        // N_hat
  int n_run_upcrossings = 0;   // N_bar
  double sigma2_hat = 0.0;     // sum Y_i^2 / N_hat, 0 when N_hat = 0
  std::optional<ConfidenceInterval> ci;
};

enum class ScaleHint { linear, logarithmic };

struct EtaCurveEntry {
  int k = 0;
  EtaEstimate estimate;
};

struct EtaCurve {
  std::vector<EtaCurveEntry> entries;  // k strictly increasing
  ScaleHint scale_hint = ScaleHint::linear;
};

// Runs estimator at one threshold. ci_level, when given, must lie in (0, 1);
// the interval is clipped to [0, 1]. Zero upcrossings yield a
// no_upcrossings status rather than an error or NaN.
EtaEstimate estimate_eta(const TimeSeries& series, const ThresholdSpec& spec,
                         std::optional<double> ci_level = std::nullopt);

// Same estimate computed from precomputed events; spec and u are recorded
// verbatim. Lets threshold sweeps reuse one sorted copy of the series.
EtaEstimate estimate_from_counts(const EventCounts& counts, const ThresholdSpec& spec, double u,
                                 std::optional<double> ci_level = std::nullopt);

// N_hat / N_bar, the reciprocal of the mean detected run length. Empty when
// no runs were detected.
std::optional<double> estimate_eta_star(const TimeSeries& series, const ThresholdSpec& spec);

// Empirical distribution of detected run lengths; frequencies sum to one.
// Empty when no runs were detected.
std::optional<std::map<int, double>> run_length_distribution(const TimeSeries& series,
                                                             const ThresholdSpec& spec);

// (N_tilde / exceedances) * eta_hat: the extremal index via theta =
// (nu/tau) * eta with both rates estimated empirically at u. Empty when the
// series has no exceedances or no upcrossings of u.
std::optional<double> estimate_theta_via_relation(const TimeSeries& series,
                                                  const ThresholdSpec& spec);

// One estimate per k; the grid must be strictly increasing within [1, n-1]
// and nonempty (std::invalid_argument otherwise).
EtaCurve eta_curve(const TimeSeries& series, const std::vector<int>& k_grid,
                   std::optional<double> ci_level = std::nullopt);

// All k in 1..floor(n/4), clamped to k <= n-1; the default sweep for plots.
std::vector<int> default_k_grid(int n);

}  // namespace upcross
