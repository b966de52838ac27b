#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace upcross {

// An ordered sequence of finite real observations. Values are validated at
// construction and immutable afterwards, so instances can be shared freely
// across threads.
class TimeSeries {
 public:
  TimeSeries() = default;

  // Throws std::invalid_argument if any value is NaN or infinite.
  explicit TimeSeries(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  // 0-based element access.
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Threshold given directly as a level.
struct FixedLevel {
  double level = 0.0;
};

// Threshold taken from the data: the (k+1)-th largest observation, duplicates
// occupying consecutive ranks. Valid for 1 <= k <= n-1.
struct TopOrderStatistic {
  int k = 1;
};

using ThresholdSpec = std::variant<FixedLevel, TopOrderStatistic>;

// Resolves a threshold spec against a series. For TopOrderStatistic(k) this
// is the (k+1)-th largest value; throws std::out_of_range when k is outside
// [1, n-1], naming both k and n.
double resolve_threshold(const TimeSeries& series, const ThresholdSpec& spec);

// Same as resolve_threshold for TopOrderStatistic, but takes values already
// sorted in descending order. Callers that sweep many k over one series sort
// once and use this.
double threshold_from_sorted(std::span<const double> sorted_desc, int k);

// 100 * (ln x_{t+1} - ln x_t) for t = 1..n-1. Requires n >= 2 and strictly
// positive prices; throws std::domain_error naming the offending observation.
TimeSeries log_returns(const TimeSeries& prices);

// Human-readable description of a threshold spec, e.g. "k=54" or "u=1.25".
std::string describe(const ThresholdSpec& spec);

}  // namespace upcross
