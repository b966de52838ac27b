#include "upcross/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace upcross {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "series contains a non-finite value at observation " << i + 1;
      throw std::invalid_argument(msg.str());
    }
  }
}

double threshold_from_sorted(std::span<const double> sorted_desc, int k) {
  const int n = static_cast<int>(sorted_desc.size());
  if (k < 1 || k > n - 1) {
    std::ostringstream msg;
    msg << "top order statistic k=" << k << " out of range for series of length n=" << n
        << " (need 1 <= k <= n-1)";
    throw std::out_of_range(msg.str());
  }
  return sorted_desc[static_cast<std::size_t>(k)];
}

double resolve_threshold(const TimeSeries& series, const ThresholdSpec& spec) {
  if (const auto* fixed = std::get_if<FixedLevel>(&spec)) {
    return fixed->level;
  }
  const int k = std::get<TopOrderStatistic>(spec).k;
  const int n = series.size();
  if (k < 1 || k > n - 1) {
    std::ostringstream msg;
    msg << "top order statistic k=" << k << " out of range for series of length n=" << n
        << " (need 1 <= k <= n-1)";
    throw std::out_of_range(msg.str());
  }
  // (k+1)-th largest: element at index k once sorted descending.
  std::vector<double> copy = series.values();
  std::nth_element(copy.begin(), copy.begin() + k, copy.end(), std::greater<double>());
  return copy[static_cast<std::size_t>(k)];
}

TimeSeries log_returns(const TimeSeries& prices) {
  const int n = prices.size();
  if (n < 2) {
    throw std::invalid_argument("log_returns requires at least two prices");
  }
  for (int i = 0; i < n; ++i) {
    if (prices[i] <= 0.0) {
      std::ostringstream msg;
      msg << "log_returns requires strictly positive prices; observation " << i + 1 << " is "
          << prices[i];
      throw std::domain_error(msg.str());
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    out[static_cast<std::size_t>(i)] = 100.0 * (std::log(prices[i + 1]) - std::log(prices[i]));
  }
  return TimeSeries(std::move(out));
}

std::string describe(const ThresholdSpec& spec) {
  std::ostringstream out;
  if (const auto* fixed = std::get_if<FixedLevel>(&spec)) {
    out << "u=" << fixed->level;
  } else {
    out << "k=" << std::get<TopOrderStatistic>(spec).k;
  }
  return out.str();
}

}  // namespace upcross
