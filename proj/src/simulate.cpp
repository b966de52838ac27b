#include "upcross/simulate.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "upcross/rng.hpp"

namespace upcross {

void validate(const ProcessSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("process spec requires n >= 1, got n=" + std::to_string(spec.n));
  }
  if (spec.kind == ProcessKind::ar1 && spec.r < 2) {
    throw std::invalid_argument("ar1 requires r >= 2, got r=" + std::to_string(spec.r));
  }
}

namespace {

std::vector<double> simulate_armax(int n, Rng& rng) {
  // X_i = max(Y_i, Y_{i-2}, Y_{i-3}); drawing Y from index -2 makes X_1
  // already stationary.
  double y_back3 = rng.uniform();  // Y_{-2}
  double y_back2 = rng.uniform();  // Y_{-1}
  double y_back1 = rng.uniform();  // Y_0
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double y = rng.uniform();
    x[static_cast<std::size_t>(i)] = std::max({y, y_back2, y_back3});
    y_back3 = y_back2;
    y_back2 = y_back1;
    y_back1 = y;
  }
  return x;
}

std::vector<double> simulate_ar1(int n, int r, Rng& rng) {
  // eps = (floor(U*r) + 1)/r puts mass 1/r on each of 1/r, ..., 1; the
  // clamp guards against U*r rounding up to r.
  double state = rng.uniform();  // X_0, stationary for this recursion
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const int atom = std::min(r - 1, static_cast<int>(u * r));
    const double eps = static_cast<double>(atom + 1) / r;
    state = -state / r + eps;
    x[static_cast<std::size_t>(i)] = state;
  }
  return x;
}

std::vector<double> simulate_iid(int n, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) {
    v = rng.uniform();
  }
  return x;
}

}  // namespace

TimeSeries simulate(const ProcessSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  switch (spec.kind) {
    case ProcessKind::armax:
      return TimeSeries(simulate_armax(spec.n, rng));
    case ProcessKind::ar1:
      return TimeSeries(simulate_ar1(spec.n, spec.r, rng));
    case ProcessKind::iid_uniform:
      return TimeSeries(simulate_iid(spec.n, rng));
  }
  throw std::logic_error("unreachable process kind");
}

KnownIndices known_indices(ProcessKind kind, int r) {
  switch (kind) {
    case ProcessKind::armax:
      return {0.5, 1.0 / 3.0, 2.0 / 3.0};
    case ProcessKind::ar1: {
      if (r < 2) {
        throw std::invalid_argument("ar1 requires r >= 2, got r=" + std::to_string(r));
      }
      const double eta = 1.0 - 1.0 / (static_cast<double>(r) * r);
      return {eta, eta, 1.0};
    }
    case ProcessKind::iid_uniform:
      return {1.0, 1.0, 1.0};
  }
  throw std::logic_error("unreachable process kind");
}

KnownIndices known_indices(const ProcessSpec& spec) { return known_indices(spec.kind, spec.r); }

const char* process_name(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::armax:
      return "armax";
    case ProcessKind::ar1:
      return "ar1";
    case ProcessKind::iid_uniform:
      return "iid";
  }
  return "unknown";
}

}  // namespace upcross
