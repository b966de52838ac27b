#pragma once

#include <cstdint>

#include "upcross/series.hpp"

namespace upcross {

// Test processes with known upcrossings index:
//
//   armax        X_i = max(Y_i, Y_{i-2}, Y_{i-3}), Y iid uniform on [0,1];
//                eta = 1/2, theta = 1/3, marginal CDF x^3.
//   ar1          X_i = -X_{i-1}/r + eps_i with eps_i uniform on the set
//                {1/r, ..., (r-1)/r, 1}, X_0 uniform on (0,1); requires
//                r >= 2; eta = theta = 1 - 1/r^2, marginal uniform.
//   iid_uniform  independent uniforms; eta = theta = 1.
//
// Both autoregressive recursions are started in their stationary law (the
// armax warm-up draws Y from index -2), so no burn-in is applied.
enum class ProcessKind { armax, ar1, iid_uniform };

struct ProcessSpec {
  ProcessKind kind = ProcessKind::armax;
  int r = 2;  // ar1 order parameter, ignored otherwise
  int n = 0;
  std::uint64_t seed = 0;
};

struct KnownIndices {
  double eta = 1.0;
  double theta = 1.0;
  double nu_over_tau = 1.0;  // theta = nu_over_tau * eta
};

// Throws std::invalid_argument for n < 1 or, for ar1, r < 2.
void validate(const ProcessSpec& spec);

// Draws spec.n observations. Identical specs give bitwise identical output
// on every platform and thread count (see rng.hpp for the seeding contract).
TimeSeries simulate(const ProcessSpec& spec);

KnownIndices known_indices(ProcessKind kind, int r = 2);
KnownIndices known_indices(const ProcessSpec& spec);

const char* process_name(ProcessKind kind);

}  // namespace upcross
