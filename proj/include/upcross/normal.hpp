#pragma once

namespace upcross {

// Quantile of the standard normal distribution. p must lie in (0, 1).
double normal_quantile(double p);

}  // namespace upcross
