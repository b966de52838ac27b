#include "upcross/normal.hpp"

#include <boost/math/distributions/normal.hpp>

#include <stdexcept>

namespace upcross {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile requires p in (0, 1)");
  }
  static const boost::math::normal_distribution<double> standard_normal;
  return boost::math::quantile(standard_normal, p);
}

}  // namespace upcross
