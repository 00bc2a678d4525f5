#pragma once

#include <cmath>

namespace spar {

// A probability in [0,1] carried together with stable logs of itself and its
// complement. Marginal cdf values on angular rays decay like exp(-r), so the
// plain double alone cannot represent the deep-tail information.
struct ProbExt {
  double u = 0.0;
  double log_cdf = 0.0;  // log u
  double log_sf = 0.0;   // log(1 - u)

  static ProbExt from_u(double u) {
    ProbExt p;
    p.u = u;
    p.log_cdf = std::log(u);
    p.log_sf = std::log1p(-u);
    return p;
  }
};

}  // namespace spar
