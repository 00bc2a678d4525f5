#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>

#include "spar/copulas/copula.hpp"
#include "spar/geometry/star_boundary.hpp"

namespace spar::model {

enum class LambdaProfile { Standard, GaussianType, MuDependent, NumericOnly };

// Closed-form description of the Laplace-margin decay of the AR copula
// function: delta_L(r,w) ~ g(w) r^{beta(w)} exp(-r (lambda(w)-1)). For
// gaussian-type profiles the decay is exp(-(coeff/2) r^2 + r/2) instead and
// `coeff` carries the quadratic-exponent coefficient.
struct LambdaInfo {
  LambdaProfile profile = LambdaProfile::NumericOnly;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double beta = 0.0;
  double coeff = 0.0;       // quadratic coefficient for gaussian_type
  double mu_slope = 0.0;    // sigma(mu)^{-1} = 1 + mu_slope * mu for mu_dependent
};

namespace detail {
inline int quadrant_of(double w1, double w2) {
  // 1..4 by signs; axes are attributed following the catalog's half-open
  // conventions (handled by callers where it matters)
  if (w1 >= 0 && w2 >= 0) return 1;
  if (w1 < 0 && w2 >= 0) return 2;
  if (w1 < 0 && w2 < 0) return 3;
  return 4;
}
}  // namespace detail

// Closed-form lambda(w), beta(w) and profile for a copula on Laplace margins,
// evaluated on the L1 circle. Families without a closed form report
// NumericOnly. lambda is extended off the circle by order-1 homogeneity.
inline LambdaInfo lambda_catalog(const copulas::CopulaModel& c, std::span<const double> w) {
  using copulas::CopulaFamily;
  if (w.size() != 2 && c.family() != CopulaFamily::Independence)
    throw std::invalid_argument("lambda_catalog: bivariate families need d = 2");
  double s = 0.0;
  for (double wj : w) s += std::abs(wj);
  if (!(s > 0.0)) throw std::domain_error("lambda_catalog: zero direction");
  const double scale = s;  // homogeneity: evaluate on the circle, rescale after
  LambdaInfo out;
  out.profile = LambdaProfile::Standard;

  if (c.family() == CopulaFamily::Independence) {
    out.lambda = scale;
    out.beta = 0.0;
    return out;
  }

  const double w1 = w[0] / s, w2 = w[1] / s;
  const double a1 = std::abs(w1), a2 = std::abs(w2);
  const int quad = detail::quadrant_of(w1, w2);

  switch (c.family()) {
    case CopulaFamily::Frank:
      out.lambda = 1.0;
      break;
    case CopulaFamily::Joe: {
      const double al = c.alpha();
      if (quad == 3) out.lambda = 1.0;
      else if (quad == 1) out.lambda = 1.0 - al + (2.0 * al - 1.0) * std::max(a1, a2);
      else if (quad == 4) out.lambda = 1.0 + (al - 1.0) * a1;
      else out.lambda = 1.0 + (al - 1.0) * a2;
      break;
    }
    case CopulaFamily::Gaussian: {
      const double sg = (w1 * w2 > 0) ? 1.0 : (w1 * w2 < 0 ? -1.0 : 0.0);
      const double rho = c.rho();
      const double rt = rho * sg;
      out.lambda = (1.0 - 2.0 * rt * std::sqrt(a1 * a2)) / (1.0 - rho * rho);
      if (a1 * a2 > 0.0) {
        out.beta = rt * (2.0 * rt - 1.0 / std::sqrt(a1 * a2)) / (2.0 - 2.0 * rho * rho);
      } else {
        out.beta = rho * rho / (2.0 * (1.0 - rho * rho));
      }
      break;
    }
    case CopulaFamily::StudentT:
      out.lambda = std::max(a1, a2) + std::abs(a1 - a2) / c.nu();
      break;
    case CopulaFamily::Ev: {
      const auto& dep = c.dependence();
      const bool sym = dep.kind() == copulas::EvKind::SymmetricLogistic ||
                       (dep.kind() == copulas::EvKind::AsymmetricLogistic &&
                        dep.gamma1() == 1.0 && dep.gamma2() == 1.0);
      if (sym) {
        const double al = dep.alpha();
        if (quad == 3) out.lambda = dep.A(a1, a2);
        else if (quad == 1) out.lambda = 1.0 - al + (2.0 * al - 1.0) * std::max(a1, a2);
        else if (quad == 4) {
          out.lambda = 1.0 + (al - 1.0) * a1;
          out.beta = 1.0 - al;
        } else {
          out.lambda = 1.0 + (al - 1.0) * a2;
          out.beta = 1.0 - al;
        }
      } else if (dep.kind() == copulas::EvKind::AsymmetricLogistic) {
        const double al = dep.alpha();
        if (quad == 3) out.lambda = dep.A(a1, a2);
        else if (quad == 1) {
          // knots at (alpha-1)/(2alpha-1) and alpha/(2alpha-1) in q = |w2|
          const double k1 = (al - 1.0) / (2.0 * al - 1.0);
          const double k2 = al / (2.0 * al - 1.0);
          if (a2 <= k1 || a2 >= k2) out.lambda = 1.0;
          else out.lambda = 1.0 - al + (2.0 * al - 1.0) * std::max(a1, a2);
        } else {
          out.lambda = 1.0;
        }
      } else {
        // Husler-Reiss
        const double al = dep.alpha();
        if (quad == 3) {
          out.lambda = dep.A(a1, a2);
        } else if (a1 == 0.0 || a2 == 0.0) {
          if (quad == 1) {
            // positive axes: gaussian-type with the full coefficient
            out.profile = LambdaProfile::GaussianType;
            out.coeff = 0.25 * al * al;
            out.lambda = std::numeric_limits<double>::quiet_NaN();
          } else {
            // negative axes: sub-exponential log^2 decay, unit effective rate
            out.lambda = 1.0;
          }
        } else if (quad == 1) {
          if (a1 == a2) {
            out.lambda = 0.5;  // the diagonal ray keeps a standard profile
          } else {
            out.profile = LambdaProfile::GaussianType;
            out.coeff = 0.25 * al * al * (w1 - w2) * (w1 - w2);
            out.lambda = std::numeric_limits<double>::quiet_NaN();
          }
        } else {
          out.profile = LambdaProfile::GaussianType;
          out.coeff = 0.25 * al * al * (quad == 2 ? a2 * a2 : a1 * a1);
          out.lambda = std::numeric_limits<double>::quiet_NaN();
        }
        break;
      }
      break;
    }
    case CopulaFamily::BivExponential: {
      const double al = c.alpha();
      if (quad == 3 && a1 > 0.0 && a2 > 0.0) {
        if (al == 0.0) {
          out.lambda = 1.0;
        } else {
          out.profile = LambdaProfile::MuDependent;
          out.lambda = 1.0;
          out.mu_slope = 2.0 * al * a1 * a2;  // sigma(mu) = (1 + mu_slope * mu)^{-1}
        }
      } else if (quad == 1 && a1 > 0.0 && a2 > 0.0 && al == 1.0) {
        out.lambda = 1.0 + std::min(a1, a2);
      } else if ((a1 == 0.0 || a2 == 0.0) && (quad == 2 || quad == 3 || quad == 4) &&
                 (w1 < 0 || w2 < 0)) {
        // negative axes: delta ~ exp(-alpha log(2) r)
        out.lambda = 1.0 + al * std::log(2.0);
      } else {
        out.lambda = 1.0;
        if (quad == 2 || quad == 4) out.beta = 1.0;
      }
      break;
    }
    default:
      out.profile = LambdaProfile::NumericOnly;
      return out;
  }
  if (out.profile == LambdaProfile::Standard || out.profile == LambdaProfile::MuDependent)
    out.lambda *= scale;
  return out;
}

inline LambdaInfo lambda_catalog(const copulas::CopulaModel& c, double q) {
  const auto w = geometry::StarBoundary::lp(1.0).pseudo_trig(q);
  return lambda_catalog(c, std::span<const double>(w));
}

// Recommended polar origin for the asymmetric-logistic EV copula on Laplace
// margins: balances the two leading terms of the copula density at constant
// angle, which speeds up convergence of delta_L to its limit at finite
// levels. The asymptotics are unchanged by any finite shift; the default
// origin stays at zero.
inline std::array<double, 2> asym_logistic_origin(double alpha, double g1, double g2) {
  if (!(alpha > 1.0 && g1 > 0.0 && g1 < 1.0 && g2 > 0.0 && g2 < 1.0))
    throw std::invalid_argument("asym_logistic_origin: needs alpha > 1 and gammas in (0,1)");
  const double b1 =
      std::log((1.0 - g1) / (2.0 * (alpha - 1.0) * g2) * std::pow(g2 / g1, alpha));
  const double b2 =
      std::log((1.0 - g2) / (2.0 * (alpha - 1.0) * g1) * std::pow(g1 / g2, alpha));
  const double den = 2.0 * alpha - 1.0;
  return {((alpha - 1.0) * b1 + alpha * b2) / den, (alpha * b1 + (alpha - 1.0) * b2) / den};
}

}  // namespace spar::model
