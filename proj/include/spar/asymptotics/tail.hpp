#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spar/copulas/copula.hpp"

namespace spar::asymptotics {

enum class DependenceClass { Strong, Intermediate, OrthantIndependent, Negative };

inline const char* class_name(DependenceClass c) {
  switch (c) {
    case DependenceClass::Strong: return "strong";
    case DependenceClass::Intermediate: return "intermediate";
    case DependenceClass::OrthantIndependent: return "orthant_independent";
    case DependenceClass::Negative: return "negative";
  }
  return "?";
}

struct AsymptoticSummary {
  std::vector<int> corner;
  double kappa = 0.0;
  bool kappa_infinite = false;
  std::optional<double> chi;
  std::optional<std::pair<double, double>> beta_pair;
  DependenceClass dependence_class = DependenceClass::Intermediate;
};

struct ExponentPair {
  bool available = false;
  double Lambda = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
};

// Closed-form copula / copula-density exponent functions (homogeneous order
// one) for the catalogued families at a given corner.
inline ExponentPair exponent_catalog(const copulas::CopulaModel& c, std::span<const int> corner,
                                     std::span<const double> z) {
  using copulas::CopulaFamily;
  for (double zj : z)
    if (!(zj >= 0.0)) throw std::domain_error("exponent_catalog: z in the nonneg orthant");
  ExponentPair out;
  // net corner after composing the view's own reflection
  std::vector<int> net(c.corner());
  for (std::size_t j = 0; j < net.size() && j < corner.size(); ++j) net[j] ^= (corner[j] != 0);

  const double zs = z[0] + z[1];
  switch (c.family()) {
    case CopulaFamily::Independence: {
      out.available = true;
      double s = 0.0;
      for (double zj : z) s += zj;
      out.Lambda = out.lambda = s;
      return out;
    }
    case CopulaFamily::Ev: {
      if (net[0] == 0 && net[1] == 0) {
        out.available = true;
        out.Lambda = out.lambda = c.dependence().A(z[0], z[1]);
        return out;
      }
      if (net[0] == 1 && net[1] == 1) {
        // strong-dependence corner: Lambda = max; lambda from the logistic
        // edge indices when they exist
        out.available = true;
        out.Lambda = std::max(z[0], z[1]);
        if (c.dependence().kind() == copulas::EvKind::SymmetricLogistic) {
          const double beta = c.dependence().alpha() - 1.0;
          const double w = z[1] / zs;
          out.lambda = zs * (0.5 + (2.0 * (1.0 + beta) - 1.0) * std::abs(w - 0.5));
        }
        return out;
      }
      return out;
    }
    case CopulaFamily::Gaussian: {
      out.available = true;
      const bool mixed = net[0] != net[1];
      const double rho = mixed ? -c.rho() : c.rho();
      out.lambda = (z[0] + z[1] - 2.0 * rho * std::sqrt(z[0] * z[1])) / (1.0 - rho * rho);
      out.Lambda = out.lambda;
      return out;
    }
    case CopulaFamily::StudentT: {
      out.available = true;
      out.Lambda = std::max(z[0], z[1]);
      out.lambda = std::max(z[0], z[1]) + std::abs(z[0] - z[1]) / c.nu();
      return out;
    }
    default:
      return out;  // numeric-only marker
  }
}

struct ArlShape {
  double B = 0.0;
  double shape1 = 0.0;  // density-side exponent on z1
  double shape2 = 0.0;  // density-side exponent on z2
};

// Tail order function and tail density exponents from the ARE description,
// normalised so B(1,1) = 1 (the unhoused constants are never estimated).
inline ArlShape arl_from_are(double kappa, double beta, double z1, double z2) {
  if (!(z1 > 0.0 && z2 > 0.0)) throw std::domain_error("arl_from_are: z must be positive");
  ArlShape out;
  out.B = std::pow(z1, 0.5 * (kappa - beta)) * std::pow(z2, 0.5 * (kappa + beta));
  out.shape1 = 0.5 * (kappa - beta) - 1.0;
  out.shape2 = 0.5 * (kappa + beta) - 1.0;
  return out;
}

// Copula density exponent function recovered from the ARL description.
inline double are_from_arl(double kappa, double beta1, double beta2, double w) {
  if (!(w > 0.0 && w < 1.0)) throw std::domain_error("are_from_arl: w in (0,1) required");
  const double dev = std::abs(w - 0.5);
  if (w <= 0.5) return 0.5 * kappa + (2.0 * (1.0 + beta2) - kappa) * dev;
  return 0.5 * kappa + (2.0 * (1.0 + beta1) - kappa) * dev;
}

struct SlopeEstimate {
  double value = 0.0;
  double tolerance = 0.0;  // spread of the anchor slopes
  bool infinite = false;   // outside the support: density identically zero
};

namespace detail {
// two-decade slope with a Richardson-style linear fit in 1/log(t) over three
// anchors; slowly-varying factors bias single-point slopes. The spread of
// the anchor slopes is reported as the estimate's tolerance.
template <class LogF>
SlopeEstimate richardson_log_slope(LogF&& logf, double t) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double smin = 1e300, smax = -1e300;
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const double ti = t * std::pow(10.0, -i);
    const double l1 = logf(ti), l2 = logf(ti / 100.0);
    if (!std::isfinite(l1) || !std::isfinite(l2)) continue;
    const double s = (l1 - l2) / (std::log(ti) - std::log(ti / 100.0));
    const double x = 1.0 / std::log(ti / 10.0);
    sx += x;
    sy += s;
    sxx += x * x;
    sxy += x * s;
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    ++n;
  }
  SlopeEstimate out;
  if (n == 0) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (n == 1) {
    out.value = sy;
    return out;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.value = (sy - slope * sx) / n;
  out.tolerance = smax - smin;
  return out;
}
}  // namespace detail

// Estimate of kappa - d from the decay of c_{u0}(t z) along direction z.
inline SlopeEstimate tail_density_slope(const copulas::CopulaModel& c,
                                        std::span<const int> corner, std::span<const double> z,
                                        double t) {
  if (!(t > 0.0 && t <= 1e-2)) throw std::domain_error("tail_density_slope: t in (0, 1e-2]");
  const auto v = c.reflect_corner(corner);
  auto logf = [&](double tt) {
    std::vector<ProbExt> pe(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) pe[j] = ProbExt::from_u(tt * z[j]);
    return v.log_density_ext(pe);
  };
  if (!std::isfinite(logf(t))) {
    SlopeEstimate out;
    out.infinite = true;
    return out;
  }
  return detail::richardson_log_slope(logf, t);
}

// kappa estimate from the copula cdf decay along the diagonal (same
// Richardson scheme over three anchors).
inline SlopeEstimate tail_order_slope(const copulas::CopulaModel& c, std::span<const int> corner,
                                      double t) {
  const auto v = c.reflect_corner(corner);
  auto logC = [&](double tt) {
    std::vector<double> u(c.dimension(), tt);
    const double C = v.cdf(std::span<const double>(u));
    return C > 0.0 ? std::log(C) : -std::numeric_limits<double>::infinity();
  };
  if (!std::isfinite(logC(t))) {
    SlopeEstimate out;
    out.infinite = true;
    return out;
  }
  return detail::richardson_log_slope(logC, t);
}

inline std::optional<double> kappa_catalog(const copulas::CopulaModel& c,
                                           std::span<const int> corner) {
  using copulas::CopulaFamily;
  std::vector<int> net(c.corner());
  for (std::size_t j = 0; j < net.size() && j < corner.size(); ++j) net[j] ^= (corner[j] != 0);
  const bool diag = net[0] == net[1];
  switch (c.family()) {
    case CopulaFamily::Independence: return static_cast<double>(c.dimension());
    case CopulaFamily::Frank: return 2.0;
    case CopulaFamily::Gaussian: return 2.0 / (1.0 + (diag ? c.rho() : -c.rho()));
    case CopulaFamily::StudentT: return 1.0;
    case CopulaFamily::Ev: {
      if (net[0] == 0 && net[1] == 0) return c.dependence().A(1.0, 1.0);
      if (net[0] == 1 && net[1] == 1) return 1.0;
      return std::nullopt;
    }
    case CopulaFamily::Joe: {
      if (net[0] == 1 && net[1] == 1) return 1.0;
      if (net[0] == 0 && net[1] == 0) return 2.0;
      return 1.0 + c.alpha();
    }
    case CopulaFamily::BivExponential:
      if (net[0] == 0 && net[1] == 0 && c.alpha() > 0.0)
        return std::numeric_limits<double>::infinity();
      return std::nullopt;
    default: return std::nullopt;
  }
}

// Dependence classification in a corner; catalog values preferred, numeric
// slope estimates otherwise.
inline AsymptoticSummary classify(const copulas::CopulaModel& c, std::span<const int> corner,
                                  double t = 1e-6) {
  AsymptoticSummary out;
  out.corner.assign(corner.begin(), corner.end());
  const int d = c.dimension();

  const auto kc = kappa_catalog(c, corner);
  if (kc && std::isinf(*kc)) {
    out.kappa_infinite = true;
    out.kappa = std::numeric_limits<double>::infinity();
    out.dependence_class = DependenceClass::Negative;
    out.chi = 0.0;
    return out;
  }
  if (kc) {
    out.kappa = *kc;
  } else {
    auto est = tail_order_slope(c, corner, t);
    if (est.infinite) {
      out.kappa_infinite = true;
      out.kappa = std::numeric_limits<double>::infinity();
      out.dependence_class = DependenceClass::Negative;
      out.chi = 0.0;
      return out;
    }
    out.kappa = est.value;
  }

  const double kappa_tol = 0.05;
  if (out.kappa < 1.0 + kappa_tol) {
    out.chi = copulas::chi_estimate(c, corner, std::max(t, 1e-6));
    if (*out.chi > 1e-3) {
      out.dependence_class = DependenceClass::Strong;
    } else {
      out.dependence_class = DependenceClass::Intermediate;
    }
  } else if (out.kappa > d + kappa_tol) {
    out.dependence_class = DependenceClass::Negative;
  } else if (out.kappa > d - kappa_tol) {
    out.dependence_class = DependenceClass::OrthantIndependent;
  } else {
    out.dependence_class = DependenceClass::Intermediate;
  }

  // catalog edge indices of the tail density function where known
  using copulas::CopulaFamily;
  if (c.family() == CopulaFamily::StudentT) {
    out.beta_pair = std::make_pair(1.0 / c.nu(), 1.0 / c.nu());
  } else if (c.family() == CopulaFamily::Ev &&
             c.dependence().kind() == copulas::EvKind::SymmetricLogistic) {
    std::vector<int> net(c.corner());
    for (std::size_t j = 0; j < net.size() && j < corner.size(); ++j)
      net[j] ^= (corner[j] != 0);
    if (net[0] == 1 && net[1] == 1) {
      const double b = c.dependence().alpha() - 1.0;
      out.beta_pair = std::make_pair(b, b);
    }
  }
  return out;
}

}  // namespace spar::asymptotics
