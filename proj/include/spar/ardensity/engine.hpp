#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "spar/copulas/copula.hpp"
#include "spar/geometry/polar_map.hpp"
#include "spar/margins/margin.hpp"
#include "spar/numerics/quadrature.hpp"
#include "spar/numerics/roots.hpp"

namespace spar::ardensity {

enum class AngleConvention { PseudoAngle, EuclideanTheta };

struct DensityResult {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  bool outside_support = false;
};

struct AngularDensity {
  double value = 0.0;
  bool divergent = false;
};

// Exact angular-radial densities for a (copula, margin, polar map) triple.
// Immutable; every method is const and safe to call concurrently.
class ARDensityEngine {
 public:
  ARDensityEngine(copulas::CopulaModel copula, margins::Margin margin, geometry::PolarMap map,
                  std::vector<double> origin = {})
      : copula_(std::move(copula)),
        margin_(std::move(margin)),
        map_(std::move(map)),
        origin_(std::move(origin)) {
    if (copula_.dimension() != map_.dimension())
      throw std::invalid_argument("engine: copula/map dimension mismatch");
    if (origin_.empty()) origin_.assign(map_.dimension(), 0.0);
    if (static_cast<int>(origin_.size()) != map_.dimension())
      throw std::invalid_argument("engine: origin dimension mismatch");
    const auto& ag = map_.angular_gauge();
    const bool l2 = ag.kind() == geometry::BoundaryKind::LpNorm && ag.p() == 2.0;
    convention_ = l2 ? AngleConvention::EuclideanTheta : AngleConvention::PseudoAngle;
  }

  const copulas::CopulaModel& copula() const { return copula_; }
  const margins::Margin& margin() const { return margin_; }
  const geometry::PolarMap& map() const { return map_; }
  int dimension() const { return map_.dimension(); }
  AngleConvention angle_convention() const { return convention_; }
  void set_quadrature_tol(double t) { quad_tol_ = t; }

  // AR copula function delta_*(r, w) = c(F(o_1 + r w_1), ..., F(o_d + r w_d)).
  // Identically one for the independence copula; zero with a flag outside the
  // joint marginal support.
  DensityResult delta(double r, std::span<const double> w) const {
    std::vector<ProbExt> pe;
    if (!ray_probs(r, w, pe)) return {0.0, -std::numeric_limits<double>::infinity(), true};
    DensityResult out;
    out.log_value = copula_.log_density_ext(pe);
    out.value = std::exp(out.log_value);
    return out;
  }

  // Joint angular-radial density in vector-angle form (L1 angular gauge).
  DensityResult joint_polar_density(double r, std::span<const double> w) const {
    require_l1_angular();
    DensityResult out = log_joint_vector(r, w);
    out.value = std::exp(out.log_value);
    return out;
  }

  // Scalar-angle form for d = 2. The angle is a pseudo-angle in (-2,2] unless
  // the angular gauge is L2, in which case it is the Euclidean angle theta.
  DensityResult joint_polar_density(double r, double angle) const {
    require_2d();
    DensityResult out = log_joint_scalar(r, angle);
    out.value = std::exp(out.log_value);
    return out;
  }

  // radial support interval [r_lo, r_hi) along direction w (vector form)
  std::pair<double, double> radial_support(std::span<const double> w) const {
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    const double ml = margin_.lower(), mu = margin_.upper();
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double o = origin_[j], wj = w[j];
      if (wj > 0.0) {
        lo = std::max(lo, (ml - o) / wj);
        if (std::isfinite(mu)) hi = std::min(hi, (mu - o) / wj);
      } else if (wj < 0.0) {
        if (std::isfinite(ml)) hi = std::min(hi, (ml - o) / wj);
        lo = std::max(lo, std::isinf(mu) ? 0.0 : (mu - o) / wj);
      } else {
        if (o < ml || o > mu) return {0.0, 0.0};  // empty
      }
    }
    return {lo, hi};
  }

  AngularDensity angular_density(std::span<const double> w) const {
    require_l1_angular();
    auto f = [&](double r) { return LogVal{log_joint_vector(r, w).log_value}; };
    return integrate_radial(f, radial_support(w));
  }

  AngularDensity angular_density(double angle) const {
    require_2d();
    const auto w = scalar_direction(angle);
    auto f = [&](double r) { return log_joint_scalar_dir(r, angle, w); };
    return integrate_radial(f, radial_support(w));
  }

  // truncated angular integral up to radius R (diagnostic for divergences)
  double angular_density_truncated(double angle, double R) const {
    require_2d();
    const auto w = scalar_direction(angle);
    auto [lo, hi] = radial_support(w);
    hi = std::min(hi, R);
    if (hi <= lo) return 0.0;
    return num::integrate(
        [&](double r) { return log_joint_scalar_dir(r, angle, w).value_or_zero(); }, lo, hi,
        {0.0, quad_tol_, 4000});
  }

  double conditional_survivor(double r, double angle) const {
    require_2d();
    const auto w = scalar_direction(angle);
    const auto [lo, hi] = radial_support(w);
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    return tail_integral_dir(r, angle, w) / angular_integral_dir(angle, w);
  }

  double conditional_quantile(double zeta, double angle) const {
    require_2d();
    if (!(zeta > 0.0 && zeta < 1.0))
      throw std::domain_error("conditional_quantile: zeta outside (0,1)");
    const auto w = scalar_direction(angle);
    const auto supp = radial_support(w);
    const double lo = supp.first, hi = supp.second;
    const double fw = angular_integral_dir(angle, w);
    auto surv = [&](double r) { return tail_integral_dir(r, angle, w) / fw; };
    // bracket the root of survivor = zeta
    double a = lo, b;
    if (std::isfinite(hi)) {
      b = hi;
    } else {
      b = std::max(lo + 1.0, 2.0 * std::abs(lo) + 1.0);
      while (surv(b) > zeta) {
        b = lo + 2.0 * (b - lo);
        if (b > 1e12) throw std::runtime_error("conditional_quantile: bracket expansion failed");
      }
    }
    return num::find_root([&](double r) { return surv(r) - zeta; }, a, b, 1e-9);
  }

  // conditional radial density f_{R|Q}(r | angle)
  double conditional_density(double r, double angle) const {
    require_2d();
    const auto w = scalar_direction(angle);
    const double fw = angular_integral_dir(angle, w);
    return log_joint_scalar_dir(r, angle, w).value_or_zero() / fw;
  }

  // vector-angle forms (any d with the L1 angular gauge)
  double conditional_survivor(double r, std::span<const double> w) const {
    require_l1_angular();
    auto [lo, hi] = radial_support(w);
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    auto logf = [&](double s) { return LogVal{log_joint_vector(s, w).log_value}; };
    auto full = integrate_radial(logf, {lo, hi});
    if (full.divergent)
      throw std::runtime_error("angular density divergent: conditional quantities undefined");
    auto tail = integrate_radial(logf, {r, hi});
    return tail.value / full.value;
  }

  double conditional_quantile(double zeta, std::span<const double> w) const {
    require_l1_angular();
    if (!(zeta > 0.0 && zeta < 1.0))
      throw std::domain_error("conditional_quantile: zeta outside (0,1)");
    const auto supp = radial_support(w);
    const double lo = supp.first, hi = supp.second;
    auto logf = [&](double s) { return LogVal{log_joint_vector(s, w).log_value}; };
    auto full = integrate_radial(logf, {lo, hi});
    if (full.divergent)
      throw std::runtime_error("angular density divergent: conditional quantities undefined");
    auto surv = [&](double r) { return integrate_radial(logf, {r, hi}).value / full.value; };
    double b;
    if (std::isfinite(hi)) {
      b = hi;
    } else {
      b = std::max(lo + 1.0, 2.0 * std::abs(lo) + 1.0);
      while (surv(b) > zeta) {
        b = lo + 2.0 * (b - lo);
        if (b > 1e12) throw std::runtime_error("conditional_quantile: bracket expansion failed");
      }
    }
    return num::find_root([&](double r) { return surv(r) - zeta; }, lo, b, 1e-9);
  }

 private:
  struct LogVal {
    double lv = -std::numeric_limits<double>::infinity();
    double value_or_zero() const { return std::exp(lv); }
  };

  void require_2d() const {
    if (dimension() != 2) throw std::domain_error("engine: operation requires d = 2");
  }
  void require_l1_angular() const {
    const auto& ag = map_.angular_gauge();
    if (!(ag.kind() == geometry::BoundaryKind::LpNorm && ag.p() == 1.0))
      throw std::domain_error("engine: vector-angle form requires the L1 angular gauge");
  }

  std::vector<double> scalar_direction(double angle) const {
    const double q = (convention_ == AngleConvention::EuclideanTheta)
                         ? angle * 2.0 / num::pi
                         : angle;
    const auto w = map_.angular_gauge().pseudo_trig(q);
    return {w[0], w[1]};
  }

  // marginal cdf triples along the ray; false when outside the support box
  bool ray_probs(double r, std::span<const double> w, std::vector<ProbExt>& pe) const {
    pe.resize(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double x = origin_[j] + r * w[j];
      if (!margin_.in_support(x)) return false;
      pe[j] = margin_.prob_ext(x);
    }
    return true;
  }

  // log f_{R,W}(r, w) for the L1 vector angle and this map's radial gauge
  DensityResult log_joint_vector(double r, std::span<const double> w) const {
    DensityResult out;
    if (r <= 0.0) return out;  // r^{d-1} factor kills r = 0; negative r invalid
    const double gr = map_.radial_gauge().gauge(w);
    const double s = r / gr;  // L1 radius of the evaluation point
    std::vector<double> dir(w.begin(), w.end());
    std::vector<ProbExt> pe;
    if (!ray_probs(s, dir, pe)) {
      out.outside_support = true;
      return out;
    }
    double lm = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) lm += margin_.log_pdf(origin_[j] + s * w[j]);
    const int d = dimension();
    out.log_value = (d - 1) * std::log(r) - d * std::log(gr) + lm + copula_.log_density_ext(pe);
    return out;
  }

  DensityResult log_joint_scalar(double r, double angle) const {
    return log_joint_scalar_dir_full(r, angle, scalar_direction(angle));
  }

  LogVal log_joint_scalar_dir(double r, double angle, const std::vector<double>& w) const {
    return LogVal{log_joint_scalar_dir_full(r, angle, w).log_value};
  }

  DensityResult log_joint_scalar_dir_full(double r, double angle,
                                          const std::vector<double>& w) const {
    DensityResult out;
    if (r <= 0.0) return out;
    const double gr = map_.radial_gauge().gauge(std::span<const double>(w));
    const double s = r / gr;
    std::vector<ProbExt> pe;
    if (!ray_probs(s, w, pe)) {
      out.outside_support = true;
      return out;
    }
    double lm = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) lm += margin_.log_pdf(origin_[j] + s * w[j]);
    out.log_value = std::log(r) - 2.0 * std::log(gr) + std::log(angular_trig_factor(angle)) +
                    lm + copula_.log_density_ext(pe);
    return out;
  }

  // |cos' sin - cos sin'| of the angular gauge at this scalar angle; 1 for the
  // Euclidean-theta convention and for L1 pseudo-angles
  double angular_trig_factor(double angle) const {
    const auto& ag = map_.angular_gauge();
    if (convention_ == AngleConvention::EuclideanTheta) return 1.0;
    if (ag.kind() == geometry::BoundaryKind::LpNorm) {
      if (ag.p() == 1.0) return 1.0;
      return geometry::lp_jacobian(ag.p(), angle);
    }
    // numeric derivative of the pseudo-trig pair
    const double h = 1e-6;
    const auto pm = ag.pseudo_trig(angle - h);
    const auto pp = ag.pseudo_trig(angle + h);
    const auto p0 = ag.pseudo_trig(angle);
    const double dc = (pp[0] - pm[0]) / (2 * h), ds = (pp[1] - pm[1]) / (2 * h);
    return std::abs(p0[0] * ds - dc * p0[1]);
  }

  // --- radial integration with divergence detection ---

  template <class LogF>
  AngularDensity integrate_radial(LogF&& logf, std::pair<double, double> supp) const {
    AngularDensity out;
    auto [lo, hi] = supp;
    if (!(hi > lo)) return out;
    auto f = [&](double r) { return logf(r).value_or_zero(); };

    // inner-endpoint regular-variation probe (lower endpoints away from 0,
    // e.g. Pareto-type support corners)
    double inner = 0.0;
    if (lo > 0.0) {
      const double g0 = std::isfinite(hi) ? (hi - lo) : std::max(1.0, lo);
      const double e = local_exponent(f, lo, g0, +1);
      if (e <= -1.0 + 5e-3) {
        out.divergent = true;
        out.value = num::integrate(f, lo + 1e-3 * g0, std::isfinite(hi) ? hi : lo + 64.0 * g0,
                                  {0.0, quad_tol_, 4000});
        return out;
      }
      inner = num::integrate(f, lo, lo + 0.125 * g0, {0.0, quad_tol_, 4000});
      lo += 0.125 * g0;
    }

    if (std::isfinite(hi)) {
      // finite upper endpoint: probe for a non-integrable edge, then adapt
      const double g0 = hi - lo;
      const double e = local_exponent(f, hi, g0, -1);
      if (e <= -1.0 + 5e-3) {
        out.divergent = true;
        out.value = inner + num::integrate(f, lo, hi - 1e-3 * g0, {0.0, quad_tol_, 4000});
        return out;
      }
      out.value = inner + num::integrate(f, lo, hi, {0.0, quad_tol_, 4000});
      return out;
    }

    num::TailIntegral ti;
    if (margin_.upper_tail_class() == margins::TailClass::Power) {
      ti = num::integrate_power_tail(f, lo, {0.0, quad_tol_, 4000});
    } else {
      ti = num::integrate_exp_tail(f, lo, {0.0, quad_tol_, 4000});
    }
    out.value = inner + ti.value;
    out.divergent = ti.divergent;
    return out;
  }

  // local regular-variation exponent of f at distance h from `edge`
  // (side = +1 probes above the edge, -1 below)
  template <class F>
  static double local_exponent(F&& f, double edge, double scale, int side) {
    const double h1 = 1e-4 * scale, h2 = h1 / 32.0, h3 = h2 / 32.0;
    const double f1 = f(edge + side * h1), f2 = f(edge + side * h2), f3 = f(edge + side * h3);
    if (f2 <= 0.0 || f3 <= 0.0) return 0.0;
    const double e23 = std::log(f3 / f2) / std::log(h3 / h2);
    if (f1 <= 0.0) return e23;
    const double e12 = std::log(f2 / f1) / std::log(h2 / h1);
    return std::min(e12, e23);
  }

  double angular_integral_dir(double angle, const std::vector<double>& w) const {
    auto res = integrate_radial(
        [&](double r) { return log_joint_scalar_dir(r, angle, w); }, radial_support(w));
    if (res.divergent)
      throw std::runtime_error("angular density divergent: conditional quantities undefined");
    return res.value;
  }

  double tail_integral_dir(double r, double angle, const std::vector<double>& w) const {
    auto [lo, hi] = radial_support(w);
    lo = std::max(lo, r);
    if (!(hi > lo)) return 0.0;
    auto res = integrate_radial(
        [&](double s) { return log_joint_scalar_dir(s, angle, w); }, {lo, hi});
    return res.value;
  }

  copulas::CopulaModel copula_;
  margins::Margin margin_;
  geometry::PolarMap map_;
  std::vector<double> origin_;
  AngleConvention convention_;
  double quad_tol_ = 1e-10;
};

}  // namespace spar::ardensity
