#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spar/geometry/star_boundary.hpp"

namespace spar::geometry {

struct PolarPoint {
  double r = 0.0;
  std::vector<double> w;                                 // vector angle, x / R_ang(x)
  double q = std::numeric_limits<double>::quiet_NaN();   // scalar pseudo-angle, d = 2 only
};

// Angular-radial coordinate map built from two gauge functions.
class PolarMap {
 public:
  PolarMap(StarBoundary radial, StarBoundary angular)
      : radial_(std::move(radial)), angular_(std::move(angular)) {
    if (radial_.dimension() != angular_.dimension())
      throw std::invalid_argument("PolarMap: gauge dimensions differ");
  }

  const StarBoundary& radial_gauge() const { return radial_; }
  const StarBoundary& angular_gauge() const { return angular_; }
  int dimension() const { return radial_.dimension(); }

  PolarPoint to_polar(std::span<const double> x) const {
    PolarPoint p;
    p.r = radial_.gauge(x);
    const double ga = angular_.gauge(x);
    p.w.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) p.w[j] = x[j] / ga;
    if (dimension() == 2) p.q = angular_.pseudo_angle(x[0], x[1]);
    return p;
  }

  std::vector<double> from_polar(double r, std::span<const double> w) const {
    if (!(r > 0.0)) throw std::domain_error("from_polar: r must be positive");
    const double gr = radial_.gauge(w);
    std::vector<double> x(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) x[j] = r * w[j] / gr;
    return x;
  }

  std::vector<double> from_polar(double r, double q) const {
    if (dimension() != 2) throw std::domain_error("from_polar(q): requires d = 2");
    const auto w = angular_.pseudo_trig(q);
    return from_polar(r, std::span<const double>(w));
  }

 private:
  StarBoundary radial_;
  StarBoundary angular_;
};

// Change of radial gauge for a bivariate polar density (scalar angle q taken
// w.r.t. `angular`): maps f_{R_a,Q} into f_{R_b,Q}.
inline double change_radius_density(const std::function<double(double, double)>& f_ra_q,
                                    const StarBoundary& gauge_a, const StarBoundary& gauge_b,
                                    double r_b, double q,
                                    const StarBoundary& angular = StarBoundary::lp(1.0)) {
  const auto w = angular.pseudo_trig(q);
  const double ra = gauge_a.gauge(w[0], w[1]);
  const double rb = gauge_b.gauge(w[0], w[1]);
  const double ratio = ra / rb;
  return ratio * f_ra_q(r_b * ratio, q);
}

struct AngleChange {
  double q = 0.0;        // angle of the same ray in the target system
  double jacobian = 0.0; // d q_target / d q_source
};

// Map a scalar pseudo-angle between two gauge systems. Closed forms cover the
// L1/L2 pair; other pairs compose pseudo_angle with pseudo_trig and use a
// central-difference Jacobian.
inline AngleChange change_angle(double q, const StarBoundary& from, const StarBoundary& to) {
  const bool from_l1 = from.kind() == BoundaryKind::LpNorm && from.p() == 1.0;
  const bool from_l2 = from.kind() == BoundaryKind::LpNorm && from.p() == 2.0;
  const bool to_l1 = to.kind() == BoundaryKind::LpNorm && to.p() == 1.0;
  const bool to_l2 = to.kind() == BoundaryKind::LpNorm && to.p() == 2.0;
  if (from_l2 && to_l1) {
    const double c = std::cos(num::pi * q / 2.0), s = std::sin(num::pi * q / 2.0);
    const double n1 = std::abs(c) + std::abs(s);
    AngleChange out;
    out.q = eps_sign(s) * (1.0 - c / n1);
    out.jacobian = (num::pi / 2.0) / (n1 * n1);
    return out;
  }
  if (from_l1 && to_l2) {
    const double c = 1.0 - std::abs(wrap_angle(q));
    const double s = 1.0 - std::abs(wrap_angle(q - 1.0));
    AngleChange out;
    out.q = (2.0 / num::pi) * std::atan2(s, c);
    out.jacobian = (2.0 / num::pi) / (c * c + s * s);
    return out;
  }
  auto map = [&](double qq) {
    const auto w = from.pseudo_trig(qq);
    return to.pseudo_angle(w[0], w[1]);
  };
  AngleChange out;
  out.q = map(q);
  const double h = 1e-6;
  double hi = map(q + h), lo = map(q - h);
  // unwrap across the branch cut
  if (hi - lo > 2.0) hi -= 4.0;
  if (lo - hi > 2.0) lo -= 4.0;
  out.jacobian = std::abs(hi - lo) / (2.0 * h);
  return out;
}

}  // namespace spar::geometry
