#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "spar/numerics/quadrature.hpp"
#include "spar/numerics/roots.hpp"
#include "spar/numerics/special.hpp"

namespace spar::geometry {

enum class BoundaryKind { LpNorm, Elliptical, Tabulated };

// generalised sign: +1 for v >= 0, -1 otherwise
inline double eps_sign(double v) { return v >= 0.0 ? 1.0 : -1.0; }

inline double wrap_angle(double q) {
  // reduce modulo 4 to the (-2, 2] branch
  q = std::fmod(q, 4.0);
  if (q <= -2.0) q += 4.0;
  if (q > 2.0) q -= 4.0;
  return q;
}

// Boundary of a compact star-shaped set containing the origin. Immutable
// after construction; all evaluation is const and thread-safe.
class StarBoundary {
 public:
  static StarBoundary lp(double p, int dim = 2) {
    if (!(p > 0.0)) throw std::invalid_argument("StarBoundary::lp: p must be positive");
    if (dim < 2) throw std::invalid_argument("StarBoundary::lp: dimension must be >= 2");
    StarBoundary b;
    b.kind_ = BoundaryKind::LpNorm;
    b.p_ = p;
    b.dim_ = dim;
    return b;
  }
  static StarBoundary lp_inf(int dim = 2) {
    StarBoundary b;
    b.kind_ = BoundaryKind::LpNorm;
    b.p_ = std::numeric_limits<double>::infinity();
    b.dim_ = dim;
    return b;
  }
  static StarBoundary elliptical(double rho) {
    if (!(rho > -1.0 && rho < 1.0))
      throw std::invalid_argument("StarBoundary::elliptical: rho must lie in (-1,1)");
    StarBoundary b;
    b.kind_ = BoundaryKind::Elliptical;
    b.rho_ = rho;
    b.dim_ = 2;
    return b;
  }
  // Vertices ordered anticlockwise (increasing pseudo-angle). The polygon is
  // closed implicitly. Star-shapedness w.r.t. the origin is checked here.
  static StarBoundary tabulated(std::vector<std::array<double, 2>> pts) {
    if (pts.size() < 3) throw std::invalid_argument("StarBoundary::tabulated: need >= 3 points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % pts.size()];
      if (a[0] == 0.0 && a[1] == 0.0)
        throw std::invalid_argument("StarBoundary::tabulated: vertex at origin");
      const double cross = a[0] * b[1] - a[1] * b[0];
      if (cross <= 0.0)
        throw std::invalid_argument(
            "StarBoundary::tabulated: vertices must advance anticlockwise (star-shaped)");
    }
    StarBoundary b;
    b.kind_ = BoundaryKind::Tabulated;
    b.pts_ = std::move(pts);
    b.dim_ = 2;
    return b;
  }

  BoundaryKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  double p() const { return p_; }
  double rho() const { return rho_; }

  // Minkowski functional of the boundary.
  double gauge(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("gauge: dimension mismatch");
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    if (norm2 == 0.0) throw std::domain_error("gauge: undefined at the zero vector");
    switch (kind_) {
      case BoundaryKind::LpNorm: {
        if (std::isinf(p_)) {
          double m = 0.0;
          for (double v : x) m = std::max(m, std::abs(v));
          return m;
        }
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (double v : x) s += std::pow(std::abs(v) / m, p_);
        return m * std::pow(s, 1.0 / p_);
      }
      case BoundaryKind::Elliptical: {
        const double u = x[0], v = x[1];
        return std::sqrt((u * u + v * v - 2.0 * rho_ * u * v) / (1.0 - rho_ * rho_));
      }
      case BoundaryKind::Tabulated: {
        const double len = std::sqrt(norm2);
        const double dx = x[0] / len, dy = x[1] / len;
        // distance from origin to the boundary along direction (dx,dy)
        const double t = ray_hit(dx, dy);
        return len / t;
      }
    }
    return 0.0;
  }
  double gauge(double x, double y) const {
    const std::array<double, 2> v{x, y};
    return gauge(std::span<const double>(v));
  }

  // Total boundary length (d = 2), computed on first use.
  double circumference() const {
    require_2d("circumference");
    std::call_once(circ_->flag, [this] { circ_->value = compute_circumference(); });
    return circ_->value;
  }

  // Arc length from the positive-x boundary point, anticlockwise, in [0, C).
  double cumulative_arc(double u, double v) const {
    require_2d("cumulative_arc");
    check_on_boundary(u, v);
    const double C = circumference();
    switch (kind_) {
      case BoundaryKind::LpNorm: {
        const double au = std::abs(u), av = std::abs(v);
        const double s1 = (av <= au) ? lp_octant_arc(av) : C / 4.0 - lp_octant_arc(au);
        double s;
        if (u >= 0 && v >= 0) s = s1;
        else if (u < 0 && v >= 0) s = C / 2.0 - s1;
        else if (u < 0 && v < 0) s = C / 2.0 + s1;
        else s = C - s1;
        return (s >= C) ? 0.0 : s;
      }
      case BoundaryKind::Elliptical: {
        double th = std::atan2(v, u);
        if (th < 0) th += 2.0 * num::pi;
        return num::integrate([this](double t) { return elliptic_speed(t); }, 0.0, th,
                              {1e-13, 1e-13, 4000});
      }
      case BoundaryKind::Tabulated: {
        // locate the segment containing the point, accumulate from the
        // positive-x crossing
        const double base = tab_positive_x_offset();
        const double s = tab_arc_from_vertex0(u, v);
        double out = s - base;
        const double C2 = circumference();
        if (out < 0) out += C2;
        return out;
      }
    }
    return 0.0;
  }

  // Anticlockwise boundary distance between two boundary points.
  double arc_length(std::array<double, 2> from, std::array<double, 2> to) const {
    const double sa = cumulative_arc(from[0], from[1]);
    const double sb = cumulative_arc(to[0], to[1]);
    double d = sb - sa;
    if (d < 0) d += circumference();
    return d;
  }

  // Scalar pseudo-angle of x, branch (-2, 2].
  double pseudo_angle(double x, double y) const {
    require_2d("pseudo_angle");
    if (x == 0.0 && y == 0.0) throw std::domain_error("pseudo_angle: zero vector");
    if (kind_ == BoundaryKind::LpNorm && p_ == 1.0) {
      const double n = std::abs(x) + std::abs(y);
      return eps_sign(y) * (1.0 - x / n);
    }
    if (kind_ == BoundaryKind::LpNorm && p_ == 2.0) {
      return (2.0 / num::pi) * std::atan2(y, x);
    }
    const double g = gauge(x, y);
    double q = 4.0 * cumulative_arc(x / g, y / g) / circumference();
    return wrap_angle(q);
  }

  // Boundary point at pseudo-angle q (any real; periodic with period 4).
  std::array<double, 2> pseudo_trig(double q) const {
    require_2d("pseudo_trig");
    q = wrap_angle(q);
    if (kind_ == BoundaryKind::LpNorm && p_ == 1.0) {
      const double c = 1.0 - std::abs(q);
      const double s = 1.0 - std::abs(wrap_angle(q - 1.0));
      return {c, s};
    }
    if (kind_ == BoundaryKind::LpNorm && p_ == 2.0) {
      return {std::cos(num::pi * q / 2.0), std::sin(num::pi * q / 2.0)};
    }
    double qq = q < 0 ? q + 4.0 : q;  // [0,4)
    const int quadrant = std::min(3, static_cast<int>(std::floor(qq)));
    const double qin = qq - quadrant;
    std::array<double, 2> pt{};
    switch (kind_) {
      case BoundaryKind::LpNorm: {
        const double C = circumference();
        const double s1 = (quadrant % 2 == 0) ? qin * C / 4.0 : (1.0 - qin) * C / 4.0;
        // mirror quadrants 1 and 3 so s1 is always a first-quadrant arc
        const double A8 = C / 8.0;
        double au, av;
        if (std::isinf(p_)) {
          if (s1 <= A8) { au = 1.0; av = s1; }
          else { av = 1.0; au = C / 4.0 - s1; }
        } else if (s1 <= A8) {
          av = lp_octant_arc_inverse(s1);
          au = std::pow(1.0 - std::pow(av, p_), 1.0 / p_);
        } else {
          au = lp_octant_arc_inverse(C / 4.0 - s1);
          av = std::pow(1.0 - std::pow(au, p_), 1.0 / p_);
        }
        switch (quadrant) {
          case 0: pt = {au, av}; break;
          case 1: pt = {-au, av}; break;
          case 2: pt = {-au, -av}; break;
          default: pt = {au, -av}; break;
        }
        break;
      }
      case BoundaryKind::Elliptical: {
        const double target = qq * circumference() / 4.0;
        auto arc = [this](double th) {
          return num::integrate([this](double t) { return elliptic_speed(t); }, 0.0, th,
                                {1e-13, 1e-13, 4000});
        };
        const double th = num::find_root([&](double t) { return arc(t) - target; }, 0.0,
                                         2.0 * num::pi, 1e-13);
        const double a = 1.0 / gauge(std::cos(th), std::sin(th));
        pt = {a * std::cos(th), a * std::sin(th)};
        break;
      }
      case BoundaryKind::Tabulated: {
        double target = qq * circumference() / 4.0 + tab_positive_x_offset();
        if (target >= circumference()) target -= circumference();
        pt = tab_point_at_arc(target);
        break;
      }
    }
    return pt;
  }

 private:
  struct CircCache {
    std::once_flag flag;
    double value = 0.0;
  };

  StarBoundary() : circ_(std::make_shared<CircCache>()) {}

  void require_2d(const char* op) const {
    if (dim_ != 2) throw std::domain_error(std::string(op) + ": requires d = 2");
  }

  void check_on_boundary(double u, double v) const {
    const double g = gauge(u, v);
    if (std::abs(g - 1.0) > 1e-8)
      throw std::domain_error("arc length: point is not on the unit boundary");
  }

  double compute_circumference() const {
    switch (kind_) {
      case BoundaryKind::LpNorm:
        if (p_ == 1.0) return 4.0 * num::sqrt2;
        if (p_ == 2.0) return 2.0 * num::pi;
        if (std::isinf(p_)) return 8.0;
        return 8.0 * lp_octant_arc(std::pow(0.5, 1.0 / p_));
      case BoundaryKind::Elliptical:
        return num::integrate([this](double t) { return elliptic_speed(t); }, 0.0,
                              2.0 * num::pi, {1e-13, 1e-13, 4000});
      case BoundaryKind::Tabulated: {
        double s = 0.0;
        for (std::size_t i = 0; i < pts_.size(); ++i) {
          const auto& a = pts_[i];
          const auto& b = pts_[(i + 1) % pts_.size()];
          s += std::hypot(b[0] - a[0], b[1] - a[1]);
        }
        return s;
      }
    }
    return 0.0;
  }

  // Arc length along the L^p circle from (1,0) to the point with |y| = t in
  // the first octant, t in [0, 2^{-1/p}]. The parametrisation switches from v
  // to u where |dv/du| would exceed 1, keeping the integrand bounded.
  double lp_octant_arc(double t) const {
    const double tmax = std::pow(0.5, 1.0 / p_);
    if (t <= 0) return 0.0;
    if (std::isinf(p_)) return t;  // the L^inf octant is the vertical segment x=1
    t = std::min(t, tmax);
    if (p_ >= 1.0) {
      auto f = [this](double v) {
        const double u = std::pow(1.0 - std::pow(v, p_), 1.0 / p_);
        const double w = (u > 0) ? std::pow(v / u, p_ - 1.0) : 0.0;
        return std::sqrt(1.0 + w * w);
      };
      return num::integrate(f, 0.0, t, {1e-14, 1e-13, 4000});
    }
    // p < 1: integrate in u from u(t) to 1
    const double ut = std::pow(1.0 - std::pow(t, p_), 1.0 / p_);
    auto f = [this](double u) {
      const double v = std::pow(1.0 - std::pow(u, p_), 1.0 / p_);
      const double w = std::pow(v / u, 1.0 - p_);
      return std::sqrt(1.0 + w * w);
    };
    return num::integrate(f, ut, 1.0, {1e-14, 1e-13, 4000});
  }

  double lp_octant_arc_inverse(double s) const {
    const double tmax = std::pow(0.5, 1.0 / p_);
    if (std::isinf(p_)) return std::min(s, tmax);
    if (s <= 0) return 0.0;
    const double A8 = circumference() / 8.0;
    if (s >= A8) return tmax;
    return num::find_root([&](double t) { return lp_octant_arc(t) - s; }, 0.0, tmax, 1e-14);
  }

  // |dP/dtheta| for the elliptical boundary parametrised by Euclidean angle.
  double elliptic_speed(double th) const {
    const double denom = 1.0 - rho_ * std::sin(2.0 * th);
    const double alpha = std::sqrt((1.0 - rho_ * rho_) / denom);
    const double dalpha = alpha * rho_ * std::cos(2.0 * th) / denom;
    return std::sqrt(alpha * alpha + dalpha * dalpha);
  }

  // distance from origin to the polygon along unit direction (dx,dy)
  double ray_hit(double dx, double dy) const {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const auto& a = pts_[i];
      const auto& b = pts_[(i + 1) % pts_.size()];
      const double ex = b[0] - a[0], ey = b[1] - a[1];
      const double det = dx * (-ey) - dy * (-ex);
      if (det == 0.0) continue;
      const double t = (a[0] * (-ey) - a[1] * (-ex)) / det;
      const double s = (dx * a[1] - dy * a[0]) / det;
      if (t > 0.0 && s >= -1e-14 && s <= 1.0 + 1e-14) return t;
    }
    throw std::domain_error("tabulated gauge: ray does not meet the boundary");
  }

  double tab_positive_x_offset() const {
    std::call_once(tabx_->flag, [this] {
      const double t = ray_hit(1.0, 0.0);
      tabx_->value = tab_arc_from_vertex0(t, 0.0);
    });
    return tabx_->value;
  }

  double tab_arc_from_vertex0(double u, double v) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const auto& a = pts_[i];
      const auto& b = pts_[(i + 1) % pts_.size()];
      const double ex = b[0] - a[0], ey = b[1] - a[1];
      const double len = std::hypot(ex, ey);
      // does (u,v) lie on this segment?
      const double cross = (u - a[0]) * ey - (v - a[1]) * ex;
      const double dot = (u - a[0]) * ex + (v - a[1]) * ey;
      if (std::abs(cross) <= 1e-9 * std::max(1.0, len) && dot >= -1e-12 &&
          dot <= len * len + 1e-12) {
        return acc + std::sqrt(std::max(0.0, (u - a[0]) * (u - a[0]) + (v - a[1]) * (v - a[1])));
      }
      acc += len;
    }
    throw std::domain_error("tabulated arc: point is not on the boundary");
  }

  std::array<double, 2> tab_point_at_arc(double s) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const auto& a = pts_[i];
      const auto& b = pts_[(i + 1) % pts_.size()];
      const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
      if (s <= acc + len || i + 1 == pts_.size()) {
        const double t = std::clamp((s - acc) / len, 0.0, 1.0);
        return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
      }
      acc += len;
    }
    return pts_.front();
  }

  BoundaryKind kind_ = BoundaryKind::LpNorm;
  double p_ = 1.0;
  double rho_ = 0.0;
  int dim_ = 2;
  std::vector<std::array<double, 2>> pts_;
  std::shared_ptr<CircCache> circ_;
  std::shared_ptr<CircCache> tabx_ = std::make_shared<CircCache>();
};

// Free-function forms used throughout the library.
inline double gauge(const StarBoundary& b, std::span<const double> x) { return b.gauge(x); }

inline double pseudo_angle(const StarBoundary& b, double x, double y) {
  return b.pseudo_angle(x, y);
}

inline std::array<double, 2> pseudo_trig(const StarBoundary& b, double q) {
  return b.pseudo_trig(q);
}

// |cos_p sin_p' - cos_p' sin_p| for the L^p pseudo-trigonometric functions.
// The p = 1, 2, inf values are exact constants, not limits.
inline double lp_jacobian(double p, double q) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_jacobian: p must be positive");
  if (p == 1.0) return 1.0;
  if (p == 2.0) return num::pi / 2.0;
  if (std::isinf(p)) return 2.0;
  const auto b = StarBoundary::lp(p);
  const auto [c, s] = b.pseudo_trig(q);
  const double e = 2.0 * (p - 1.0);
  const double denom = std::sqrt(std::pow(std::abs(c), e) + std::pow(std::abs(s), e));
  return b.circumference() / 4.0 / denom;
}

}  // namespace spar::geometry
