#pragma once

#include <cmath>
#include <stdexcept>

#include "spar/numerics/special.hpp"

namespace spar::ardensity {

enum class EllipticalGenerator { Normal, StudentT };
enum class RadiusGauge { Elliptic, L2 };

// Bivariate elliptical distribution with zero median, unit variance and
// Pearson correlation rho: f(x,y) = f0(||(x,y)||_e^2). Under the elliptical
// radial gauge the polar density factorises into independent components.
class EllipticalModel {
 public:
  static EllipticalModel normal(double rho) { return EllipticalModel(EllipticalGenerator::Normal, rho, 0.0); }
  static EllipticalModel student_t(double rho, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("EllipticalModel: nu > 0 required");
    return EllipticalModel(EllipticalGenerator::StudentT, rho, nu);
  }

  EllipticalGenerator generator() const { return gen_; }
  double rho() const { return rho_; }
  double nu() const { return nu_; }

  double gamma() const { return 1.0 / (2.0 * num::pi * std::sqrt(1.0 - rho_ * rho_)); }

  double f0(double z) const {
    switch (gen_) {
      case EllipticalGenerator::Normal: return gamma() * std::exp(-0.5 * z);
      case EllipticalGenerator::StudentT:
        return gamma() * std::pow(1.0 + z / nu_, -1.0 - 0.5 * nu_);
    }
    return 0.0;
  }

  // antiderivative of f0 (vanishing at infinity)
  double F0(double z) const {
    switch (gen_) {
      case EllipticalGenerator::Normal: return -2.0 * gamma() * std::exp(-0.5 * z);
      case EllipticalGenerator::StudentT:
        return -2.0 * gamma() * std::pow(1.0 + z / nu_, -0.5 * nu_);
    }
    return 0.0;
  }

  double alpha(double theta) const {
    return std::sqrt((1.0 - rho_ * rho_) / (1.0 - rho_ * std::sin(2.0 * theta)));
  }

  // angular density in Euclidean angle; identical for all generators
  double angular_density(double theta) const {
    return std::sqrt(1.0 - rho_ * rho_) / (2.0 * num::pi * (1.0 - rho_ * std::sin(2.0 * theta)));
  }

  // conditional radial survivor under the elliptical radial gauge
  double conditional_survivor(double r) const {
    switch (gen_) {
      case EllipticalGenerator::Normal: return std::exp(-0.5 * r * r);
      case EllipticalGenerator::StudentT: return std::pow(1.0 + r * r / nu_, -0.5 * nu_);
    }
    return 0.0;
  }

  double conditional_quantile(double zeta) const {
    if (!(zeta > 0.0 && zeta < 1.0))
      throw std::domain_error("EllipticalModel: zeta outside (0,1)");
    switch (gen_) {
      case EllipticalGenerator::Normal: return std::sqrt(-2.0 * std::log(zeta));
      case EllipticalGenerator::StudentT:
        return std::sqrt(nu_ * (std::pow(zeta, -2.0 / nu_) - 1.0));
    }
    return 0.0;
  }

  double joint_density(double x, double y) const {
    const double z = (x * x + y * y - 2.0 * rho_ * x * y) / (1.0 - rho_ * rho_);
    return f0(z);
  }

  // joint angular-radial density, elliptic or L2 radial gauge, Euclidean angle
  double polar_density(RadiusGauge gauge, double r, double theta) const {
    if (!(r > 0.0)) throw std::domain_error("polar_density: r > 0 required");
    const double a = alpha(theta);
    switch (gauge) {
      case RadiusGauge::Elliptic: return a * a * r * f0(r * r);
      case RadiusGauge::L2: return r * f0((r / a) * (r / a));
    }
    return 0.0;
  }

 private:
  EllipticalModel(EllipticalGenerator g, double rho, double nu) : gen_(g), rho_(rho), nu_(nu) {
    if (!(rho > -1.0 && rho < 1.0))
      throw std::invalid_argument("EllipticalModel: rho in (-1,1) required");
  }

  EllipticalGenerator gen_;
  double rho_;
  double nu_;
};

inline double elliptical_polar_density(const EllipticalModel& m, RadiusGauge gauge, double r,
                                       double theta) {
  return m.polar_density(gauge, r, theta);
}

}  // namespace spar::ardensity
