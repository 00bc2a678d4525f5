#pragma once

#include <cmath>
#include <stdexcept>

#include "spar/numerics/special.hpp"

namespace spar::copulas {

enum class EvKind { SymmetricLogistic, AsymmetricLogistic, HuslerReiss };

// Stable tail dependence function A and its partials, in closed form, for the
// three dependence models used here. A is homogeneous of order one; the first
// partials are order zero and the mixed partial is order minus one.
class EvDependence {
 public:
  static EvDependence symmetric_logistic(double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("symmetric logistic: alpha >= 1 required");
    return EvDependence(EvKind::SymmetricLogistic, alpha, 1.0, 1.0);
  }
  static EvDependence asymmetric_logistic(double alpha, double g1, double g2) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("asymmetric logistic: alpha >= 1 required");
    if (!(g1 >= 0.0 && g1 <= 1.0 && g2 >= 0.0 && g2 <= 1.0))
      throw std::invalid_argument("asymmetric logistic: gamma_j in [0,1] required");
    return EvDependence(EvKind::AsymmetricLogistic, alpha, g1, g2);
  }
  static EvDependence husler_reiss(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("husler-reiss: alpha > 0 required");
    return EvDependence(EvKind::HuslerReiss, alpha, 1.0, 1.0);
  }

  EvKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double gamma1() const { return g1_; }
  double gamma2() const { return g2_; }

  double A(double x1, double x2) const {
    if (x1 <= 0.0 && x2 <= 0.0) return 0.0;
    if (x1 <= 0.0) return x2;
    if (x2 <= 0.0) return x1;
    switch (kind_) {
      case EvKind::SymmetricLogistic: return lp_sum(x1, x2, alpha_);
      case EvKind::AsymmetricLogistic:
        return (1 - g1_) * x1 + (1 - g2_) * x2 + lp_sum(g1_ * x1, g2_ * x2, alpha_);
      case EvKind::HuslerReiss: {
        const double a = 1.0 / alpha_ + 0.5 * alpha_ * std::log(x1 / x2);
        const double b = 2.0 / alpha_ - a;
        return x1 * num::normal_cdf(a) + x2 * num::normal_cdf(b);
      }
    }
    return 0.0;
  }

  double A1(double x1, double x2) const {
    switch (kind_) {
      case EvKind::SymmetricLogistic: {
        const double z = lp_sum(x1, x2, alpha_);
        return std::pow(x1 / z, alpha_ - 1.0);
      }
      case EvKind::AsymmetricLogistic: {
        const double z = lp_sum(g1_ * x1, g2_ * x2, alpha_);
        if (z == 0.0) return 1 - g1_;
        return 1 - g1_ + g1_ * std::pow(g1_ * x1 / z, alpha_ - 1.0);
      }
      case EvKind::HuslerReiss:
        return num::normal_cdf(1.0 / alpha_ + 0.5 * alpha_ * std::log(x1 / x2));
    }
    return 0.0;
  }

  double A2(double x1, double x2) const { return mirrored().A1(x2, x1); }

  // mixed partial d^2 A / dx1 dx2; always <= 0 by convexity
  double A11(double x1, double x2) const {
    switch (kind_) {
      case EvKind::SymmetricLogistic: {
        const double z = lp_sum(x1, x2, alpha_);
        return (1.0 - alpha_) * std::pow(x1 * x2 / (z * z), alpha_ - 1.0) / z;
      }
      case EvKind::AsymmetricLogistic: {
        const double z = lp_sum(g1_ * x1, g2_ * x2, alpha_);
        if (z == 0.0) return 0.0;
        return (1.0 - alpha_) * g1_ * g2_ *
               std::pow(g1_ * x1 * g2_ * x2 / (z * z), alpha_ - 1.0) / z;
      }
      case EvKind::HuslerReiss: {
        const double a = 1.0 / alpha_ + 0.5 * alpha_ * std::log(x1 / x2);
        return -num::normal_pdf(a) * 0.5 * alpha_ / x2;
      }
    }
    return 0.0;
  }

  // log A11 magnitude, usable when A11 itself underflows (Husler-Reiss tails)
  double log_abs_A11(double x1, double x2) const {
    switch (kind_) {
      case EvKind::SymmetricLogistic: {
        const double z = lp_sum(x1, x2, alpha_);
        return std::log(alpha_ - 1.0) +
               (alpha_ - 1.0) * (std::log(x1) + std::log(x2) - 2.0 * std::log(z)) - std::log(z);
      }
      case EvKind::AsymmetricLogistic: {
        const double z = lp_sum(g1_ * x1, g2_ * x2, alpha_);
        return std::log((alpha_ - 1.0) * g1_ * g2_) +
               (alpha_ - 1.0) * (std::log(g1_ * x1) + std::log(g2_ * x2) - 2.0 * std::log(z)) -
               std::log(z);
      }
      case EvKind::HuslerReiss: {
        const double a = 1.0 / alpha_ + 0.5 * alpha_ * std::log(x1 / x2);
        return num::log_normal_pdf(a) + std::log(0.5 * alpha_) - std::log(x2);
      }
    }
    return 0.0;
  }

 private:
  EvDependence(EvKind k, double a, double g1, double g2) : kind_(k), alpha_(a), g1_(g1), g2_(g2) {}

  EvDependence mirrored() const {
    if (kind_ == EvKind::AsymmetricLogistic)
      return EvDependence(kind_, alpha_, g2_, g1_);
    return *this;
  }

  static double lp_sum(double x1, double x2, double p) {
    if (x1 <= 0.0) return x2;
    if (x2 <= 0.0) return x1;
    const double m = std::max(x1, x2);
    return m * std::pow(std::pow(x1 / m, p) + std::pow(x2 / m, p), 1.0 / p);
  }

  EvKind kind_;
  double alpha_, g1_, g2_;
};

}  // namespace spar::copulas
