#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include "spar/numerics/special.hpp"
#include "spar/probext.hpp"

namespace spar::margins {

using spar::ProbExt;

enum class MarginFamily { GP, SGP, StandardPareto, Exponential, Normal, StudentT };

enum class TailClass { Exponential, Power, Finite };

enum class MarginEval { Pdf, Cdf, Survivor, Quantile };

// Univariate marginal family. Immutable value type.
class Margin {
 public:
  static Margin gp(double xi, double scale = 1.0) {
    if (!(scale > 0.0)) throw std::invalid_argument("Margin::gp: scale must be positive");
    return Margin(MarginFamily::GP, xi, scale);
  }
  static Margin sgp(double xi) { return Margin(MarginFamily::SGP, xi, 1.0); }
  static Margin laplace() { return sgp(0.0); }
  static Margin standard_pareto() { return Margin(MarginFamily::StandardPareto, 0.0, 1.0); }
  static Margin exponential() { return Margin(MarginFamily::Exponential, 0.0, 1.0); }
  static Margin normal() { return Margin(MarginFamily::Normal, 0.0, 1.0); }
  static Margin student_t(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("Margin::student_t: nu must be positive");
    return Margin(MarginFamily::StudentT, nu, 1.0);
  }

  MarginFamily family() const { return family_; }
  double shape() const { return par_; }  // xi_m for GP/SGP, nu for StudentT
  double scale() const { return scale_; }

  double lower() const {
    switch (family_) {
      case MarginFamily::GP:
      case MarginFamily::Exponential: return 0.0;
      case MarginFamily::SGP: return -upper();
      case MarginFamily::StandardPareto: return 1.0;
      default: return -std::numeric_limits<double>::infinity();
    }
  }
  double upper() const {
    switch (family_) {
      case MarginFamily::GP:
      case MarginFamily::SGP:
        return xi_() < 0.0 ? -scale_ / xi_() : std::numeric_limits<double>::infinity();
      default: return std::numeric_limits<double>::infinity();
    }
  }

  TailClass upper_tail_class() const {
    switch (family_) {
      case MarginFamily::GP:
      case MarginFamily::SGP:
        if (xi_() > 0.0) return TailClass::Power;
        return xi_() < 0.0 ? TailClass::Finite : TailClass::Exponential;
      case MarginFamily::StandardPareto:
      case MarginFamily::StudentT: return TailClass::Power;
      default: return TailClass::Exponential;
    }
  }

  bool in_support(double x) const { return x >= lower() && x <= upper(); }

  double pdf(double x) const {
    check_support(x);
    switch (family_) {
      case MarginFamily::GP: return gp_pdf(x, xi_(), scale_);
      case MarginFamily::SGP: return 0.5 * gp_pdf(std::abs(x), xi_(), 1.0);
      case MarginFamily::StandardPareto: return 1.0 / (x * x);
      case MarginFamily::Exponential: return std::exp(-x);
      case MarginFamily::Normal: return num::normal_pdf(x);
      case MarginFamily::StudentT: return num::student_t_pdf(x, par_);
    }
    return 0.0;
  }

  double log_pdf(double x) const {
    check_support(x);
    switch (family_) {
      case MarginFamily::GP: return log_gp_pdf(x, xi_(), scale_);
      case MarginFamily::SGP: return std::log(0.5) + log_gp_pdf(std::abs(x), xi_(), 1.0);
      case MarginFamily::StandardPareto: return -2.0 * std::log(x);
      case MarginFamily::Exponential: return -x;
      case MarginFamily::Normal: return num::log_normal_pdf(x);
      case MarginFamily::StudentT: return num::log_student_t_pdf(x, par_);
    }
    return 0.0;
  }

  double cdf(double x) const { return prob_ext(x).u; }
  double survivor(double x) const { return std::exp(prob_ext(x).log_sf); }

  ProbExt prob_ext(double x) const {
    check_support(x);
    ProbExt p;
    switch (family_) {
      case MarginFamily::GP: {
        p.log_sf = log_gp_sf(x, xi_(), scale_);
        p.log_cdf = log1m_exp(p.log_sf);
        break;
      }
      case MarginFamily::SGP: {
        if (x >= 0.0) {
          p.log_sf = std::log(0.5) + log_gp_sf(x, xi_(), 1.0);
          p.log_cdf = log1m_exp(p.log_sf);
        } else {
          p.log_cdf = std::log(0.5) + log_gp_sf(-x, xi_(), 1.0);
          p.log_sf = log1m_exp(p.log_cdf);
        }
        break;
      }
      case MarginFamily::StandardPareto:
        p.log_sf = -std::log(x);
        p.log_cdf = std::log1p(-1.0 / x);
        break;
      case MarginFamily::Exponential:
        p.log_sf = -x;
        p.log_cdf = std::log(-std::expm1(-x));
        break;
      case MarginFamily::Normal:
        p.log_cdf = num::log_normal_cdf(x);
        p.log_sf = num::log_normal_cdf(-x);
        break;
      case MarginFamily::StudentT:
        if (x >= 0.0) {
          p.log_sf = num::log_student_t_sf(x, par_);
          p.log_cdf = log1m_exp(p.log_sf);
        } else {
          p.log_cdf = num::log_student_t_sf(-x, par_);
          p.log_sf = log1m_exp(p.log_cdf);
        }
        break;
    }
    p.u = std::exp(p.log_cdf);
    return p;
  }

  double quantile(double prob) const {
    if (!(prob >= 0.0 && prob <= 1.0)) throw std::domain_error("quantile: prob outside [0,1]");
    switch (family_) {
      case MarginFamily::GP: return gp_quantile(prob, xi_(), scale_);
      case MarginFamily::SGP:
        if (prob >= 0.5) return gp_quantile(2.0 * prob - 1.0, xi_(), 1.0);
        return -gp_quantile(1.0 - 2.0 * prob, xi_(), 1.0);
      case MarginFamily::StandardPareto:
        if (prob >= 1.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (1.0 - prob);
      case MarginFamily::Exponential:
        if (prob >= 1.0) return std::numeric_limits<double>::infinity();
        return -std::log1p(-prob);
      case MarginFamily::Normal: return num::normal_quantile(prob);
      case MarginFamily::StudentT: return num::student_t_quantile(prob, par_);
    }
    return 0.0;
  }

  double eval(MarginEval what, double x) const {
    switch (what) {
      case MarginEval::Pdf: return pdf(x);
      case MarginEval::Cdf: return cdf(x);
      case MarginEval::Survivor: return survivor(x);
      case MarginEval::Quantile: return quantile(x);
    }
    return 0.0;
  }

 private:
  Margin(MarginFamily f, double par, double scale) : family_(f), par_(par), scale_(scale) {}

  // xi within 1e-12 of zero is routed to the exponential branch
  double xi_() const { return std::abs(par_) < 1e-12 ? 0.0 : par_; }

  void check_support(double x) const {
    if (!in_support(x)) throw std::domain_error("margin: argument outside support");
  }

  static double log1m_exp(double la) {
    // log(1 - exp(la)) for la <= 0
    if (la > -1e-17) return -std::numeric_limits<double>::infinity();
    if (la > -0.693147) return std::log(-std::expm1(la));
    return std::log1p(-std::exp(la));
  }

  static double gp_pdf(double x, double xi, double s) {
    if (xi == 0.0) return std::exp(-x / s) / s;
    const double t = 1.0 + xi * x / s;
    if (t <= 0.0) return 0.0;
    return std::pow(t, -1.0 / xi - 1.0) / s;
  }
  static double log_gp_pdf(double x, double xi, double s) {
    if (xi == 0.0) return -x / s - std::log(s);
    const double t = 1.0 + xi * x / s;
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    return (-1.0 / xi - 1.0) * std::log(t) - std::log(s);
  }
  static double log_gp_sf(double x, double xi, double s) {
    if (xi == 0.0) return -x / s;
    const double t = xi * x / s;
    if (1.0 + t <= 0.0) return -std::numeric_limits<double>::infinity();
    return -std::log1p(t) / xi;
  }
  static double gp_quantile(double p, double xi, double s) {
    if (p >= 1.0) {
      if (xi < 0.0) return -s / xi;
      return std::numeric_limits<double>::infinity();
    }
    if (xi == 0.0) return -s * std::log1p(-p);
    return s / xi * (std::pow(1.0 - p, -xi) - 1.0);
  }

  MarginFamily family_;
  double par_;
  double scale_;
};

inline double margin_eval(const Margin& m, MarginEval what, double x) { return m.eval(what, x); }

struct ProductResult {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  bool outside_support = false;
};

// Marginal product m_*(r, w) = prod_j f_*(r w_j). Points falling outside the
// joint support yield 0 with a flag rather than an error.
inline ProductResult marginal_product(const Margin& m, double r, std::span<const double> w) {
  ProductResult out;
  if (m.family() == MarginFamily::SGP && m.shape() == 0.0) {
    double s = 0.0;
    for (double wj : w) s += std::abs(wj);
    out.log_value = -static_cast<double>(w.size()) * std::log(2.0) - r * s;
    out.value = std::exp(out.log_value);
    return out;
  }
  double acc = 0.0;
  for (double wj : w) {
    const double x = r * wj;
    if (!m.in_support(x)) {
      out.outside_support = true;
      out.value = 0.0;
      return out;
    }
    acc += m.log_pdf(x);
  }
  out.log_value = acc;
  out.value = std::exp(acc);
  return out;
}

inline const char* family_name(MarginFamily f) {
  switch (f) {
    case MarginFamily::GP: return "gp";
    case MarginFamily::SGP: return "sgp";
    case MarginFamily::StandardPareto: return "pareto";
    case MarginFamily::Exponential: return "exponential";
    case MarginFamily::Normal: return "normal";
    case MarginFamily::StudentT: return "student_t";
  }
  return "?";
}

}  // namespace spar::margins
