#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spar::num {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double sqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double log_sqrt_2pi = 0.918938533204672741780329736405617639;

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x - log_sqrt_2pi); }
inline double log_normal_pdf(double x) { return -0.5 * x * x - log_sqrt_2pi; }

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / sqrt2); }
inline double normal_sf(double x) { return 0.5 * std::erfc(x / sqrt2); }

// log Phi(x), stable into the deep lower tail (Mills-ratio series below the
// range where erfc underflows).
inline double log_normal_cdf(double x) {
  if (x > -36.0) {
    const double p = normal_cdf(x);
    if (p > 1e-308) return std::log(p);
  }
  const double x2 = x * x;
  // Phi(x) = phi(x)/(-x) (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...)
  const double s = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2) +
                   105.0 / (x2 * x2 * x2 * x2);
  return log_normal_pdf(x) - std::log(-x) + std::log(s);
}

namespace detail {
// Acklam's rational approximation to the standard normal quantile.
inline double normal_quantile_seed(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    const double q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}
}  // namespace detail

// Normal quantile, rational seed plus Halley polish (keeps interior accuracy
// near 1e-15; tails handled through the log-probability entry point below).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p outside (0,1)");
  double x = detail::normal_quantile_seed(p);
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double f = normal_pdf(x);
    if (f <= 0) break;
    const double u = e / f;
    x -= u / (1 + 0.5 * x * u);
  }
  return x;
}

// x with log Phi(x) = lp, valid for arbitrarily deep lower tails (lp can be
// far below log(DBL_MIN)); required on the marginal-scale rays where tail
// probabilities decay like exp(-r).
inline double normal_quantile_from_log_p(double lp) {
  if (lp >= 0.0) throw std::domain_error("normal_quantile_from_log_p: lp >= 0");
  if (lp > std::log(1e-250)) return normal_quantile(std::exp(lp));
  const double L = -lp;
  double x = -std::sqrt(2 * L - std::log(4 * pi * L));
  for (int i = 0; i < 6; ++i) {
    const double g = log_normal_cdf(x) - lp;
    const double dg = std::exp(log_normal_pdf(x) - log_normal_cdf(x));  // hazard
    const double step = g / dg;
    x -= step;
    if (std::abs(step) < 1e-13 * std::abs(x)) break;
  }
  return x;
}

// Regularized incomplete beta I_x(a,b) via the standard continued fraction.
namespace detail {
inline double betacf(double a, double b, double x) {
  const double eps = 3e-16, fpmin = 1e-300;
  const double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}
}  // namespace detail

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// log I_x(a,b); keeps accuracy when the result underflows a double.
inline double log_ibeta(double a, double b, double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x >= 1.0) return 0.0;
  const double lfront = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1) / (a + b + 2)) return lfront + std::log(detail::betacf(a, b, x) / a);
  const double other = lfront + std::log(detail::betacf(b, a, 1 - x) / b);
  return std::log1p(-std::exp(other));
}

inline double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::exp(log_ibeta(a, b, x));
}

// --- Student t distribution on nu > 0 degrees of freedom ---

inline double log_student_t_pdf(double x, double nu) {
  return std::lgamma(0.5 * (nu + 1)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * pi) -
         0.5 * (nu + 1) * std::log1p(x * x / nu);
}
inline double student_t_pdf(double x, double nu) { return std::exp(log_student_t_pdf(x, nu)); }

// log of the upper tail P(T > x) for x >= 0. Beyond x = 1e8 the power-law
// form log C - nu log x is exact to double precision (corrections are
// O(nu^2/x^2)) and avoids overflowing x^2.
inline double log_student_t_sf(double x, double nu) {
  if (x < 0) throw std::domain_error("log_student_t_sf: needs x >= 0");
  if (x == 0) return std::log(0.5);
  if (x > 1e8) {
    const double lg = std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1));
    return (0.5 * nu - 1.0) * std::log(nu) - lg - 0.5 * std::log(pi) - nu * std::log(x);
  }
  const double z = nu / (nu + x * x);
  return std::log(0.5) + log_ibeta(0.5 * nu, 0.5, z);
}

inline double student_t_cdf(double x, double nu) {
  if (x >= 0) return 1.0 - std::exp(log_student_t_sf(x, nu));
  return std::exp(log_student_t_sf(-x, nu));
}

// Quantile of the t distribution given the log upper-tail probability of the
// magnitude; returns the positive solution of log P(T > x) = lsf.
inline double student_t_quantile_from_log_sf(double lsf, double nu) {
  if (lsf >= std::log(0.5)) {
    if (lsf > -1e-300) throw std::domain_error("student_t_quantile_from_log_sf: lsf >= log(1/2)");
  }
  // asymptotic seed: sf(x) ~ (nu^{(nu-1)/2} / (g sqrt(pi))) x^{-nu}, g = G(nu/2)/G((nu+1)/2)
  const double lg = std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1));
  double lx = 0.5 * std::log(nu) - (lsf + lg + std::log(nu) + 0.5 * std::log(pi)) / nu;
  if (lx > std::log(1e8)) {
    // power-law regime: the seed is already the closed-form inverse
    return std::exp(lx);
  }
  double x = std::exp(std::min(lx, 690.0));
  if (lsf > std::log(0.05)) x = std::max(x, 0.1);  // moderate tail: rely on Newton from a safe start
  for (int i = 0; i < 60; ++i) {
    const double g = log_student_t_sf(x, nu) - lsf;
    const double dg = -std::exp(log_student_t_pdf(x, nu) - log_student_t_sf(x, nu));
    double step = g / dg;
    // keep the iterate positive; damp wild steps
    if (x - step <= 0) step = 0.5 * x * (step > 0 ? 1 : -1);
    x -= step;
    if (std::abs(step) < 1e-14 * std::abs(x) + 1e-300) break;
  }
  return x;
}

inline double student_t_quantile(double p, double nu) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("student_t_quantile: p outside (0,1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile_from_log_sf(std::log(p), nu);
  return student_t_quantile_from_log_sf(std::log1p(-p), nu);
}

// Upper incomplete gamma Gamma(d, x) for integer shape d >= 1.
inline double upper_incomplete_gamma_int(int d, double x) {
  if (d < 1) throw std::domain_error("upper_incomplete_gamma_int: shape must be >= 1");
  double fact = 1.0, sum = 1.0, term = 1.0;
  for (int k = 1; k < d; ++k) {
    term *= x / k;
    sum += term;
    fact *= k;
  }
  return fact * std::exp(-x) * sum;
}

inline double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace spar::num
