#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spar/copulas/ev_dependence.hpp"
#include "spar/numerics/quadrature.hpp"
#include "spar/numerics/rng.hpp"
#include "spar/numerics/roots.hpp"
#include "spar/numerics/special.hpp"
#include "spar/probext.hpp"

namespace spar::copulas {

enum class CopulaFamily {
  Independence,
  Frank,
  Joe,
  Gaussian,
  StudentT,
  Ev,
  Clayton,
  Nelsen4215,
  BivExponential
};

inline const char* family_name(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::Independence: return "independence";
    case CopulaFamily::Frank: return "frank";
    case CopulaFamily::Joe: return "joe";
    case CopulaFamily::Gaussian: return "gaussian";
    case CopulaFamily::StudentT: return "student_t";
    case CopulaFamily::Ev: return "ev";
    case CopulaFamily::Clayton: return "clayton";
    case CopulaFamily::Nelsen4215: return "nelsen_4215";
    case CopulaFamily::BivExponential: return "biv_exponential";
  }
  return "?";
}

namespace detail {
// 2-D iterated adaptive quadrature; abs_tol caps the work spent on regions
// (e.g. support-boundary kinks) whose contribution is already negligible at
// the caller's scale.
template <class F>
double integrate2d(F&& f, double ax, double bx, double ay, double by, double rel_tol,
                   double abs_tol = 0.0) {
  if (ax >= bx || ay >= by) return 0.0;
  num::AdaptiveOptions inner{abs_tol * 0.25 / (by - ay), rel_tol * 0.25, 200};
  num::AdaptiveOptions outer{abs_tol, rel_tol, 400};
  auto g = [&](double y) {
    return num::integrate([&](double x) { return f(x, y); }, ax, bx, inner);
  };
  return num::integrate(g, ay, by, outer);
}

// Integral of a copula density over [0,u0] x [0,v0]. The (0,0) corner may
// carry an integrable singularity (tail order below d); it is handled with
// dyadic corner shells plus a geometric remainder estimate. The central
// blocks straddle the u=v diagonal symmetrically. Absolute budgets track the
// accumulated total so the effort stays proportional to each piece's share.
inline double corner_cdf(const std::function<double(double, double)>& dens, double u0, double v0,
                         double rel_tol = 1e-8) {
  if (u0 <= 0.0 || v0 <= 0.0) return 0.0;
  u0 = std::min(u0, 1.0);
  v0 = std::min(v0, 1.0);
  const double m = std::min(u0, v0);
  double total = 0.0;
  auto budget = [&] { return 0.25 * rel_tol * std::abs(total); };
  if (u0 > m) total += integrate2d(dens, m, u0, 0.0, v0, rel_tol, budget());
  if (v0 > m) total += integrate2d(dens, 0.0, m, m, v0, rel_tol, budget());
  double prev_shell = -1.0;
  double hi = m;
  for (int k = 0; k < 1200; ++k) {
    const double lo = 0.5 * hi;
    double shell = integrate2d(dens, lo, hi, lo, hi, rel_tol, budget());
    shell += integrate2d(dens, lo, hi, 0.0, lo, rel_tol, budget());
    shell += integrate2d(dens, 0.0, lo, lo, hi, rel_tol, budget());
    total += shell;
    if (k > 2 && shell <= rel_tol * std::abs(total)) {
      if (prev_shell > 0.0 && shell > 0.0) {
        const double ratio = shell / prev_shell;
        if (ratio < 0.95) total += shell * ratio / (1.0 - ratio);
      }
      break;
    }
    prev_shell = shell;
    hi = lo;
  }
  return total;
}
}  // namespace detail

// d-dimensional copula model. Immutable; density and cdf are pure; sampling
// takes an explicit generator per call. A corner mask turns the model into
// the reflected view c_{u0}, C_{u0} of the base copula.
class CopulaModel {
 public:
  static CopulaModel independence(int d = 2) {
    CopulaModel c(CopulaFamily::Independence, d);
    return c;
  }
  static CopulaModel frank(double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("frank: alpha must be nonzero");
    CopulaModel c(CopulaFamily::Frank, 2);
    c.alpha_ = alpha;
    return c;
  }
  static CopulaModel joe(double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("joe: alpha >= 1 required");
    CopulaModel c(CopulaFamily::Joe, 2);
    c.alpha_ = alpha;
    return c;
  }
  static CopulaModel gaussian(double rho) {
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("gaussian: rho in (-1,1) required");
    CopulaModel c(CopulaFamily::Gaussian, 2);
    c.rho_ = rho;
    return c;
  }
  static CopulaModel student_t(double rho, double nu) {
    if (!(rho > -1.0 && rho < 1.0))
      throw std::invalid_argument("student_t: rho in (-1,1) required");
    if (!(nu > 0.0)) throw std::invalid_argument("student_t: nu > 0 required");
    CopulaModel c(CopulaFamily::StudentT, 2);
    c.rho_ = rho;
    c.nu_ = nu;
    return c;
  }
  static CopulaModel ev(EvDependence dep) {
    CopulaModel c(CopulaFamily::Ev, 2);
    c.dep_ = dep;
    return c;
  }
  static CopulaModel clayton(double alpha) {
    if (alpha == 0.0 || alpha < -1.0)
      throw std::invalid_argument("clayton: alpha in [-1,inf) \\ {0} required");
    CopulaModel c(CopulaFamily::Clayton, 2);
    c.alpha_ = alpha;
    return c;
  }
  static CopulaModel nelsen_4215(double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("nelsen_4215: alpha >= 1 required");
    CopulaModel c(CopulaFamily::Nelsen4215, 2);
    c.alpha_ = alpha;
    return c;
  }
  static CopulaModel biv_exponential(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("biv_exponential: alpha in [0,1] required");
    CopulaModel c(CopulaFamily::BivExponential, 2);
    c.alpha_ = alpha;
    return c;
  }

  CopulaFamily family() const { return family_; }
  int dimension() const { return dim_; }
  double alpha() const { return alpha_; }
  double rho() const { return rho_; }
  double nu() const { return nu_; }
  const EvDependence& dependence() const { return *dep_; }
  const std::vector<int>& corner() const { return corner_; }

  // Reflected view of this copula with respect to a 0/1 corner. Reflections
  // compose by XOR.
  CopulaModel reflect_corner(std::span<const int> corner) const {
    if (static_cast<int>(corner.size()) != dim_)
      throw std::invalid_argument("reflect_corner: corner dimension mismatch");
    CopulaModel out = *this;
    for (int j = 0; j < dim_; ++j) out.corner_[j] ^= (corner[j] != 0);
    return out;
  }

  double log_density_ext(std::span<const ProbExt> u) const {
    if (static_cast<int>(u.size()) != dim_)
      throw std::invalid_argument("density: dimension mismatch");
    std::vector<ProbExt> w(u.begin(), u.end());
    for (int j = 0; j < dim_; ++j)
      if (corner_[j]) w[j] = flip(w[j]);
    return base_log_density(w);
  }

  double density_ext(std::span<const ProbExt> u) const { return std::exp(log_density_ext(u)); }

  double density(std::span<const double> u) const {
    std::vector<ProbExt> w(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (!(u[j] >= 0.0 && u[j] <= 1.0)) throw std::domain_error("density: u outside [0,1]");
      w[j] = ProbExt::from_u(u[j]);
    }
    return density_ext(w);
  }
  double density(double u, double v) const {
    const std::array<double, 2> a{u, v};
    return density(std::span<const double>(a));
  }

  double cdf(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != dim_) throw std::invalid_argument("cdf: dimension mismatch");
    for (double uj : u)
      if (!(uj >= 0.0 && uj <= 1.0)) throw std::domain_error("cdf: u outside [0,1]");
    if (family_ == CopulaFamily::Independence) {
      // reflections of the independence copula are the independence copula
      double p = 1.0;
      for (int j = 0; j < dim_; ++j) p *= u[j];
      return p;
    }
    // bivariate from here on
    const double a = u[0], b = u[1];
    if (a == 0.0 || b == 0.0) return 0.0;
    if (a == 1.0) return b;
    if (b == 1.0) return a;
    const bool r0 = corner_[0] != 0, r1 = corner_[1] != 0;
    if (family_ == CopulaFamily::Gaussian || family_ == CopulaFamily::StudentT) {
      auto dens = [this](double x, double y) { return density(x, y); };
      return detail::corner_cdf(dens, a, b, quad_tol_);
    }
    if (!r0 && !r1) return base_cdf(a, b);
    if (r0 && r1) {
      if (family_ == CopulaFamily::Ev) {
        // stable u+v-1+C(1-u,1-v) for the EV closed form
        const double x1 = -std::log1p(-a), x2 = -std::log1p(-b);
        return a + b + std::expm1(-dep_->A(x1, x2));
      }
      return a + b - 1.0 + base_cdf(1.0 - a, 1.0 - b);
    }
    if (r0 && !r1) return b - base_cdf(1.0 - a, b);
    return a - base_cdf(a, 1.0 - b);
  }
  double cdf(double u, double v) const {
    const std::array<double, 2> a{u, v};
    return cdf(std::span<const double>(a));
  }

  // i.i.d. draws with uniform margins; deterministic given the seed.
  std::vector<std::vector<double>> sample(std::size_t n, std::uint64_t seed) const {
    std::vector<std::vector<double>> out(n, std::vector<double>(dim_));
    num::Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      draw(rng, out[i]);
      for (int j = 0; j < dim_; ++j)
        if (corner_[j]) out[i][j] = 1.0 - out[i][j];
    }
    return out;
  }

  // conditional distribution P(V <= v | U = u) of the base copula
  double h_function(double u, double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    switch (family_) {
      case CopulaFamily::Independence: return v;
      case CopulaFamily::Frank: {
        const double hu = std::expm1(-alpha_ * u), hv = std::expm1(-alpha_ * v),
                     h1 = std::expm1(-alpha_);
        return std::exp(-alpha_ * u) * hv / (h1 + hu * hv);
      }
      case CopulaFamily::Joe: {
        const double su = 1.0 - u, sv = 1.0 - v;
        const double aa = std::pow(su, alpha_), bb = std::pow(sv, alpha_);
        const double z = aa + bb - aa * bb;
        return std::pow(z, 1.0 / alpha_ - 1.0) * (1.0 - bb) * std::pow(su, alpha_ - 1.0);
      }
      case CopulaFamily::Ev: {
        const double x1 = -std::log(u), x2 = -std::log(v);
        return std::exp(-dep_->A(x1, x2) + x1) * dep_->A1(x1, x2);
      }
      case CopulaFamily::Clayton: {
        const double z = std::expm1(-alpha_ * std::log(u)) + std::expm1(-alpha_ * std::log(v)) + 1.0;
        if (z <= 0.0) return 0.0;
        return std::pow(u, -alpha_ - 1.0) * std::pow(z, -1.0 / alpha_ - 1.0);
      }
      case CopulaFamily::Nelsen4215: {
        const double x = -std::expm1(std::log(u) / alpha_);
        const double y = -std::expm1(std::log(v) / alpha_);
        const double nrm = lp_sum(x, y, alpha_);
        const double z = 1.0 - nrm;
        if (z <= 0.0) return 0.0;
        if (x == 0.0) return 1.0;
        return std::pow(z, alpha_ - 1.0) * std::pow(x / nrm, alpha_ - 1.0) *
               std::pow(u, 1.0 / alpha_ - 1.0);
      }
      case CopulaFamily::BivExponential: {
        const double lu = std::log(u), lv = std::log(v);
        return v * std::exp(-alpha_ * lu * lv) * (1.0 - alpha_ * lv);
      }
      default:
        throw std::logic_error("h_function: not used for this family");
    }
  }

  void set_quadrature_tol(double t) { quad_tol_ = t; }

 private:
  CopulaModel(CopulaFamily f, int d) : family_(f), dim_(d), corner_(d, 0) {
    if (d < 2) throw std::invalid_argument("copula: dimension must be >= 2");
    if (f != CopulaFamily::Independence && d != 2)
      throw std::invalid_argument("copula: only the independence family supports d > 2");
  }

  static ProbExt flip(const ProbExt& p) {
    ProbExt q;
    q.u = 1.0 - p.u;
    q.log_cdf = p.log_sf;
    q.log_sf = p.log_cdf;
    return q;
  }

  static double lp_sum(double x, double y, double p) {
    if (x <= 0.0) return y;
    if (y <= 0.0) return x;
    const double m = std::max(x, y);
    return m * std::pow(std::pow(x / m, p) + std::pow(y / m, p), 1.0 / p);
  }

  static double logsumexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
  }

  double base_log_density(std::span<const ProbExt> u) const {
    switch (family_) {
      case CopulaFamily::Independence:
        return 0.0;
      case CopulaFamily::Frank: {
        const double hu = std::expm1(-alpha_ * u[0].u), hv = std::expm1(-alpha_ * u[1].u),
                     h1 = std::expm1(-alpha_);
        const double hsum = std::expm1(-alpha_ * (u[0].u + u[1].u));
        const double denom = hu * hv + h1;
        return std::log(-alpha_ * h1 * (1.0 + hsum)) - 2.0 * std::log(std::abs(denom));
      }
      case CopulaFamily::Joe: {
        const double lsu = u[0].log_sf, lsv = u[1].log_sf;
        const double aa = std::exp(alpha_ * lsu), bb = std::exp(alpha_ * lsv);
        double z = (aa > 0.5 || bb > 0.5)
                       ? 1.0 - std::expm1(alpha_ * lsu) * std::expm1(alpha_ * lsv)
                       : aa + bb - aa * bb;
        if (z <= 0.0) z = std::numeric_limits<double>::min();
        return (alpha_ - 1.0) * (lsu + lsv) + (1.0 / alpha_ - 2.0) * std::log(z) +
               std::log(z + alpha_ - 1.0);
      }
      case CopulaFamily::Gaussian: {
        const double x = gauss_quantile(u[0]);
        const double y = gauss_quantile(u[1]);
        const double o = 1.0 - rho_ * rho_;
        return -0.5 * std::log(o) -
               (rho_ * rho_ * (x * x + y * y) - 2.0 * rho_ * x * y) / (2.0 * o);
      }
      case CopulaFamily::StudentT: {
        const double x = t_quantile(u[0]);
        const double y = t_quantile(u[1]);
        const double lg = std::lgamma(0.5 * nu_) - std::lgamma(0.5 * (nu_ + 1.0));
        const double o = 1.0 - rho_ * rho_;
        const double quad = (x * x + y * y - 2.0 * rho_ * x * y) / (nu_ * o);
        return 2.0 * lg + std::log(0.5 * nu_) - 0.5 * std::log(o) -
               (0.5 * nu_ + 1.0) * std::log1p(quad) +
               0.5 * (nu_ + 1.0) * (std::log1p(x * x / nu_) + std::log1p(y * y / nu_));
      }
      case CopulaFamily::Ev: {
        const double x1 = -u[0].log_cdf, x2 = -u[1].log_cdf;
        const double lt2 = log_A1(x1, x2) + log_A2(x1, x2);
        const double lt3 = dep_->log_abs_A11(x1, x2);
        return -dep_->A(x1, x2) + x1 + x2 + logsumexp(lt2, lt3);
      }
      case CopulaFamily::Clayton: {
        const double lu = u[0].log_cdf, lv = u[1].log_cdf;
        const double z = std::expm1(-alpha_ * lu) + std::expm1(-alpha_ * lv) + 1.0;
        if (z <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log1p(alpha_) - (alpha_ + 1.0) * (lu + lv) +
               (-1.0 / alpha_ - 2.0) * std::log(z);
      }
      case CopulaFamily::Nelsen4215: {
        const double lu = u[0].log_cdf, lv = u[1].log_cdf;
        const double x = -std::expm1(lu / alpha_), y = -std::expm1(lv / alpha_);
        if (x <= 0.0 || y <= 0.0) return -std::numeric_limits<double>::infinity();
        const double nrm = lp_sum(x, y, alpha_);
        const double z = 1.0 - nrm;
        if (z <= 0.0) return -std::numeric_limits<double>::infinity();
        const double S = std::pow(nrm, alpha_);
        return std::log1p(-1.0 / alpha_) + (1.0 / alpha_ - 1.0) * (lu + lv) +
               (alpha_ - 1.0) * (std::log(x) + std::log(y)) +
               (1.0 / alpha_ - 2.0) * std::log(S) + (alpha_ - 2.0) * std::log(z);
      }
      case CopulaFamily::BivExponential: {
        const double lu = u[0].log_cdf, lv = u[1].log_cdf;
        const double poly = alpha_ * alpha_ * lu * lv - alpha_ * (lu + lv) + 1.0 - alpha_;
        if (poly <= 0.0) return -std::numeric_limits<double>::infinity();
        return -alpha_ * lu * lv + std::log(poly);
      }
    }
    return 0.0;
  }

  double log_A1(double x1, double x2) const {
    const auto& d = *dep_;
    switch (d.kind()) {
      case EvKind::SymmetricLogistic: {
        const double z = lp_sum(x1, x2, d.alpha());
        return (d.alpha() - 1.0) * (std::log(x1) - std::log(z));
      }
      case EvKind::AsymmetricLogistic: {
        if (d.gamma1() == 1.0 && d.gamma2() == 1.0) {
          const double z = lp_sum(x1, x2, d.alpha());
          return (d.alpha() - 1.0) * (std::log(x1) - std::log(z));
        }
        return std::log(d.A1(x1, x2));
      }
      case EvKind::HuslerReiss:
        return num::log_normal_cdf(1.0 / d.alpha() + 0.5 * d.alpha() * std::log(x1 / x2));
    }
    return 0.0;
  }
  double log_A2(double x1, double x2) const {
    const auto& d = *dep_;
    switch (d.kind()) {
      case EvKind::SymmetricLogistic: {
        const double z = lp_sum(x1, x2, d.alpha());
        return (d.alpha() - 1.0) * (std::log(x2) - std::log(z));
      }
      case EvKind::AsymmetricLogistic: {
        if (d.gamma1() == 1.0 && d.gamma2() == 1.0) {
          const double z = lp_sum(x1, x2, d.alpha());
          return (d.alpha() - 1.0) * (std::log(x2) - std::log(z));
        }
        return std::log(d.A2(x1, x2));
      }
      case EvKind::HuslerReiss:
        return num::log_normal_cdf(1.0 / d.alpha() - 0.5 * d.alpha() * std::log(x1 / x2));
    }
    return 0.0;
  }

  double gauss_quantile(const ProbExt& p) const {
    if (p.log_cdf <= p.log_sf) return num::normal_quantile_from_log_p(p.log_cdf);
    return -num::normal_quantile_from_log_p(p.log_sf);
  }
  double t_quantile(const ProbExt& p) const {
    if (p.log_cdf <= p.log_sf) return -num::student_t_quantile_from_log_sf(p.log_cdf, nu_);
    return num::student_t_quantile_from_log_sf(p.log_sf, nu_);
  }

  double base_cdf(double a, double b) const {
    switch (family_) {
      case CopulaFamily::Frank: {
        const double hu = std::expm1(-alpha_ * a), hv = std::expm1(-alpha_ * b),
                     h1 = std::expm1(-alpha_);
        return -std::log1p(hu * hv / h1) / alpha_;
      }
      case CopulaFamily::Joe: {
        // z = a' + b' - a'b' with a' = (1-u)^alpha, so 1 - z = (1-a')(1-b')
        const double oma = -std::expm1(alpha_ * std::log1p(-a));
        const double omb = -std::expm1(alpha_ * std::log1p(-b));
        const double logz = std::log1p(-oma * omb);
        return -std::expm1(logz / alpha_);
      }
      case CopulaFamily::Ev: {
        const double x1 = -std::log(a), x2 = -std::log(b);
        return std::exp(-dep_->A(x1, x2));
      }
      case CopulaFamily::Clayton: {
        const double z =
            std::expm1(-alpha_ * std::log(a)) + std::expm1(-alpha_ * std::log(b)) + 1.0;
        if (z <= 0.0) return 0.0;
        return std::pow(z, -1.0 / alpha_);
      }
      case CopulaFamily::Nelsen4215: {
        const double x = -std::expm1(std::log(a) / alpha_), y = -std::expm1(std::log(b) / alpha_);
        const double z = 1.0 - lp_sum(x, y, alpha_);
        if (z <= 0.0) return 0.0;
        return std::pow(z, alpha_);
      }
      case CopulaFamily::BivExponential: {
        const double lu = std::log(a), lv = std::log(b);
        return std::exp(lu + lv - alpha_ * lu * lv);
      }
      default:
        throw std::logic_error("base_cdf: unsupported family");
    }
  }

  void draw(num::Rng& rng, std::vector<double>& out) const {
    switch (family_) {
      case CopulaFamily::Independence:
        for (int j = 0; j < dim_; ++j) out[j] = rng.uniform();
        return;
      case CopulaFamily::Gaussian: {
        const double z1 = rng.normal(), z2 = rng.normal();
        out[0] = num::normal_cdf(z1);
        out[1] = num::normal_cdf(rho_ * z1 + std::sqrt(1.0 - rho_ * rho_) * z2);
        return;
      }
      case CopulaFamily::StudentT: {
        const double z1 = rng.normal(), z2 = rng.normal();
        const double s = rng.chi_squared(nu_);
        const double f = std::sqrt(nu_ / s);
        out[0] = num::student_t_cdf(z1 * f, nu_);
        out[1] = num::student_t_cdf((rho_ * z1 + std::sqrt(1.0 - rho_ * rho_) * z2) * f, nu_);
        return;
      }
      default: {
        // conditional inversion on the h-function, bisection to 1e-10
        const double u = rng.uniform();
        const double p = rng.uniform();
        out[0] = u;
        out[1] = num::bisect([&](double v) { return h_function(u, v) - p; }, 1e-15, 1.0 - 1e-15,
                             1e-10, 200);
        return;
      }
    }
  }

  CopulaFamily family_;
  int dim_;
  double alpha_ = 0.0;
  double rho_ = 0.0;
  double nu_ = 1.0;
  std::optional<EvDependence> dep_;
  std::vector<int> corner_;
  double quad_tol_ = 1e-8;
};

// Operation-style wrappers mirroring the module surface.
inline double copula_density(const CopulaModel& c, std::span<const double> u) {
  return c.density(u);
}
inline double copula_cdf(const CopulaModel& c, std::span<const double> u) { return c.cdf(u); }
inline CopulaModel reflect_corner(const CopulaModel& c, std::span<const int> corner) {
  return c.reflect_corner(corner);
}

struct TailOrderEstimate {
  double kappa = 0.0;
  bool infinite = false;  // corner excluded from the support
};

// log C_{u0}(t 1_d) / log t at a single small t.
inline TailOrderEstimate tail_order_estimate(const CopulaModel& c, std::span<const int> corner,
                                             double t) {
  if (!(t > 0.0 && t <= 0.01)) throw std::domain_error("tail_order_estimate: t in (0, 0.01]");
  const CopulaModel v = c.reflect_corner(corner);
  std::vector<double> u(c.dimension(), t);
  const double C = v.cdf(std::span<const double>(u));
  TailOrderEstimate out;
  if (C <= 0.0) {
    out.infinite = true;
    out.kappa = std::numeric_limits<double>::infinity();
    return out;
  }
  out.kappa = std::log(C) / std::log(t);
  return out;
}

// finite-t proxy for the tail dependence coefficient chi_{u0}
inline double chi_estimate(const CopulaModel& c, std::span<const int> corner, double t) {
  if (!(t > 0.0 && t <= 0.01)) throw std::domain_error("chi_estimate: t in (0, 0.01]");
  const CopulaModel v = c.reflect_corner(corner);
  std::vector<double> u(c.dimension(), t);
  return v.cdf(std::span<const double>(u)) / t;
}

inline std::vector<std::vector<double>> sample(const CopulaModel& c, std::size_t n,
                                               std::uint64_t seed) {
  return c.sample(n, seed);
}

}  // namespace spar::copulas
