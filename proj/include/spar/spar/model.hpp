#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spar/ardensity/engine.hpp"
#include "spar/numerics/parallel.hpp"
#include "spar/numerics/special.hpp"
#include "spar/spar/catalog.hpp"

namespace spar::model {

enum class SparVariant { GPTail, GammaTailLaplace, ParetoTail };
enum class Provenance { Catalog, NumericFit };

inline const char* variant_name(SparVariant v) {
  switch (v) {
    case SparVariant::GPTail: return "gp_tail";
    case SparVariant::GammaTailLaplace: return "gamma_tail_laplace";
    case SparVariant::ParetoTail: return "pareto_tail";
  }
  return "?";
}

struct AngleRecord {
  double q = 0.0;                  // scalar angle (d = 2 grids)
  std::vector<double> w;           // direction on the L1 circle
  double mu = 0.0;
  double zeta = 0.0;
  double xi = 0.0;
  double sigma = 0.0;
  double f_w = 0.0;
  LambdaProfile profile = LambdaProfile::Standard;
  bool valid = true;               // false when the angular density diverges
  bool degenerate = false;         // zero limit-set radius at this angle
};

struct LimitSetBoundary {
  std::vector<std::vector<double>> points;  // w * sigma(w) per grid angle
  std::vector<bool> degenerate;
};

class SparModel {
 public:
  margins::MarginFamily margin_family;
  double margin_shape = 0.0;
  int dimension = 2;
  SparVariant variant = SparVariant::GammaTailLaplace;
  Provenance provenance = Provenance::Catalog;
  std::vector<AngleRecord> records;

  const AngleRecord& at_angle(double q) const {
    if (records.empty()) throw std::logic_error("SparModel: empty grid");
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      double d = std::abs(geometry::wrap_angle(records[i].q - q));
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    return records[arg];
  }

  // f_{R,W}(r, angle) under the fitted tail model; defined for r >= mu(angle)
  double density(double r, double q) const {
    const AngleRecord& rec = at_angle(q);
    return density_at(rec, r);
  }

  double density_at(const AngleRecord& rec, double r) const {
    if (!rec.valid) throw std::domain_error("spar_density: angle flagged invalid");
    if (r < rec.mu) throw std::domain_error("spar_density: below threshold - SPAR undefined");
    switch (variant) {
      case SparVariant::GammaTailLaplace: {
        const double A = std::pow(rec.sigma, dimension) *
                         num::upper_incomplete_gamma_int(dimension, rec.mu / rec.sigma);
        return rec.zeta * rec.f_w / A * std::pow(r, dimension - 1) * std::exp(-r / rec.sigma);
      }
      case SparVariant::GPTail:
      case SparVariant::ParetoTail:
        return rec.zeta * rec.f_w * gp_pdf(r - rec.mu, rec.xi, rec.sigma);
    }
    return 0.0;
  }

  static double gp_pdf(double x, double xi, double sigma) {
    if (xi == 0.0) return std::exp(-x / sigma) / sigma;
    const double t = 1.0 + xi * x / sigma;
    if (t <= 0.0) return 0.0;
    return std::pow(t, -1.0 / xi - 1.0) / sigma;
  }

  LimitSetBoundary limit_set() const {
    if (!(margin_family == margins::MarginFamily::SGP && margin_shape == 0.0))
      throw std::domain_error("limit_set: requires a Laplace-margin SPAR model");
    for (const auto& rec : records)
      if (rec.valid && rec.profile == LambdaProfile::Standard && rec.xi != 0.0)
        throw std::domain_error("limit_set: requires xi(w) = 0");
    LimitSetBoundary out;
    out.points.reserve(records.size());
    out.degenerate.reserve(records.size());
    for (const auto& rec : records) {
      const bool degen = rec.degenerate || rec.profile == LambdaProfile::GaussianType ||
                         rec.profile == LambdaProfile::MuDependent;
      std::vector<double> pt(rec.w.size(), 0.0);
      if (!degen) {
        for (std::size_t j = 0; j < rec.w.size(); ++j) pt[j] = rec.w[j] * rec.sigma;
      }
      out.points.push_back(std::move(pt));
      out.degenerate.push_back(degen);
    }
    return out;
  }
};

inline double spar_density(const SparModel& m, double r, double q) { return m.density(r, q); }
inline LimitSetBoundary limit_set(const SparModel& m) { return m.limit_set(); }

// Finite-difference slope of -log delta_L between two radii; estimates
// lambda(w) - 1. A nonzero beta(w) contributes a bias of
// -beta (log r_hi - log r_lo)/(r_hi - r_lo).
inline double numeric_lambda_slope(const ardensity::ARDensityEngine& e, std::span<const double> w,
                                   double r_lo, double r_hi) {
  if (!(e.margin().family() == margins::MarginFamily::SGP && e.margin().shape() == 0.0))
    throw std::domain_error("numeric_lambda_slope: Laplace margins required");
  if (!(r_lo < r_hi)) throw std::invalid_argument("numeric_lambda_slope: need r_lo < r_hi");
  const auto d_lo = e.delta(r_lo, w);
  const auto d_hi = e.delta(r_hi, w);
  if (d_lo.outside_support || d_hi.outside_support ||
      !std::isfinite(d_lo.log_value) || !std::isfinite(d_hi.log_value))
    throw std::domain_error("numeric_lambda_slope: delta vanished on the window");
  return (d_lo.log_value - d_hi.log_value) / (r_hi - r_lo);
}

// Richardson-style refinement: slopes on three subwindows are linear in
// x = (log r_hi - log r_lo)/(r_hi - r_lo) when delta_L ~ g r^beta e^{-(l-1)r};
// the least-squares intercept removes the beta bias entirely.
inline double numeric_lambda_slope_refined(const ardensity::ARDensityEngine& e,
                                           std::span<const double> w, double r_lo, double r_hi) {
  const double step = (r_hi - r_lo) / 3.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    const double a = r_lo + i * step, b = a + step;
    const double s = numeric_lambda_slope(e, w, a, b);
    const double x = (std::log(b) - std::log(a)) / (b - a);
    sx += x;
    sy += s;
    sxx += x * x;
    sxy += x * s;
  }
  const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
  return (sy - slope * sx) / 3.0;
}

struct BuildOptions {
  int n_angles = 720;
  std::optional<SparVariant> variant;  // default chosen from margin/source
  unsigned threads = 1;

  BuildOptions() = default;
  BuildOptions(int n, std::optional<SparVariant> v = std::nullopt, unsigned t = 1)
      : n_angles(n), variant(v), threads(t) {}
};

namespace detail {

struct ShortTailExact {
  double xi = 0.0;
  bool sigma_const = true;
  double sigma = 0.0;
  double alpha = 0.0;  // Nelsen parameter for the angle-dependent scale
  bool nelsen = false;
};

// Clayton / Nelsen survival views on matched short-tailed margins admit exact
// GP radial parameters; detect those pairings.
inline std::optional<ShortTailExact> short_tail_exact(const copulas::CopulaModel& c,
                                                      const margins::Margin& m) {
  using copulas::CopulaFamily;
  if (m.family() != margins::MarginFamily::GP || !(m.shape() < 0.0)) return std::nullopt;
  const bool survival = c.corner()[0] == 1 && c.corner()[1] == 1;
  if (!survival) return std::nullopt;
  if (c.family() == CopulaFamily::Clayton && std::abs(m.shape() - c.alpha()) < 1e-12) {
    ShortTailExact ex;
    ex.xi = c.alpha() / (1.0 + c.alpha());
    ex.sigma = std::pow(-ex.xi, -ex.xi) * std::pow(1.0 - ex.xi, ex.xi + 1.0);
    return ex;
  }
  if (c.family() == CopulaFamily::Nelsen4215 &&
      std::abs(m.shape() + 1.0 / c.alpha()) < 1e-12) {
    ShortTailExact ex;
    ex.nelsen = true;
    ex.alpha = c.alpha();
    ex.xi = -1.0 / (c.alpha() - 1.0);
    ex.sigma_const = false;
    return ex;
  }
  return std::nullopt;
}

inline double nelsen_sigma(double alpha, double q, double xi) {
  const double g = std::pow(alpha, 1.0 - alpha) * (alpha - 1.0) *
                   std::pow(std::pow(1.0 - q, alpha) + std::pow(q, alpha), 1.0 - 1.0 / alpha);
  return std::pow(g, xi) * std::pow(-xi, 1.0 + xi);
}

}  // namespace detail

// Directions on the L1 unit sphere in R^3 from a subdivided octahedron: per
// orthant, interior barycentric triples (i,j,k)/level with i+j+k = level.
inline std::vector<std::vector<double>> l1_sphere_grid_3d(int level) {
  if (level < 3) throw std::invalid_argument("l1_sphere_grid_3d: level >= 3 required");
  std::vector<std::vector<double>> out;
  for (int s = 0; s < 8; ++s) {
    const double s1 = (s & 1) ? -1.0 : 1.0;
    const double s2 = (s & 2) ? -1.0 : 1.0;
    const double s3 = (s & 4) ? -1.0 : 1.0;
    for (int i = 1; i <= level - 2; ++i)
      for (int j = 1; j <= level - 1 - i; ++j) {
        const int k = level - i - j;
        out.push_back({s1 * i / static_cast<double>(level), s2 * j / static_cast<double>(level),
                       s3 * k / static_cast<double>(level)});
      }
  }
  return out;
}

// Vector-angle SPAR build over an explicit direction grid (d >= 3 uses the
// triangulated L1 sphere above). Parameters come from numeric GP fits; the
// gamma variant keeps xi = 0 with the fitted scale.
inline SparModel build_spar_grid(const ardensity::ARDensityEngine& e, double zeta,
                                 std::vector<std::vector<double>> grid,
                                 std::optional<SparVariant> variant = std::nullopt,
                                 unsigned threads = 1) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("build_spar_grid: zeta outside (0,1)");
  SparModel out;
  out.margin_family = e.margin().family();
  out.margin_shape = e.margin().shape();
  out.dimension = e.dimension();
  out.provenance = Provenance::NumericFit;
  out.variant = variant.value_or(SparVariant::GPTail);
  out.records.resize(grid.size());
  num::parallel_for(grid.size(), threads, [&](std::size_t k) {
    AngleRecord rec;
    rec.w = grid[k];
    rec.zeta = zeta;
    auto fw = e.angular_density(rec.w);
    if (fw.divergent || !(fw.value > 0.0)) {
      rec.valid = false;
      out.records[k] = std::move(rec);
      return;
    }
    rec.f_w = fw.value;
    rec.mu = e.conditional_quantile(zeta, std::span<const double>(rec.w));
    const double m1 = e.conditional_quantile(zeta / 2.0, std::span<const double>(rec.w));
    const double m2 = e.conditional_quantile(zeta / 4.0, std::span<const double>(rec.w));
    const double d1 = m1 - rec.mu, d2 = m2 - m1;
    if (out.variant == SparVariant::GammaTailLaplace) {
      // gamma-tail scale from the quantile pair through the gamma survivor
      const int d = out.dimension;
      rec.xi = 0.0;
      rec.sigma = num::find_root(
          [&](double s) {
            return num::upper_incomplete_gamma_int(d, m1 / s) /
                       num::upper_incomplete_gamma_int(d, rec.mu / s) -
                   0.5;
          },
          1e-3, 1e3, 1e-11);
    } else {
      const double xi = std::log2(d2 / d1);
      rec.xi = xi;
      rec.sigma = std::abs(xi) < 1e-10 ? d1 / std::log(2.0) : xi * d1 / (std::exp2(xi) - 1.0);
    }
    out.records[k] = std::move(rec);
  });
  return out;
}

// moment-free GP fit from the quantile triplet {zeta, zeta/2, zeta/4}
inline std::pair<double, double> numeric_gp_fit(const ardensity::ARDensityEngine& e, double q,
                                                double zeta, double mu0) {
  const double m1 = e.conditional_quantile(zeta / 2.0, q);
  const double m2 = e.conditional_quantile(zeta / 4.0, q);
  const double d1 = m1 - mu0, d2 = m2 - m1;
  const double xi = std::log2(d2 / d1);
  double sigma;
  if (std::abs(xi) < 1e-10) {
    sigma = d1 / std::log(2.0);
  } else {
    sigma = xi * d1 / (std::exp2(xi) - 1.0);
  }
  return {xi, sigma};
}

// Construct a SPAR model on a uniform scalar-angle grid. Margins supported:
// Laplace (catalog lambda / numeric fits), standard Pareto with the polar
// origin at 1_d, and GP margins with negative shape for the exact
// short-tailed cases.
inline SparModel build_spar(const ardensity::ARDensityEngine& e, double zeta, Provenance source,
                            BuildOptions opt = {}) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("build_spar: zeta outside (0,1)");
  const auto& m = e.margin();
  const bool laplace = m.family() == margins::MarginFamily::SGP && m.shape() == 0.0;
  const bool pareto = m.family() == margins::MarginFamily::StandardPareto;
  const bool gp_neg = m.family() == margins::MarginFamily::GP && m.shape() < 0.0;
  if (!laplace && !pareto && !gp_neg)
    throw std::domain_error("build_spar: unsupported margin family");
  if (e.dimension() != 2) throw std::domain_error("build_spar: scalar grids require d = 2");

  SparModel out;
  out.margin_family = m.family();
  out.margin_shape = m.shape();
  out.dimension = 2;
  out.provenance = source;
  if (opt.variant) {
    out.variant = *opt.variant;
  } else if (pareto) {
    out.variant = SparVariant::ParetoTail;
  } else if (laplace && source == Provenance::Catalog) {
    out.variant = SparVariant::GammaTailLaplace;
  } else {
    out.variant = SparVariant::GPTail;
  }

  const auto ex = detail::short_tail_exact(e.copula(), m);

  // Pareto-tail metadata: kappa in the upper corner, refined EV scale
  std::optional<double> kappa_up;
  bool ev_refined = false;
  if (pareto) {
    using copulas::CopulaFamily;
    switch (e.copula().family()) {
      case CopulaFamily::Independence: kappa_up = 2.0; break;
      case CopulaFamily::Gaussian: kappa_up = 2.0 / (1.0 + e.copula().rho()); break;
      case CopulaFamily::StudentT: kappa_up = 1.0; break;
      case CopulaFamily::Ev:
        kappa_up = 1.0;
        ev_refined = true;
        break;
      default: break;  // numeric kappa below
    }
  }

  const auto l1 = geometry::StarBoundary::lp(1.0);
  out.records.resize(opt.n_angles);
  num::parallel_for(opt.n_angles, opt.threads, [&](std::size_t k) {
    AngleRecord rec;
    rec.q = -2.0 + 4.0 * (static_cast<double>(k) + 1.0) / opt.n_angles;
    const auto wq = l1.pseudo_trig(rec.q);
    rec.w = {wq[0], wq[1]};
    rec.zeta = zeta;
    auto [rlo, rhi] = e.radial_support(rec.w);
    if (!(rhi > rlo)) {
      rec.valid = false;
      out.records[k] = std::move(rec);
      return;
    }
    auto fw = e.angular_density(rec.q);
    if (fw.divergent || !(fw.value > 0.0)) {
      rec.valid = false;
      rec.f_w = fw.value;
      out.records[k] = std::move(rec);
      return;
    }
    rec.f_w = fw.value;
    rec.mu = e.conditional_quantile(zeta, rec.q);

    if (ex) {
      rec.xi = ex->xi;
      rec.sigma = ex->sigma_const
                      ? ex->sigma
                      : detail::nelsen_sigma(ex->alpha, std::clamp(rec.q, 0.0, 1.0), ex->xi);
      out.records[k] = std::move(rec);
      return;
    }

    if (source == Provenance::Catalog && laplace) {
      const auto li = lambda_catalog(e.copula(), rec.w);
      rec.profile = li.profile;
      switch (li.profile) {
        case LambdaProfile::Standard:
          rec.xi = 0.0;
          rec.sigma = 1.0 / li.lambda;
          break;
        case LambdaProfile::GaussianType:
          // exp(-(c/2) r^2 + r/2) tail: local scale from the quadratic exponent
          rec.xi = 0.0;
          rec.sigma = 1.0 / (li.coeff * rec.mu + 0.5);
          rec.degenerate = true;
          break;
        case LambdaProfile::MuDependent:
          rec.xi = 0.0;
          rec.sigma = 1.0 / (1.0 + li.mu_slope * rec.mu);
          rec.degenerate = true;
          break;
        case LambdaProfile::NumericOnly: {
          const auto fit = numeric_gp_fit(e, rec.q, zeta, rec.mu);
          rec.xi = fit.first;
          rec.sigma = fit.second;
          break;
        }
      }
      out.records[k] = std::move(rec);
      return;
    }

    if (pareto && source == Provenance::Catalog && kappa_up) {
      if (ev_refined) {
        const auto& dep = e.copula().dependence();
        const double q01 = std::clamp(rec.q, 1e-12, 1.0 - 1e-12);
        const double btilde = std::exp(dep.log_abs_A11(q01, 1.0 - q01)) / (q01 * (1.0 - q01));
        rec.xi = 1.0;
        rec.sigma = rec.mu + btilde / rec.f_w;
      } else {
        rec.xi = 1.0 / *kappa_up;
        rec.sigma = rec.mu / *kappa_up;
      }
      out.records[k] = std::move(rec);
      return;
    }

    const auto fit = numeric_gp_fit(e, rec.q, zeta, rec.mu);
    rec.xi = fit.first;
    rec.sigma = fit.second;
    out.records[k] = std::move(rec);
  });
  return out;
}

}  // namespace spar::model
