#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spar/ardensity/elliptical.hpp"
#include "spar/ardensity/engine.hpp"
#include "spar/asymptotics/tail.hpp"
#include "spar/copulas/copula.hpp"
#include "spar/geometry/polar_map.hpp"
#include "spar/geometry/star_boundary.hpp"
#include "spar/margins/margin.hpp"
#include "spar/numerics/parallel.hpp"
#include "spar/spar/catalog.hpp"
#include "spar/spar/model.hpp"

namespace spar::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values and tolerances
};

namespace detail {

using copulas::CopulaModel;
using copulas::EvDependence;
using margins::Margin;

inline geometry::PolarMap l1_map(int d = 2) {
  return geometry::PolarMap(geometry::StarBoundary::lp(1.0, d),
                            geometry::StarBoundary::lp(1.0, d));
}
inline geometry::PolarMap theta_map() {
  return geometry::PolarMap(geometry::StarBoundary::lp(2.0), geometry::StarBoundary::lp(2.0));
}

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
inline CheckResult c1_jacobians() {
  CheckResult r{"geometry", "1. L^p jacobian constants and finite-difference oracle", true, ""};
  double worst_const = 0.0;
  worst_const = std::max(worst_const, std::abs(geometry::lp_jacobian(1.0, 0.37) - 1.0));
  worst_const = std::max(worst_const, std::abs(geometry::lp_jacobian(2.0, -1.2) - num::pi / 2));
  worst_const = std::max(
      worst_const,
      std::abs(geometry::lp_jacobian(std::numeric_limits<double>::infinity(), 0.8) - 2.0));
  double worst_rel = 0.0;
  for (double p : {1.5, 3.0, 4.0}) {
    const auto b = geometry::StarBoundary::lp(p);
    for (int k = 0; k < 50; ++k) {
      const double q = -2.0 + 4.0 * (k + 0.5) / 50.0;
      const double h = 1e-5;
      const auto pm = b.pseudo_trig(q - h), pp = b.pseudo_trig(q + h), p0 = b.pseudo_trig(q);
      const double fd =
          std::abs(p0[0] * (pp[1] - pm[1]) / (2 * h) - (pp[0] - pm[0]) / (2 * h) * p0[1]);
      worst_rel = std::max(worst_rel, std::abs(geometry::lp_jacobian(p, q) / fd - 1.0));
    }
  }
  r.pass = worst_const < 1e-10 && worst_rel < 1e-5;
  r.detail = "constants err " + fmt(worst_const) + " (tol 1e-10); fd rel err " + fmt(worst_rel) +
             " (tol 1e-5)";
  return r;
}

// ---------------------------------------------------------------- criterion 2
inline CheckResult c2_elliptical_closed_forms() {
  CheckResult r{"elliptical", "2. elliptical angular density and conditional survivors", true, ""};
  double worst_ang = 0.0;
  for (double rho : {-0.5, 0.7}) {
    ardensity::ARDensityEngine e(CopulaModel::gaussian(rho), Margin::normal(), theta_map());
    for (int k = 0; k < 100; ++k) {
      const double th = -num::pi + 2.0 * num::pi * (k + 0.5) / 100.0;
      const double exact =
          std::sqrt(1 - rho * rho) / (2 * num::pi * (1 - rho * std::sin(2 * th)));
      worst_ang = std::max(worst_ang, std::abs(e.angular_density(th).value - exact));
    }
  }
  double worst_n = 0.0, worst_t = 0.0;
  {
    ardensity::ARDensityEngine e(
        CopulaModel::gaussian(0.6), Margin::normal(),
        geometry::PolarMap(geometry::StarBoundary::elliptical(0.6), geometry::StarBoundary::lp(2.0)));
    for (double rr : {0.5, 1.0, 2.0, 3.0})
      worst_n = std::max(worst_n,
                         std::abs(e.conditional_survivor(rr, 0.4) - std::exp(-0.5 * rr * rr)));
  }
  {
    const double nu = 2.0;
    ardensity::ARDensityEngine e(
        CopulaModel::student_t(0.6, nu), Margin::student_t(nu),
        geometry::PolarMap(geometry::StarBoundary::elliptical(0.6), geometry::StarBoundary::lp(2.0)));
    for (double rr : {0.5, 1.0, 2.0, 5.0})
      worst_t = std::max(
          worst_t, std::abs(e.conditional_survivor(rr, -1.0) - std::pow(1 + rr * rr / nu, -nu / 2)));
  }
  r.pass = worst_ang < 1e-8 && worst_n < 1e-8 && worst_t < 1e-8;
  r.detail = "angular err " + fmt(worst_ang) + ", normal survivor err " + fmt(worst_n) +
             ", t survivor err " + fmt(worst_t) + " (tol 1e-8)";
  return r;
}

// ---------------------------------------------------------------- criterion 3
inline CheckResult c3_t_gp_tail_limit() {
  CheckResult r{"elliptical", "3. t radial tail ratio converges to the GP form", true, ""};
  const double nu = 2.0;
  auto sup_err = [&](double mu) {
    double worst = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double rr = mu * k / 400.0;
      const double exact =
          std::pow((1 + (mu + rr) * (mu + rr) / nu) / (1 + mu * mu / nu), -nu / 2);
      const double gp = std::pow(1 + rr / mu, -nu);
      worst = std::max(worst, std::abs(exact - gp));
    }
    return worst;
  };
  const double e10 = sup_err(10.0), e30 = sup_err(30.0), e100 = sup_err(100.0);
  r.pass = e10 > e30 && e30 > e100 && e100 < 0.02;
  r.detail = "sup errs mu=10/30/100: " + fmt(e10) + "/" + fmt(e30) + "/" + fmt(e100) +
             " (decreasing, last < 0.02)";
  return r;
}

// ---------------------------------------------------------------- criterion 4
inline CheckResult c4_independence_laplace() {
  CheckResult r{"laplace", "4. independence on Laplace: angular constant and gamma exactness",
                true, ""};
  double worst_fw = 0.0;
  ardensity::ARDensityEngine e2(CopulaModel::independence(), Margin::laplace(), l1_map());
  for (double q : {-1.6, -0.8, 0.1, 0.5, 1.3})
    worst_fw = std::max(worst_fw, std::abs(e2.angular_density(q).value - 0.25));
  ardensity::ARDensityEngine e3(CopulaModel::independence(3), Margin::laplace(), l1_map(3));
  for (auto& w : std::vector<std::vector<double>>{{0.2, 0.5, 0.3}, {0.6, -0.1, -0.3}})
    worst_fw = std::max(worst_fw, std::abs(e3.angular_density(w).value - 0.25));

  // gamma-variant SPAR equals the exact density pointwise (d = 2 model build)
  auto m = model::build_spar(e2, 0.05, model::Provenance::Catalog, {16});
  double worst_d2 = 0.0;
  for (const auto& rec : m.records) {
    for (double s : {0.0, 1.0, 5.0, 15.0}) {
      const double rr = rec.mu + s;
      const double exact = 0.25 * rr * std::exp(-rr);
      worst_d2 = std::max(worst_d2, std::abs(m.density_at(rec, rr) - exact));
    }
  }
  // d = 3: zeta f_W / A r^2 e^{-r} vs the exact 2^{-3} r^2 e^{-r} * 2 ... with
  // A = Gamma(3, mu), zeta from the engine radial integral
  std::vector<double> w3{0.25, 0.45, 0.3};
  const double fw3 = e3.angular_density(w3).value;
  const double mu3 = num::find_root(
      [&](double m0) { return num::upper_incomplete_gamma_int(3, m0) / 2.0 - 0.05; }, 1.0, 30.0,
      1e-12);
  auto joint3 = [&](double rr) { return e3.joint_polar_density(rr, w3).value; };
  const double zeta3 = num::integrate_exp_tail(joint3, mu3, {0.0, 1e-12}).value / fw3;
  const double A3 = num::upper_incomplete_gamma_int(3, mu3);
  double worst_d3 = 0.0;
  for (double s : {0.0, 2.0, 8.0}) {
    const double rr = mu3 + s;
    const double fspar = zeta3 * fw3 / A3 * rr * rr * std::exp(-rr);
    const double exact = 0.125 * rr * rr * std::exp(-rr);
    worst_d3 = std::max(worst_d3, std::abs(fspar - exact));
  }
  r.pass = worst_fw < 1e-8 && worst_d2 < 1e-10 && worst_d3 < 1e-10;
  r.detail = "f_W err " + fmt(worst_fw) + " (tol 1e-8); gamma pointwise err d2 " + fmt(worst_d2) +
             ", d3 " + fmt(worst_d3) + " (tol 1e-10)";
  return r;
}

// ---------------------------------------------------------------- criterion 5
inline CheckResult c5_lambda_catalog_vs_slope(unsigned threads) {
  CheckResult r{"laplace", "5. Laplace lambda catalog vs numeric slope", true, ""};
  struct Case {
    CopulaModel c;
    double tol;
    std::string tag;
  };
  std::vector<Case> cases;
  cases.push_back({CopulaModel::frank(5.0), 0.03, "frank(5)"});
  for (double a : {2.0, 3.0}) cases.push_back({CopulaModel::joe(a), 0.03, "joe"});
  for (double nu : {1.0, 2.0, 5.0})
    cases.push_back({CopulaModel::student_t(0.6, nu), 0.03, "t"});
  for (double a : {2.0, 3.0})
    cases.push_back({CopulaModel::ev(EvDependence::symmetric_logistic(a)), 0.03, "ev_logistic"});
  cases.push_back({CopulaModel::gaussian(0.6), 0.05, "gaussian(0.6)"});

  std::vector<double> angles;
  for (int quad = 0; quad < 4; ++quad)
    for (int j = 1; j <= 9; ++j) angles.push_back(-2.0 + quad + j / 10.0);

  double worst = 0.0;
  std::string worst_tag;
  std::vector<double> errs(cases.size(), 0.0);
  num::parallel_for(cases.size(), threads, [&](std::size_t i) {
    ardensity::ARDensityEngine e(cases[i].c, Margin::laplace(), l1_map());
    double w0 = 0.0;
    for (double q : angles) {
      const auto wq = geometry::StarBoundary::lp(1.0).pseudo_trig(q);
      std::vector<double> w{wq[0], wq[1]};
      const double slope = model::numeric_lambda_slope_refined(e, w, 30.0, 60.0);
      const double lam = model::lambda_catalog(cases[i].c, w).lambda;
      w0 = std::max(w0, std::abs(slope - (lam - 1.0)));
    }
    errs[i] = w0;
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (errs[i] >= cases[i].tol) {
      r.pass = false;
      worst_tag += cases[i].tag + "=" + fmt(errs[i]) + " ";
    }
    worst = std::max(worst, errs[i]);
  }
  r.detail = "worst |slope-(lambda-1)| = " + fmt(worst) + " (tol 0.03, gaussian 0.05)" +
             (worst_tag.empty() ? "" : ("; failed: " + worst_tag));
  return r;
}

// ---------------------------------------------------------------- criterion 6
inline model::SparModel catalog_limit_model(const CopulaModel& c, int n) {
  model::SparModel m;
  m.margin_family = margins::MarginFamily::SGP;
  m.margin_shape = 0.0;
  m.dimension = 2;
  m.variant = model::SparVariant::GammaTailLaplace;
  m.provenance = model::Provenance::Catalog;
  const auto l1 = geometry::StarBoundary::lp(1.0);
  m.records.resize(n);
  for (int k = 0; k < n; ++k) {
    model::AngleRecord rec;
    rec.q = -2.0 + 4.0 * (k + 1.0) / n;
    const auto wq = l1.pseudo_trig(rec.q);
    rec.w = {wq[0], wq[1]};
    const auto li = model::lambda_catalog(c, rec.w);
    rec.profile = li.profile;
    if (li.profile == model::LambdaProfile::Standard) {
      rec.xi = 0.0;
      rec.sigma = 1.0 / li.lambda;
    } else {
      rec.degenerate = true;
    }
    m.records[k] = std::move(rec);
  }
  return m;
}

inline CheckResult c6_limit_sets() {
  CheckResult r{"limitset", "6. limit sets bounded by the unit box and attaining it", true, ""};
  std::vector<std::pair<std::string, CopulaModel>> models;
  models.emplace_back("independence", CopulaModel::independence());
  models.emplace_back("frank(5)", CopulaModel::frank(5.0));
  models.emplace_back("joe(2)", CopulaModel::joe(2.0));
  models.emplace_back("joe(3)", CopulaModel::joe(3.0));
  models.emplace_back("gaussian(0.6)", CopulaModel::gaussian(0.6));
  models.emplace_back("gaussian(-0.4)", CopulaModel::gaussian(-0.4));
  models.emplace_back("t(0.6,2)", CopulaModel::student_t(0.6, 2.0));
  models.emplace_back("t(-0.3,1)", CopulaModel::student_t(-0.3, 1.0));
  models.emplace_back("ev_logistic(2)", CopulaModel::ev(EvDependence::symmetric_logistic(2.0)));
  models.emplace_back("ev_logistic(3)", CopulaModel::ev(EvDependence::symmetric_logistic(3.0)));
  models.emplace_back("ev_asym(5,.9,.1)",
                      CopulaModel::ev(EvDependence::asymmetric_logistic(5.0, 0.9, 0.1)));
  models.emplace_back("husler_reiss(1)", CopulaModel::ev(EvDependence::husler_reiss(1.0)));
  models.emplace_back("biv_exponential(0.5)", CopulaModel::biv_exponential(0.5));

  std::string fails;
  double worst_box = 0.0, worst_attain = 0.0;
  for (auto& [tag, c] : models) {
    auto m = catalog_limit_model(c, 8000);
    auto ls = m.limit_set();
    double maxc = 0.0;
    double ax[4] = {-1e300, -1e300, -1e300, -1e300};  // +x, -x, +y, -y
    for (std::size_t i = 0; i < ls.points.size(); ++i) {
      if (ls.degenerate[i]) continue;
      const double x = ls.points[i][0], y = ls.points[i][1];
      maxc = std::max({maxc, std::abs(x), std::abs(y)});
      ax[0] = std::max(ax[0], x);
      ax[1] = std::max(ax[1], -x);
      ax[2] = std::max(ax[2], y);
      ax[3] = std::max(ax[3], -y);
    }
    const double attain = std::min({ax[0], ax[1], ax[2], ax[3]});
    worst_box = std::max(worst_box, maxc - 1.0);
    worst_attain = std::max(worst_attain, 1.0 - attain);
    if (maxc > 1.0 + 1e-9 || attain < 1.0 - 1e-3) {
      r.pass = false;
      fails += tag + " ";
    }
  }
  // t through (1,1) regardless of rho; gaussian through (0.8, 0.8)
  for (double rho : {-0.5, 0.0, 0.7}) {
    const auto li = model::lambda_catalog(CopulaModel::student_t(rho, 2.0),
                                          std::vector<double>{0.5, 0.5});
    if (std::abs(0.5 / li.lambda - 1.0) > 1e-9) r.pass = false;
  }
  const auto lg =
      model::lambda_catalog(CopulaModel::gaussian(0.6), std::vector<double>{0.5, 0.5});
  const double gpt = 0.5 / lg.lambda;
  if (std::abs(gpt - 0.8) > 1e-6) r.pass = false;
  r.detail = "box excess " + fmt(worst_box) + " (tol 1e-9); attainment gap " + fmt(worst_attain) +
             " (tol 1e-3); gaussian diag point " + fmt(gpt) +
             (fails.empty() ? "" : ("; failed: " + fails));
  return r;
}

// ---------------------------------------------------------------- criterion 7
inline CheckResult c7_short_tail_exactness() {
  CheckResult r{"shorttail", "7. Clayton/Nelsen survival on matched GP margins are exact", true,
                ""};
  const std::array<int, 2> c11{1, 1};
  auto cl = CopulaModel::clayton(-0.2).reflect_corner(c11);
  ardensity::ARDensityEngine ce(cl, Margin::gp(-0.2), l1_map());
  double worst_fq = 0.0, worst_dens = 0.0;
  for (int j = 0; j <= 10; ++j) {
    const double q = j / 10.0;
    worst_fq = std::max(worst_fq, std::abs(ce.angular_density(q).value - 1.0));
    worst_dens = std::max(worst_dens, std::abs(ce.joint_polar_density(1.0, q).value - 0.4096));
  }

  auto nl = CopulaModel::nelsen_4215(3.0).reflect_corner(c11);
  ardensity::ARDensityEngine ne(nl, Margin::gp(-1.0 / 3.0), l1_map());
  const double fq_half = ne.angular_density(0.5).value;
  const double alpha = 3.0, xi = -0.5;
  double worst_gp = 0.0;
  for (double q : {0.3, 0.5, 0.8}) {
    const double sigma = model::detail::nelsen_sigma(alpha, q, xi);
    const double rF = -sigma / xi;
    for (double s : {0.1, 0.5, 1.2}) {
      const double rr = rF - s;
      const double fgp = model::SparModel::gp_pdf(rr, xi, sigma);
      worst_gp = std::max(worst_gp, std::abs(ne.conditional_density(rr, q) - fgp));
    }
  }
  r.pass = worst_fq < 1e-8 && worst_dens < 1e-10 && std::abs(fq_half - 3.0) < 3e-10 &&
           worst_gp < 1e-9;
  r.detail = "clayton f_Q err " + fmt(worst_fq) + ", f_RQ(1,q) err " + fmt(worst_dens) +
             "; nelsen f_Q(1/2) err " + fmt(std::abs(fq_half - 3.0)) + ", GP pointwise err " +
             fmt(worst_gp);
  return r;
}

// ---------------------------------------------------------------- criterion 8
inline CheckResult c8_tail_orders(unsigned threads) {
  CheckResult r{"tailorder", "8. numeric tail orders match the catalog", true, ""};
  struct Case {
    CopulaModel c;
    std::array<int, 2> corner;
    double expect;
    std::string tag;
  };
  std::vector<Case> cases;
  for (double rho : {-0.5, 0.0, 0.6})
    cases.push_back({CopulaModel::gaussian(rho == 0.0 ? 1e-15 : rho),
                     {0, 0},
                     2.0 / (1.0 + rho),
                     "gaussian(" + fmt(rho) + ")"});
  for (double a : {1.5, 2.0})
    cases.push_back({CopulaModel::ev(EvDependence::symmetric_logistic(a)),
                     {0, 0},
                     std::pow(2.0, 1.0 / a),
                     "ev_lower(" + fmt(a) + ")"});
  cases.push_back({CopulaModel::student_t(0.5, 2.0), {0, 0}, 1.0, "t(0,0)"});
  cases.push_back({CopulaModel::student_t(0.5, 2.0), {1, 1}, 1.0, "t(1,1)"});
  cases.push_back({CopulaModel::student_t(0.5, 2.0), {1, 0}, 1.0, "t(1,0)"});
  cases.push_back({CopulaModel::student_t(0.5, 2.0), {0, 1}, 1.0, "t(0,1)"});
  cases.push_back({CopulaModel::independence(), {0, 0}, 2.0, "independence"});

  std::vector<double> errs(cases.size());
  num::parallel_for(cases.size(), threads, [&](std::size_t i) {
    auto est = asymptotics::tail_order_slope(cases[i].c, cases[i].corner, 1e-6);
    errs[i] = std::abs(est.value - cases[i].expect);
  });
  double worst = 0.0;
  std::string fails;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    worst = std::max(worst, errs[i]);
    if (errs[i] >= 0.05) {
      r.pass = false;
      fails += cases[i].tag + "=" + fmt(errs[i]) + " ";
    }
  }
  r.detail = "worst |kappa_hat - kappa| = " + fmt(worst) + " (tol 0.05 at t=1e-6)" +
             (fails.empty() ? "" : "; failed: " + fails);
  return r;
}

// ---------------------------------------------------------------- criterion 9
inline CheckResult c9_conversion_round_trips() {
  CheckResult r{"convert", "9. ARL/ARE conversion propositions round-trip", true, ""};
  const double nu = 2.0;
  auto t2 = CopulaModel::student_t(0.1, nu);
  const std::array<int, 2> c00{0, 0};
  double worst_t = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double w = k / 21.0;
    std::vector<double> z{1.0 - w, w};
    const double lam = asymptotics::exponent_catalog(t2, c00, z).lambda;
    worst_t = std::max(worst_t,
                       std::abs(asymptotics::are_from_arl(1.0, 1.0 / nu, 1.0 / nu, w) - lam));
  }
  // gaussian ARL density shape along 5 directions at t = 1e-6
  const double rho = 0.6;
  auto g = CopulaModel::gaussian(rho);
  const double kappa = 2.0 / (1.0 + rho);
  const double t = 1e-6;
  const double c0 = g.density(0.5 * t, 0.5 * t);
  double worst_g = 0.0;
  for (double w : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const auto shapes = asymptotics::arl_from_are(kappa, 0.0, 1.0 - w, w);
    const double pred = std::pow(1.0 - w, shapes.shape1) * std::pow(w, shapes.shape2) /
                        std::pow(0.25, 0.5 * kappa - 1.0);
    const double meas = g.density(t * (1.0 - w), t * w) / c0;
    worst_g = std::max(worst_g, std::abs(meas / pred - 1.0));
  }
  r.pass = worst_t < 1e-10 && worst_g < 0.10;
  r.detail = "t round-trip err " + fmt(worst_t) + " (tol 1e-10); gaussian ARL shape rel err " +
             fmt(worst_g) + " (tol 0.10)";
  return r;
}

// --------------------------------------------------------------- criterion 10
// The criterion's literal reading (one model built at zeta = 0.05, log-density
// error measured at mu+5/10/20) is decided here; the detail line also reports
// the threshold-swept convergence (models anchored at mu+5/10/20, error at the
// anchor), which is the finite-level property the GP limit actually provides.
inline CheckResult c10_spar_vs_truth(unsigned threads) {
  CheckResult r{"spartruth", "10. SPAR vs exact density for the bivariate t", true, ""};
  const double nu = 2.0, rho = 0.6, zeta = 0.05;
  const double offs[3] = {5.0, 10.0, 20.0};
  std::ostringstream det;

  // own margins: elliptical engine, catalog parameters xi = 1/nu, sigma = mu/nu
  const double mu_own = std::sqrt(nu * (std::pow(zeta, -2.0 / nu) - 1.0));
  auto f_true_own = [&](double rr) { return rr * std::pow(1 + rr * rr / nu, -nu / 2 - 1); };
  double own_err[3], own_sweep[3];
  for (int i = 0; i < 3; ++i) {
    const double rr = mu_own + offs[i];
    const double fs = zeta * model::SparModel::gp_pdf(rr - mu_own, 1.0 / nu, mu_own / nu);
    own_err[i] = std::abs(std::log(fs) - std::log(f_true_own(rr)));
    // swept: anchor the model at mu' = rr, evaluate at the anchor
    const double zz = std::pow(1 + rr * rr / nu, -nu / 2);
    const double fs2 = zz * model::SparModel::gp_pdf(0.0, 1.0 / nu, rr / nu);
    own_sweep[i] = std::abs(std::log(fs2) - std::log(f_true_own(rr)));
  }
  const bool own_final = own_err[2] < 0.05;
  const bool own_decreasing = own_err[0] >= own_err[1] && own_err[1] >= own_err[2];

  // Laplace margins: gamma-variant catalog build at 12 uniform angles
  ardensity::ARDensityEngine e(CopulaModel::student_t(rho, nu), Margin::laplace(), l1_map());
  auto m = model::build_spar(e, zeta, model::Provenance::Catalog, {12, std::nullopt, threads});
  double lap_err[3] = {0, 0, 0}, lap_sweep[3] = {0, 0, 0};
  for (const auto& rec : m.records) {
    if (!rec.valid) continue;
    const double sigma = rec.sigma;
    for (int i = 0; i < 3; ++i) {
      const double rr = rec.mu + offs[i];
      const double ft = e.joint_polar_density(rr, rec.q).value;
      lap_err[i] = std::max(lap_err[i], std::abs(std::log(m.density_at(rec, rr)) - std::log(ft)));
      // swept: gamma model re-anchored at mu' = rr with the same catalog scale
      const double zz = e.conditional_survivor(rr, rec.q);
      const double A = sigma * (sigma + rr) * std::exp(-rr / sigma);
      const double fs2 = zz * rec.f_w / A * rr * std::exp(-rr / sigma);
      lap_sweep[i] = std::max(lap_sweep[i], std::abs(std::log(fs2) - std::log(ft)));
    }
  }
  const bool lap_final = lap_err[2] < 0.05;
  const bool lap_decreasing = lap_err[0] >= lap_err[1] && lap_err[1] >= lap_err[2];

  r.pass = own_final && own_decreasing && lap_final && lap_decreasing;
  det << "fixed model: own " << fmt(own_err[0]) << "/" << fmt(own_err[1]) << "/"
      << fmt(own_err[2]) << (own_decreasing ? "" : " [not decreasing]")
      << (own_final ? "" : " [final >= 0.05]") << ", Laplace worst-angle " << fmt(lap_err[0])
      << "/" << fmt(lap_err[1]) << "/" << fmt(lap_err[2])
      << (lap_decreasing ? "" : " [not decreasing]") << (lap_final ? "" : " [final >= 0.05]")
      << "; swept thresholds: own " << fmt(own_sweep[0]) << "/" << fmt(own_sweep[1]) << "/"
      << fmt(own_sweep[2]) << ", Laplace " << fmt(lap_sweep[0]) << "/" << fmt(lap_sweep[1])
      << "/" << fmt(lap_sweep[2]);
  r.detail = det.str();
  return r;
}

// --------------------------------------------------------------- criterion 11
inline CheckResult c11_divergence_regimes() {
  CheckResult r{"divergence", "11. divergence flags and the Pareto joint-exceedance law", true,
                ""};
  ardensity::ARDensityEngine fr(CopulaModel::frank(5.0), Margin::sgp(1.0), l1_map());
  const bool frank_div = fr.angular_density(0.0).divergent;

  ardensity::ARDensityEngine tp(CopulaModel::student_t(0.4, 2.0), Margin::standard_pareto(),
                                l1_map());
  const bool t_div = tp.angular_density(0.5).divergent;

  // Gaussian copula on Pareto margins, origin 1_d: compensated angular law
  const double rho = 0.6;
  const double kappa = 2.0 / (1.0 + rho);
  ardensity::ARDensityEngine gp(CopulaModel::gaussian(rho).reflect_corner(std::array<int, 2>{1, 1}),
                                Margin::standard_pareto(), l1_map(), {1.0, 1.0});
  double cmin = 1e300, cmax = 0.0;
  const double rr = 1e4;
  for (int j = 0; j <= 12; ++j) {
    const double q = 0.2 + 0.6 * j / 12.0;
    const double f = gp.joint_polar_density(rr, q).value;
    const double comp = f * std::pow(q * (1 - q), 1.0 + 0.5 * kappa);
    cmin = std::min(cmin, comp);
    cmax = std::max(cmax, comp);
  }
  const double ratio = cmax / cmin;
  r.pass = frank_div && t_div && ratio < 1.15;
  r.detail = std::string("frank/SGP(1) divergent: ") + (frank_div ? "yes" : "NO") +
             "; t/pareto divergent: " + (t_div ? "yes" : "NO") +
             "; compensated max/min = " + fmt(ratio) + " (tol 1.15)";
  return r;
}

// --------------------------------------------------------------- criterion 12
inline CheckResult c12_monte_carlo(unsigned threads) {
  CheckResult r{"montecarlo", "12. Monte Carlo angular chi-square cross-checks", true, ""};
  struct Case {
    CopulaModel c;
    std::uint64_t seed;
    std::string tag;
  };
  std::vector<Case> cases{{CopulaModel::gaussian(0.6), 101, "gaussian(0.6)"},
                          {CopulaModel::student_t(0.6, 2.0), 202, "t(0.6,2)"},
                          {CopulaModel::frank(5.0), 303, "frank(5)"},
                          {CopulaModel::ev(EvDependence::symmetric_logistic(2.0)), 404,
                           "ev_logistic(2)"}};
  const std::size_t n = 100000;
  const int bins = 20;
  const double chi2_999_19 = 43.8202;  // 99.9% quantile of chi-square(19)
  auto lap = Margin::laplace();
  const auto l1 = geometry::StarBoundary::lp(1.0);
  double worst = 0.0;
  std::string fails;
  std::vector<double> stats(cases.size());
  num::parallel_for(cases.size(), threads, [&](std::size_t ci) {
    auto& cs = cases[ci];
    ardensity::ARDensityEngine e(cs.c, lap, l1_map());
    // expected bin masses from the angular density
    std::vector<double> p(bins);
    double psum = 0.0;
    for (int b = 0; b < bins; ++b) {
      const double qa = -2.0 + 4.0 * b / bins, qb = -2.0 + 4.0 * (b + 1) / bins;
      p[b] = num::integrate([&](double q) { return e.angular_density(q).value; }, qa, qb,
                            {1e-10, 1e-8, 200});
      psum += p[b];
    }
    for (auto& pb : p) pb /= psum;
    auto s = cs.c.sample(n, cs.seed);
    std::vector<double> obs(bins, 0.0);
    for (auto& u : s) {
      const double x = lap.quantile(u[0]);
      const double y = lap.quantile(u[1]);
      const double q = l1.pseudo_angle(x, y);
      int b = static_cast<int>((q + 2.0) / 4.0 * bins);
      b = std::clamp(b, 0, bins - 1);
      obs[b] += 1.0;
    }
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
      const double np = n * p[b];
      chi2 += (obs[b] - np) * (obs[b] - np) / np;
    }
    stats[ci] = chi2;
  });
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    worst = std::max(worst, stats[ci]);
    if (stats[ci] >= chi2_999_19) {
      r.pass = false;
      fails += cases[ci].tag + "=" + fmt(stats[ci]) + " ";
    }
  }
  r.detail =
      "worst chi2(19 dof) = " + fmt(worst) + " (99.9% quantile " + fmt(chi2_999_19) + ")" +
      (fails.empty() ? "" : "; failed: " + fails);
  return r;
}

}  // namespace detail

inline std::vector<std::string> acceptance_suites() {
  return {"geometry", "elliptical", "laplace",   "limitset",   "shorttail",
          "tailorder", "convert",   "spartruth", "divergence", "montecarlo"};
}

// Run the acceptance criteria, optionally restricted to one suite. Every
// check prints one pass/fail line through the caller.
inline std::vector<CheckResult> run_acceptance(const std::string& suite = "all",
                                               unsigned threads = 1) {
  std::vector<CheckResult> out;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (want("geometry")) out.push_back(detail::c1_jacobians());
  if (want("elliptical")) {
    out.push_back(detail::c2_elliptical_closed_forms());
    out.push_back(detail::c3_t_gp_tail_limit());
  }
  if (want("laplace")) {
    out.push_back(detail::c4_independence_laplace());
    out.push_back(detail::c5_lambda_catalog_vs_slope(threads));
  }
  if (want("limitset")) out.push_back(detail::c6_limit_sets());
  if (want("shorttail")) out.push_back(detail::c7_short_tail_exactness());
  if (want("tailorder")) out.push_back(detail::c8_tail_orders(threads));
  if (want("convert")) out.push_back(detail::c9_conversion_round_trips());
  if (want("spartruth")) out.push_back(detail::c10_spar_vs_truth(threads));
  if (want("divergence")) out.push_back(detail::c11_divergence_regimes());
  if (want("montecarlo")) out.push_back(detail::c12_monte_carlo(threads));
  return out;
}

}  // namespace spar::verify
