#include <cmath>
#include <vector>

#include "doctest.h"
#include "spar/spar/catalog.hpp"
#include "spar/spar/model.hpp"

using namespace spar;
using ardensity::ARDensityEngine;
using copulas::CopulaModel;
using copulas::EvDependence;
using geometry::PolarMap;
using geometry::StarBoundary;
using margins::Margin;
using model::LambdaProfile;
using model::Provenance;
using model::SparVariant;

namespace {
PolarMap l1_map() { return PolarMap(StarBoundary::lp(1.0), StarBoundary::lp(1.0)); }
std::vector<double> diag{0.5, 0.5};
const std::array<int, 2> kC11{1, 1};
}  // namespace

TEST_CASE("lambda catalog closed forms") {
  auto t2 = CopulaModel::student_t(0.6, 2.0);
  auto li = model::lambda_catalog(t2, diag);
  CHECK(li.lambda == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(li.beta == doctest::Approx(0.0));
  CHECK(li.profile == LambdaProfile::Standard);

  for (double rho : {-0.3, 0.2, 0.6}) {
    auto g = model::lambda_catalog(CopulaModel::gaussian(rho), diag);
    CHECK(g.lambda == doctest::Approx(1.0 / (1.0 + rho)).epsilon(1e-14));
  }
  auto j = model::lambda_catalog(CopulaModel::joe(3.0), diag);
  CHECK(j.lambda == doctest::Approx(0.5).epsilon(1e-14));
  auto i = model::lambda_catalog(CopulaModel::independence(), diag);
  CHECK(i.lambda == doctest::Approx(1.0));
  CHECK(i.beta == doctest::Approx(0.0));

  // homogeneity convention: lambda(a w) = a lambda(w)
  for (double a : {0.5, 2.0}) {
    std::vector<double> w{a * 0.3, a * (-0.7)};
    auto base = model::lambda_catalog(t2, std::vector<double>{0.3, -0.7});
    CHECK(model::lambda_catalog(t2, w).lambda == doctest::Approx(a * base.lambda).epsilon(1e-13));
  }

  // husler-reiss: gaussian-type off the diagonal of the first quadrant,
  // standard with sigma = 2 on it
  auto hr = CopulaModel::ev(EvDependence::husler_reiss(1.0));
  auto hd = model::lambda_catalog(hr, diag);
  CHECK(hd.profile == LambdaProfile::Standard);
  CHECK(hd.lambda == doctest::Approx(0.5));
  auto ho = model::lambda_catalog(hr, std::vector<double>{0.75, 0.25});
  CHECK(ho.profile == LambdaProfile::GaussianType);
  CHECK(ho.coeff == doctest::Approx(0.25 * 0.5 * 0.5));  // (alpha (w1-w2)/2)^2

  // bivariate exponential: third quadrant mu-dependent
  auto be = CopulaModel::biv_exponential(0.5);
  auto b3 = model::lambda_catalog(be, std::vector<double>{-0.5, -0.5});
  CHECK(b3.profile == LambdaProfile::MuDependent);
  CHECK(b3.mu_slope == doctest::Approx(2.0 * 0.5 * 0.25));
  auto b1 = model::lambda_catalog(be, diag);
  CHECK(b1.profile == LambdaProfile::Standard);
  CHECK(b1.lambda == doctest::Approx(1.0));

  // off-catalog family
  CHECK(model::lambda_catalog(CopulaModel::clayton(2.0), diag).profile ==
        LambdaProfile::NumericOnly);
}

TEST_CASE("numeric lambda slope vs catalog") {
  ARDensityEngine ind(CopulaModel::independence(), Margin::laplace(), l1_map());
  std::vector<double> w{0.6, 0.4};
  CHECK(model::numeric_lambda_slope(ind, w, 20.0, 50.0) == doctest::Approx(0.0));

  ARDensityEngine te(CopulaModel::student_t(0.6, 2.0), Margin::laplace(), l1_map());
  std::vector<double> w2{0.75, 0.25};
  CHECK(std::abs(model::numeric_lambda_slope(te, w2, 30.0, 50.0)) < 0.02);

  ARDensityEngine je(CopulaModel::joe(3.0), Margin::laplace(), l1_map());
  CHECK(model::numeric_lambda_slope(je, diag, 30.0, 50.0) ==
        doctest::Approx(-0.5).epsilon(0.04));

  // refined estimator strips the documented beta log-bias (EV quadrant 2)
  ARDensityEngine ev3(CopulaModel::ev(EvDependence::symmetric_logistic(3.0)), Margin::laplace(),
                      l1_map());
  std::vector<double> wq2{-0.5, 0.5};
  const double raw = model::numeric_lambda_slope(ev3, wq2, 30.0, 60.0);
  const double refined = model::numeric_lambda_slope_refined(ev3, wq2, 30.0, 60.0);
  CHECK(std::abs(raw - 1.0) > 0.03);      // beta = 1 - alpha biases the raw slope
  CHECK(std::abs(refined - 1.0) < 0.01);  // the linear-in-x fit removes it
}

TEST_CASE("build_spar on laplace margins: independence") {
  ARDensityEngine e(CopulaModel::independence(), Margin::laplace(), l1_map());
  auto m = model::build_spar(e, 0.05, Provenance::Catalog, {24, std::nullopt, 2});
  CHECK(m.variant == SparVariant::GammaTailLaplace);
  for (const auto& rec : m.records) {
    CHECK(rec.valid);
    CHECK(rec.mu == doctest::Approx(4.743864518390578).epsilon(1e-7));
    CHECK(rec.sigma == doctest::Approx(1.0));
    CHECK(rec.xi == doctest::Approx(0.0));
    CHECK(rec.f_w == doctest::Approx(0.25).epsilon(1e-8));
  }
  // gamma variant reproduces the exact density pointwise above threshold
  for (double r : {5.0, 8.0, 15.0}) {
    const double exact = 0.25 * r * std::exp(-r);
    CHECK(m.density(r, 0.31) == doctest::Approx(exact).epsilon(1e-10));
  }
  CHECK_THROWS_AS(m.density(1.0, 0.31), std::domain_error);
}

TEST_CASE("build_spar short-tailed exact cases") {
  // Clayton survival with alpha = -0.2 on GP margins with the same shape
  auto cl = CopulaModel::clayton(-0.2).reflect_corner(kC11);
  ARDensityEngine ce(cl, Margin::gp(-0.2), l1_map());
  auto cm = model::build_spar(ce, 0.1, Provenance::Catalog, {16});
  int n_valid = 0;
  for (const auto& rec : cm.records) {
    if (!rec.valid) continue;
    ++n_valid;
    CHECK(rec.q >= 0.0);
    CHECK(rec.q <= 1.0);
    CHECK(rec.f_w == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rec.xi == doctest::Approx(-0.25).epsilon(1e-12));
  }
  CHECK(n_valid == 5);  // exactly the angles of [0,1] on a 16-grid, axes included
  // exact joint density value f_{R,Q}(1, q) = 0.4096
  ARDensityEngine ce2(cl, Margin::gp(-0.2), l1_map());
  for (double q : {0.1, 0.5, 0.9}) {
    CHECK(ce2.joint_polar_density(1.0, q).value == doctest::Approx(0.4096).epsilon(1e-12));
  }

  // Nelsen 4.2.15 with alpha = 3 on GP(-1/3)
  auto nl = CopulaModel::nelsen_4215(3.0).reflect_corner(kC11);
  ARDensityEngine ne(nl, Margin::gp(-1.0 / 3.0), l1_map());
  auto nm = model::build_spar(ne, 0.1, Provenance::Catalog, {16});
  const auto& rec = nm.at_angle(0.5);
  CHECK(rec.valid);
  CHECK(rec.xi == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rec.f_w == doctest::Approx(3.0).epsilon(1e-9));
  // conditional radial density equals the GP density pointwise
  const double sigma = rec.sigma;
  const double rF = 3.0 / std::pow(2.0 * std::pow(0.5, 3.0), 1.0 / 3.0);
  CHECK(-sigma / rec.xi == doctest::Approx(rF).epsilon(1e-10));
  for (double s : {0.2, 0.7, 1.5}) {
    const double r = rF - s;
    const double fexact = ne.conditional_density(r, 0.5);
    const double fgp = model::SparModel::gp_pdf(r, rec.xi, sigma);
    CHECK(fexact == doctest::Approx(fgp).epsilon(1e-9));
  }
}

TEST_CASE("spar density normalisation") {
  ARDensityEngine e(CopulaModel::gaussian(0.5), Margin::laplace(), l1_map());
  auto m = model::build_spar(e, 0.05, Provenance::NumericFit, {8});
  CHECK(m.variant == SparVariant::GPTail);
  for (const auto& rec : m.records) {
    if (!rec.valid) continue;
    // integral of the SPAR density over r > mu equals zeta * f_W
    const double total = num::integrate(
        [&](double r) { return m.density_at(rec, r); }, rec.mu,
        rec.xi < 0 ? rec.mu - rec.sigma / rec.xi : rec.mu + 60.0 * rec.sigma, {1e-12, 1e-10});
    CHECK(total == doctest::Approx(rec.zeta * rec.f_w).epsilon(1e-6));
  }
}

TEST_CASE("limit sets of catalog models") {
  // t copula: boundary point (1,1) at the diagonal regardless of rho
  for (double rho : {-0.4, 0.0, 0.6}) {
    ARDensityEngine e(CopulaModel::student_t(rho, 2.0), Margin::laplace(), l1_map());
    auto m = model::build_spar(e, 0.2, Provenance::Catalog, {8});
    auto ls = m.limit_set();
    const auto& rec = m.at_angle(0.5);
    CHECK(rec.sigma == doctest::Approx(2.0).epsilon(1e-12));
    bool found = false;
    for (std::size_t i = 0; i < ls.points.size(); ++i) {
      if (std::abs(m.records[i].q - 0.5) < 1e-12) {
        CHECK(ls.points[i][0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ls.points[i][1] == doctest::Approx(1.0).epsilon(1e-12));
        found = true;
      }
    }
    CHECK(found);
  }
  // Gaussian rho = 0.6 passes through (0.8, 0.8)
  ARDensityEngine g(CopulaModel::gaussian(0.6), Margin::laplace(), l1_map());
  auto gm = model::build_spar(g, 0.2, Provenance::Catalog, {8});
  const auto& grec = gm.at_angle(0.5);
  CHECK(0.5 * grec.sigma == doctest::Approx(0.8).epsilon(1e-9));
  // independence: the unit diamond
  ARDensityEngine ind(CopulaModel::independence(), Margin::laplace(), l1_map());
  auto im = model::build_spar(ind, 0.2, Provenance::Catalog, {16});
  for (const auto& rec : im.records) {
    CHECK(std::abs(rec.w[0]) * rec.sigma + std::abs(rec.w[1]) * rec.sigma ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  // non-Laplace model refuses
  auto cl = CopulaModel::clayton(-0.2).reflect_corner(kC11);
  ARDensityEngine ce(cl, Margin::gp(-0.2), l1_map());
  auto cm = model::build_spar(ce, 0.1, Provenance::Catalog, {8});
  CHECK_THROWS_AS(cm.limit_set(), std::domain_error);
}

TEST_CASE("independence on short tails: radial shape discontinuity at the diagonal") {
  // endpoint-index fit of f_{R|Q}(r_F - s) ~ s^beta at q = 0.45 vs q = 0.5
  ARDensityEngine e(CopulaModel::independence(), Margin::gp(-0.5), l1_map());
  auto endpoint_index = [&](double q) {
    const auto w = StarBoundary::lp(1.0).pseudo_trig(q);
    std::vector<double> wv{w[0], w[1]};
    const double rf = e.radial_support(wv).second;
    const double s1 = 1e-4, s2 = 1e-5;
    const double f1 = e.joint_polar_density(rf - s1, q).value;
    const double f2 = e.joint_polar_density(rf - s2, q).value;
    return std::log(f1 / f2) / std::log(s1 / s2);
  };
  const double b045 = endpoint_index(0.45);
  const double b05 = endpoint_index(0.5);
  CHECK(b045 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(b05 == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(b05 - b045) > 0.5);
}

TEST_CASE("ev on pareto margins: refined scale from the dependence function") {
  auto dep = EvDependence::symmetric_logistic(3.0);
  ARDensityEngine e(CopulaModel::ev(dep).reflect_corner(kC11), Margin::standard_pareto(),
                    l1_map(), {1.0, 1.0});
  auto m = model::build_spar(e, 0.05, Provenance::Catalog, {16});
  CHECK(m.variant == SparVariant::ParetoTail);
  const auto& rec = m.at_angle(0.5);
  CHECK(rec.valid);
  CHECK(rec.xi == doctest::Approx(1.0));
  // b-tilde(1/2) = (alpha-1) (1/4)^{alpha-2} (2 (1/2)^alpha)^{1/alpha - 2}
  const double a = 3.0;
  const double btilde = (a - 1.0) * std::pow(0.25, a - 2.0) *
                        std::pow(2.0 * std::pow(0.5, a), 1.0 / a - 2.0);
  const double sigma0 = btilde / rec.f_w;
  CHECK(rec.sigma == doctest::Approx(rec.mu + sigma0).epsilon(1e-8));
}

TEST_CASE("spar density accuracy for the t copula at the diagonal") {
  ARDensityEngine e(CopulaModel::student_t(0.6, 2.0), Margin::laplace(), l1_map());
  auto m = model::build_spar(e, 0.05, Provenance::Catalog, {8});
  const auto& rec = m.at_angle(0.5);
  const double r = rec.mu + 10.0;
  const double err =
      std::abs(std::log(m.density_at(rec, r)) - std::log(e.joint_polar_density(r, 0.5).value));
  CHECK(err < 0.05);
}

TEST_CASE("vector-angle grid build in three dimensions") {
  auto grid = model::l1_sphere_grid_3d(6);
  for (const auto& w : grid) {
    CHECK(std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]) == doctest::Approx(1.0));
  }
  CHECK(grid.size() == 8u * 10u);  // interior triples per orthant at level 6

  ARDensityEngine e(CopulaModel::independence(3), Margin::laplace(),
                    geometry::PolarMap(StarBoundary::lp(1.0, 3), StarBoundary::lp(1.0, 3)));
  std::vector<std::vector<double>> few(grid.begin(), grid.begin() + 3);
  auto m = model::build_spar_grid(e, 0.05, few, model::SparVariant::GammaTailLaplace, 3);
  for (const auto& rec : m.records) {
    CHECK(rec.valid);
    CHECK(rec.f_w == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(rec.sigma == doctest::Approx(1.0).epsilon(1e-7));
    // gamma model reproduces the exact density above threshold
    for (double s : {0.5, 4.0}) {
      const double rr = rec.mu + s;
      const double exact = 0.125 * rr * rr * std::exp(-rr);
      CHECK(m.density_at(rec, rr) == doctest::Approx(exact).epsilon(1e-7));
    }
  }
}

TEST_CASE("asymmetric-logistic recommended origin") {
  auto o = model::asym_logistic_origin(5.0, 0.9, 0.1);
  CHECK(o[0] == doctest::Approx(-0.859).epsilon(1e-3));
  CHECK(o[1] == doctest::Approx(-3.300).epsilon(1e-3));
  // a finite origin shift leaves the asymptotic slope unchanged
  auto dep = EvDependence::asymmetric_logistic(5.0, 0.9, 0.1);
  ARDensityEngine e0(CopulaModel::ev(dep), Margin::laplace(), l1_map());
  ARDensityEngine es(CopulaModel::ev(dep), Margin::laplace(), l1_map(), {o[0], o[1]});
  std::vector<double> w{0.5, 0.5};
  const double s0 = model::numeric_lambda_slope_refined(e0, w, 40.0, 70.0);
  const double ss = model::numeric_lambda_slope_refined(es, w, 40.0, 70.0);
  const double lam = model::lambda_catalog(CopulaModel::ev(dep), w).lambda;
  CHECK(s0 == doctest::Approx(lam - 1.0).epsilon(0.05));
  CHECK(ss == doctest::Approx(lam - 1.0).epsilon(0.05));
}

TEST_CASE("gamma normaliser closed form in two dimensions") {
  // sigma^d Gamma(d, mu/sigma) equals sigma (sigma + mu) exp(-mu/sigma) at d = 2
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double mu : {1.0, 4.0, 9.0}) {
      const double a = sigma * sigma * num::upper_incomplete_gamma_int(2, mu / sigma);
      const double b = sigma * (sigma + mu) * std::exp(-mu / sigma);
      CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
  }
}

TEST_CASE("asymmetric-logistic lambda: flat sections and central cusp") {
  auto dep = EvDependence::asymmetric_logistic(5.0, 0.9, 0.1);
  auto c = CopulaModel::ev(dep);
  ARDensityEngine e(c, Margin::laplace(), l1_map());
  // knots at (alpha-1)/(2alpha-1) = 4/9 and alpha/(2alpha-1) = 5/9
  for (double q : {0.30, 0.50, 0.70, -1.30, 1.40, -0.45}) {
    const auto wq = StarBoundary::lp(1.0).pseudo_trig(q);
    std::vector<double> w{wq[0], wq[1]};
    const double lam = model::lambda_catalog(c, w).lambda;
    const double slope = model::numeric_lambda_slope_refined(e, w, 40.0, 70.0);
    CHECK(std::abs(slope - (lam - 1.0)) < 0.03);
  }
  const auto li = model::lambda_catalog(c, std::vector<double>{0.7, 0.3});
  CHECK(li.lambda == doctest::Approx(1.0));  // inside the flat section
  const auto ld = model::lambda_catalog(c, std::vector<double>{0.5, 0.5});
  CHECK(ld.lambda == doctest::Approx(0.5));
}

TEST_CASE("husler-reiss: quadratic exponent coefficient matches the catalog") {
  const double alpha = 1.0;
  auto c = CopulaModel::ev(EvDependence::husler_reiss(alpha));
  ARDensityEngine e(c, Margin::laplace(), l1_map());
  for (double q : {0.75, 0.6, 1.5}) {
    const auto wq = StarBoundary::lp(1.0).pseudo_trig(q);
    std::vector<double> w{wq[0], wq[1]};
    const auto li = model::lambda_catalog(c, w);
    REQUIRE(li.profile == LambdaProfile::GaussianType);
    // three-point quadratic fit of -log delta over r in {40, 60, 80}
    const double l1v = -e.delta(40.0, w).log_value;
    const double l2v = -e.delta(60.0, w).log_value;
    const double l3v = -e.delta(80.0, w).log_value;
    const double c2 = (l3v - 2.0 * l2v + l1v) / (20.0 * 20.0);  // second difference
    CHECK(c2 == doctest::Approx(li.coeff).epsilon(0.05));
  }
  // build runs and produces the degenerate flags and the (1,1) diagonal point
  auto m = model::build_spar(e, 0.2, Provenance::Catalog, {16});
  CHECK(m.at_angle(0.5).sigma == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(!m.at_angle(0.5).degenerate);
  CHECK(m.at_angle(0.75).degenerate);
  CHECK(m.at_angle(0.75).sigma > 0.0);
  auto ls = m.limit_set();
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    if (std::abs(m.records[i].q - 0.75) < 1e-12) CHECK(ls.degenerate[i]);
  }
}

TEST_CASE("bivariate exponential: mu-dependent third-quadrant scale") {
  const double alpha = 0.5;
  auto c = CopulaModel::biv_exponential(alpha);
  ARDensityEngine e(c, Margin::laplace(), l1_map());
  std::vector<double> w{-0.5, -0.5};
  // quadratic coefficient of -log delta is alpha w1 w2
  const double l1v = -e.delta(30.0, w).log_value;
  const double l2v = -e.delta(45.0, w).log_value;
  const double l3v = -e.delta(60.0, w).log_value;
  // the second difference measures twice the quadratic coefficient,
  // i.e. exactly the mu-slope of the inverse scale
  const double second = (l3v - 2.0 * l2v + l1v) / (15.0 * 15.0);
  CHECK(second == doctest::Approx(2.0 * alpha * 0.25).epsilon(0.02));
  const auto li = model::lambda_catalog(c, w);
  CHECK(li.profile == LambdaProfile::MuDependent);
  CHECK(li.mu_slope == doctest::Approx(2.0 * alpha * 0.25));
  // first-quadrant growth exponent beta = 1 in the second/fourth quadrants
  const auto l2q = model::lambda_catalog(c, std::vector<double>{-0.3, 0.7});
  CHECK(l2q.lambda == doctest::Approx(1.0));
  CHECK(l2q.beta == doctest::Approx(1.0));
  ARDensityEngine e2(c, Margin::laplace(), l1_map());
  std::vector<double> wq2{-0.3, 0.7};
  CHECK(std::abs(model::numeric_lambda_slope_refined(e2, wq2, 40.0, 70.0)) < 0.03);
  // build produces mu-dependent sigma in the third quadrant
  auto m = model::build_spar(e, 0.2, Provenance::Catalog, {16});
  const auto& rec = m.at_angle(-1.5);
  CHECK(rec.valid);
  CHECK(rec.sigma == doctest::Approx(1.0 / (1.0 + 0.25 * rec.mu)).epsilon(1e-10));
  CHECK(rec.degenerate);
}
