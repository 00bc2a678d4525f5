#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "spar/geometry/polar_map.hpp"
#include "spar/geometry/star_boundary.hpp"

using namespace spar;
using geometry::StarBoundary;

namespace {
constexpr double kPi = spar::num::pi;

std::vector<double> vec2(double x, double y) { return {x, y}; }
}  // namespace

TEST_CASE("gauge closed forms") {
  auto l1 = StarBoundary::lp(1.0);
  auto l2 = StarBoundary::lp(2.0);
  auto lhalf = StarBoundary::lp(0.5);
  CHECK(l1.gauge(3.0, 4.0) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(l2.gauge(3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(lhalf.gauge(1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(StarBoundary::lp_inf().gauge(3.0, -4.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(l1.gauge(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(StarBoundary::lp(-1.0), std::invalid_argument);
}

TEST_CASE("gauge positive homogeneity across kinds") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<StarBoundary> bs;
  bs.push_back(StarBoundary::lp(1.0));
  bs.push_back(StarBoundary::lp(1.7));
  bs.push_back(StarBoundary::lp(3.0));
  bs.push_back(StarBoundary::lp(0.5));
  bs.push_back(StarBoundary::elliptical(0.6));
  bs.push_back(StarBoundary::tabulated({{1, 0}, {0.8, 0.9}, {-0.7, 0.75}, {-1.1, -0.2}, {0.1, -1.3}}));
  for (const auto& b : bs) {
    for (int i = 0; i < 50; ++i) {
      double x = unif(rng), y = unif(rng);
      if (x == 0 && y == 0) continue;
      const double g = b.gauge(x, y);
      for (double a : {0.5, 2.0, 10.0}) {
        CHECK(b.gauge(a * x, a * y) == doctest::Approx(a * g).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("lp subadditivity on sampled triples (p >= 1)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    auto b = StarBoundary::lp(p);
    for (int i = 0; i < 200; ++i) {
      const double x1 = unif(rng), y1 = unif(rng), x2 = unif(rng), y2 = unif(rng);
      if ((x1 == 0 && y1 == 0) || (x2 == 0 && y2 == 0)) continue;
      CHECK(b.gauge(x1 + x2, y1 + y2) <= b.gauge(x1, y1) + b.gauge(x2, y2) + 1e-12);
    }
  }
}

TEST_CASE("circumference and arc length") {
  CHECK(StarBoundary::lp(1.0).circumference() == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(StarBoundary::lp(2.0).circumference() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(StarBoundary::lp_inf().circumference() == doctest::Approx(8.0).epsilon(1e-12));
  auto l2 = StarBoundary::lp(2.0);
  CHECK(l2.arc_length({1, 0}, {0, 1}) == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(l2.arc_length({2, 0}, {0, 1}), std::domain_error);

  // additivity for ordered boundary points
  auto b = StarBoundary::lp(1.5);
  auto pa = b.pseudo_trig(0.3);
  auto pb = b.pseudo_trig(1.1);
  auto pc = b.pseudo_trig(-1.7);  // further along anticlockwise after wrap
  const double ab = b.arc_length(pa, pb);
  const double bc = b.arc_length(pb, pc);
  const double ac = b.arc_length(pa, pc);
  CHECK(ab + bc == doctest::Approx(ac).epsilon(1e-9));
}

TEST_CASE("pseudo-angle closed forms and quadrants") {
  auto l1 = StarBoundary::lp(1.0);
  auto l2 = StarBoundary::lp(2.0);
  CHECK(l1.pseudo_angle(0.25, 0.75) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(l1.pseudo_angle(-1.0, -1.0) == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(l2.pseudo_angle(0.0, -3.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(l1.pseudo_angle(-2.0, 0.0) == doctest::Approx(2.0));  // epsilon(0) = +1 branch

  // quadrant interpretation for L^p
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    auto b = StarBoundary::lp(p);
    CHECK(b.pseudo_angle(0.5, 0.8) > 0.0);
    CHECK(b.pseudo_angle(0.5, 0.8) < 1.0);
    CHECK(b.pseudo_angle(-0.5, 0.8) > 1.0);
    CHECK(b.pseudo_angle(-0.5, 0.8) < 2.0);
    CHECK(b.pseudo_angle(-0.5, -0.8) > -2.0);
    CHECK(b.pseudo_angle(-0.5, -0.8) < -1.0);
    CHECK(b.pseudo_angle(0.5, -0.8) > -1.0);
    CHECK(b.pseudo_angle(0.5, -0.8) < 0.0);
  }
}

TEST_CASE("pseudo-trig closed forms and consistency") {
  auto l1 = StarBoundary::lp(1.0);
  auto l2 = StarBoundary::lp(2.0);
  auto p = l1.pseudo_trig(0.5);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-14));
  p = l2.pseudo_trig(1.0);
  CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-14));
  p = l1.pseudo_trig(-1.5);
  CHECK(p[0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(-0.5).epsilon(1e-14));

  // gauge(pseudo_trig(q)) = 1 for 200 angles per boundary
  std::vector<StarBoundary> bs;
  bs.push_back(StarBoundary::lp(1.0));
  bs.push_back(StarBoundary::lp(1.5));
  bs.push_back(StarBoundary::lp(4.0));
  bs.push_back(StarBoundary::lp(0.5));
  bs.push_back(StarBoundary::lp_inf());
  bs.push_back(StarBoundary::elliptical(-0.4));
  bs.push_back(StarBoundary::tabulated({{1, 0}, {0.8, 0.9}, {-0.7, 0.75}, {-1.1, -0.2}, {0.1, -1.3}}));
  for (const auto& b : bs) {
    for (int k = 0; k < 200; ++k) {
      const double q = -2.0 + 4.0 * (k + 0.5) / 200.0;
      auto w = b.pseudo_trig(q);
      CHECK(b.gauge(w[0], w[1]) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  // round trip angle -> point -> angle
  for (const auto& b : bs) {
    for (int k = 0; k < 60; ++k) {
      const double q = -2.0 + 4.0 * (k + 0.5) / 60.0;
      auto w = b.pseudo_trig(q);
      CHECK(b.pseudo_angle(w[0], w[1]) == doctest::Approx(q).epsilon(1e-9));
    }
  }
}

TEST_CASE("lp jacobian constants and finite-difference oracle") {
  using geometry::lp_jacobian;
  CHECK(lp_jacobian(1.0, 0.123) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_jacobian(2.0, -1.4) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(lp_jacobian(std::numeric_limits<double>::infinity(), 0.2) == doctest::Approx(2.0));

  // finite-difference oracle |cos sin' - cos' sin| from pseudo_trig
  auto fd_jac = [](const StarBoundary& b, double q) {
    const double h = 1e-5;
    auto pm = b.pseudo_trig(q - h);
    auto pp = b.pseudo_trig(q + h);
    auto p0 = b.pseudo_trig(q);
    const double dc = (pp[0] - pm[0]) / (2 * h);
    const double ds = (pp[1] - pm[1]) / (2 * h);
    return std::abs(p0[0] * ds - dc * p0[1]);
  };
  auto b4 = StarBoundary::lp(4.0);
  CHECK(lp_jacobian(4.0, 0.5) == doctest::Approx(fd_jac(b4, 0.5)).epsilon(1e-6));

  // non-constancy for p in {1.5, 3}
  for (double p : {1.5, 3.0}) {
    double jmin = 1e300, jmax = -1e300;
    for (int k = 0; k < 40; ++k) {
      const double q = -2.0 + 4.0 * (k + 0.5) / 40.0;
      const double j = lp_jacobian(p, q);
      jmin = std::min(jmin, j);
      jmax = std::max(jmax, j);
    }
    CHECK(jmax - jmin > 1e-3);
  }
}

TEST_CASE("polar map round trips") {
  using geometry::PolarMap;
  PolarMap l1l1(StarBoundary::lp(1.0), StarBoundary::lp(1.0));
  auto p = l1l1.to_polar(vec2(2.0, 2.0));
  CHECK(p.r == doctest::Approx(4.0));
  CHECK(p.q == doctest::Approx(0.5));
  auto x = l1l1.from_polar(4.0, 0.5);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));

  PolarMap l2l2(StarBoundary::lp(2.0), StarBoundary::lp(2.0));
  p = l2l2.to_polar(vec2(0.0, -3.0));
  CHECK(p.r == doctest::Approx(3.0));
  CHECK(p.q == doctest::Approx(-1.0));  // theta = -pi/2 as pseudo-angle

  PolarMap mixed(StarBoundary::lp(2.0), StarBoundary::lp(1.0));
  p = mixed.to_polar(vec2(1.0, 1.0));
  CHECK(p.r == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.q == doctest::Approx(0.5));
  x = mixed.from_polar(1.0, 0.5);
  CHECK(x[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));

  // randomized round trips within 1e-12
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  PolarMap maps[] = {l1l1, l2l2, mixed,
                     PolarMap(StarBoundary::elliptical(0.5), StarBoundary::lp(1.0))};
  for (const auto& m : maps) {
    for (int i = 0; i < 250; ++i) {
      const double xx = unif(rng), yy = unif(rng);
      if (std::abs(xx) + std::abs(yy) < 1e-3) continue;
      auto pp = m.to_polar(vec2(xx, yy));
      auto back = m.from_polar(pp.r, std::span<const double>(pp.w));
      CHECK(back[0] == doctest::Approx(xx).epsilon(1e-12));
      CHECK(back[1] == doctest::Approx(yy).epsilon(1e-12));
      auto back_q = m.from_polar(pp.r, pp.q);
      CHECK(back_q[0] == doctest::Approx(xx).epsilon(1e-8));
      CHECK(back_q[1] == doctest::Approx(yy).epsilon(1e-8));
    }
  }
}

TEST_CASE("change of radial gauge") {
  using geometry::change_radius_density;
  auto l1 = StarBoundary::lp(1.0);
  auto l2 = StarBoundary::lp(2.0);
  auto f = [](double r, double) { return r * std::exp(-r); };
  // identity when gauges coincide
  CHECK(change_radius_density(f, l1, l1, 1.3, 0.25) == doctest::Approx(f(1.3, 0.25)));
  // angular density preserved: integral over r matches at several angles
  for (double q : {0.1, 0.35, 0.8}) {
    auto fb = [&](double rb) { return change_radius_density(f, l1, l2, rb, q); };
    const double ia = spar::num::integrate([&](double r) { return f(r, q); }, 0.0, 60.0);
    const double ib = spar::num::integrate(fb, 0.0, 120.0);
    CHECK(ib == doctest::Approx(ia).epsilon(1e-8));
  }
}

TEST_CASE("change of angular variable") {
  using geometry::change_angle;
  auto l1 = StarBoundary::lp(1.0);
  auto l2 = StarBoundary::lp(2.0);
  // diagonal and axis fixed points
  CHECK(change_angle(0.5, l2, l1).q == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(change_angle(1.0, l1, l2).q == doctest::Approx(1.0).epsilon(1e-12));
  // inverse composition for 100 angles
  for (int k = 0; k < 100; ++k) {
    const double q = -2.0 + 4.0 * (k + 0.5) / 100.0;
    auto f = change_angle(q, l2, l1);
    auto b = change_angle(f.q, l1, l2);
    CHECK(b.q == doctest::Approx(q).epsilon(1e-10));
    // chain rule: jacobians are reciprocal
    CHECK(f.jacobian * b.jacobian == doctest::Approx(1.0).epsilon(1e-8));
  }
  // generic-path jacobian agrees with the closed form
  auto g = change_angle(0.3, StarBoundary::lp(2.0), StarBoundary::lp(1.5));
  auto h = change_angle(g.q, StarBoundary::lp(1.5), StarBoundary::lp(2.0));
  CHECK(h.q == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("tabulated boundary star-shape validation") {
  CHECK_THROWS_AS(StarBoundary::tabulated({{1, 0}, {-1, 0.1}, {0.9, 0.4}, {0, 1}}),
                  std::invalid_argument);
  auto b = StarBoundary::tabulated({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(b.gauge(3.0, 4.0) == doctest::Approx(7.0).epsilon(1e-12));  // this is the L1 diamond
  CHECK(b.circumference() == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-12));
}
