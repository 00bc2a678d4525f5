// Frozen reference values computed with an independent stack (SciPy
// quadrature over the same closed-form densities, survivor-based quantiles).
#include <cmath>
#include <vector>

#include "doctest.h"
#include "spar/ardensity/engine.hpp"

using namespace spar;
using ardensity::ARDensityEngine;
using copulas::CopulaModel;
using geometry::PolarMap;
using geometry::StarBoundary;
using margins::Margin;

namespace {
PolarMap l1_map() { return PolarMap(StarBoundary::lp(1.0), StarBoundary::lp(1.0)); }

struct QV {
  double q;
  double expect;
};
}  // namespace

TEST_CASE("golden angular densities on laplace margins") {
  ARDensityEngine g(CopulaModel::gaussian(0.6), Margin::laplace(), l1_map());
  for (const QV& t : std::vector<QV>{{0.2, 0.32204833315815},
                                     {0.5, 0.48024567042272},
                                     {0.9, 0.24724044018495},
                                     {-0.6, 0.13517842283726},
                                     {1.4, 0.13517842283726},
                                     {-1.5, 0.48024567042272}}) {
    CHECK(g.angular_density(t.q).value == doctest::Approx(t.expect).epsilon(1e-9));
  }
  ARDensityEngine te(CopulaModel::student_t(0.6, 2.0), Margin::laplace(), l1_map());
  for (const QV& t : std::vector<QV>{{0.25, 0.29673515559858},
                                     {0.5, 0.71923796588846},
                                     {1.75, 0.14482926995436},
                                     {-1.1, 0.18647170156525}}) {
    CHECK(te.angular_density(t.q).value == doctest::Approx(t.expect).epsilon(1e-8));
  }
  ARDensityEngine j(CopulaModel::joe(2.5), Margin::laplace(), l1_map());
  for (const QV& t : std::vector<QV>{{0.3, 0.32748484035401},
                                     {0.5, 1.0209254807876},
                                     {-0.8, 0.16936945697732}}) {
    CHECK(j.angular_density(t.q).value == doctest::Approx(t.expect).epsilon(1e-9));
  }
}

TEST_CASE("golden conditional quantiles on laplace margins") {
  ARDensityEngine g(CopulaModel::gaussian(0.6), Margin::laplace(), l1_map());
  CHECK(g.conditional_quantile(0.5, 0.5) == doctest::Approx(2.259099475).epsilon(1e-7));
  CHECK(g.conditional_quantile(0.05, 0.5) == doctest::Approx(6.76173028909).epsilon(1e-7));
  CHECK(g.conditional_quantile(0.005, 0.5) == doctest::Approx(10.8442658479).epsilon(1e-7));
  ARDensityEngine te(CopulaModel::student_t(0.6, 2.0), Margin::laplace(), l1_map());
  CHECK(te.conditional_quantile(0.5, -1.5) == doctest::Approx(2.66430368494).epsilon(1e-7));
  CHECK(te.conditional_quantile(0.05, -1.5) == doctest::Approx(8.66410483226).epsilon(1e-7));
}

TEST_CASE("golden joint polar densities, frank copula") {
  ARDensityEngine f(CopulaModel::frank(10.0), Margin::laplace(), l1_map());
  CHECK(f.joint_polar_density(3.0, 0.5).value ==
        doctest::Approx(0.133537330580639).epsilon(1e-12));
  CHECK(f.joint_polar_density(7.0, 0.25).value ==
        doctest::Approx(0.00672070824686781).epsilon(1e-12));
  CHECK(f.joint_polar_density(2.0, -1.2).value ==
        doctest::Approx(0.0577810605371353).epsilon(1e-12));
}
