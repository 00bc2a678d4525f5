#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace spar::num {

// Bracketed root finding: Illinois-type regula falsi with a periodic
// bisection safeguard. Requires f(a) and f(b) of opposite sign.
template <class F>
double find_root(F&& f, double a, double b, double xtol = 1e-12, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw std::invalid_argument("find_root: root not bracketed");
  int side = 0;
  double width = std::abs(b - a);
  for (int i = 0; i < max_iter; ++i) {
    if (std::abs(b - a) < xtol) return 0.5 * (a + b);
    double x = (fb * a - fa * b) / (fb - fa);
    if (i % 8 == 7) {
      // force a bisection when the bracket is not collapsing
      if (std::abs(b - a) > 0.25 * width) x = 0.5 * (a + b);
      width = std::abs(b - a);
    }
    const double lo = std::min(a, b), hi = std::max(a, b);
    if (!(x > lo && x < hi)) x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
  }
  return 0.5 * (a + b);
}

// Plain bisection to an absolute x tolerance.
template <class F>
double bisect(F&& f, double a, double b, double xtol = 1e-10, int max_iter = 200) {
  double fa = f(a);
  if (fa == 0.0) return a;
  double fb = f(b);
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw std::invalid_argument("bisect: root not bracketed");
  for (int i = 0; i < max_iter && std::abs(b - a) > xtol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa > 0) != (fm > 0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

// Expand a bracket geometrically until the sign changes.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double a, double b, int max_iter = 200) {
  double fa = f(a), fb = f(b);
  for (int i = 0; i < max_iter; ++i) {
    if ((fa > 0) != (fb > 0)) return {a, b};
    const double w = b - a;
    if (std::abs(fa) < std::abs(fb)) {
      a -= w;
      fa = f(a);
    } else {
      b += w;
      fb = f(b);
    }
  }
  throw std::runtime_error("expand_bracket: no sign change found");
}

}  // namespace spar::num
