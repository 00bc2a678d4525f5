#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace spar::num {

// Gauss-Kronrod 7-15 pair on [-1,1].
namespace gk15 {
inline constexpr double nodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};
inline constexpr double wk[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};
inline constexpr double wg[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};
}  // namespace gk15

struct GkResult {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
GkResult gk15_panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[0] = f(c);
  double kron = gk15::wk[0] * fv[0];
  double gauss = gk15::wg[0] * fv[0];
  for (int i = 1; i < 8; ++i) {
    const double dx = h * gk15::nodes[i];
    fv[2 * i - 1] = f(c - dx);
    fv[2 * i] = f(c + dx);
    const double fs = fv[2 * i - 1] + fv[2 * i];
    kron += gk15::wk[i] * fs;
    if (i % 2 == 0) gauss += gk15::wg[i / 2] * fs;
  }
  // QUADPACK-style error estimate: |K - G| sharpened against the scale of
  // the variation of f over the panel
  const double mean = kron * 0.5;
  double resasc = gk15::wk[0] * std::abs(fv[0] - mean);
  for (int i = 1; i < 8; ++i)
    resasc += gk15::wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  resasc *= std::abs(h);
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);
  if (resasc > 0.0 && err > 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {kron, err + 1e-300};
}

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = 2000;
};

// Globally adaptive bisection on a finite interval.
template <class F>
double integrate(F&& f, double a, double b, AdaptiveOptions opt = {}) {
  if (a == b) return 0.0;
  struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  std::priority_queue<Panel> q;
  GkResult r0 = gk15_panel(f, a, b);
  q.push({a, b, r0.value, r0.error});
  double total = r0.value, toterr = r0.error;
  int panels = 1;
  while (panels < opt.max_panels) {
    if (toterr <= opt.abs_tol || toterr <= opt.rel_tol * std::abs(total)) break;
    Panel p = q.top();
    q.pop();
    const double m = 0.5 * (p.a + p.b);
    if (m == p.a || m == p.b) continue;  // cannot refine further
    GkResult rl = gk15_panel(f, p.a, m);
    GkResult rr = gk15_panel(f, m, p.b);
    total += rl.value + rr.value - p.value;
    toterr += rl.error + rr.error - p.error;
    q.push({p.a, m, rl.value, rl.error});
    q.push({m, p.b, rr.value, rr.error});
    ++panels;
  }
  return total;
}

enum class TailKind { Exponential, Power, Finite };

struct TailIntegral {
  double value = 0.0;
  bool divergent = false;
  bool converged = true;
};

// Integral of f over [a, infinity) for integrands with an eventually
// exponentially-decaying envelope. Dyadic segments; flags divergence when
// successive doublings keep contributing (three in a row above 10x the
// tolerance, mirroring the documented cutoff rule).
template <class F>
TailIntegral integrate_exp_tail(F&& f, double a, AdaptiveOptions opt = {}) {
  TailIntegral out;
  double lo = a;
  double len = std::max(1.0, std::abs(a));
  double total = 0.0;
  int loud_segments = 0;
  int quiet = 0;
  const int max_seg = 64;
  for (int k = 0; k < max_seg; ++k) {
    const double hi = lo + len;
    const double seg = integrate(f, lo, hi, opt);
    total += seg;
    const double scale = std::max(std::abs(total), opt.abs_tol);
    if (std::abs(seg) <= 10.0 * opt.rel_tol * scale) {
      if (++quiet >= 2) {
        out.value = total;
        return out;
      }
      loud_segments = 0;
    } else {
      quiet = 0;
      if (k >= 8 && ++loud_segments >= 3 && std::abs(seg) > 0.25 * std::abs(total)) {
        out.value = total;
        out.divergent = true;
        return out;
      }
    }
    lo = hi;
    len *= 2.0;
  }
  out.value = total;
  out.converged = false;
  out.divergent = true;
  return out;
}

// Integral of f over [a, infinity) for power-law tails, via the s = 1/r
// substitution. Divergence (local exponent >= -1 at infinity) is probed on
// log-spaced samples before integrating.
template <class F>
TailIntegral integrate_power_tail(F&& f, double a, AdaptiveOptions opt = {}) {
  TailIntegral out;
  const double a0 = std::max(a, 1e-300);
  // probe the tail exponent d log f / d log r
  double r1 = std::max(4.0 * a0, 1e4), growing = 0;
  double prev = std::abs(f(r1));
  for (int k = 0; k < 3; ++k) {
    const double r2 = r1 * 8.0;
    const double cur = std::abs(f(r2));
    if (prev > 0 && cur > 0) {
      const double expo = std::log(cur / prev) / std::log(8.0);
      if (expo >= -1.0 - 1e-3) ++growing;
    } else if (cur == 0 && prev == 0) {
      // identically zero tail: nothing to flag
    }
    prev = cur;
    r1 = r2;
  }
  if (growing >= 3) {
    out.divergent = true;
    // still report the truncated value up to the probe start
    out.value = integrate(f, a, std::max(4.0 * a0, 1e4), opt);
    return out;
  }
  auto g = [&](double s) {
    const double r = 1.0 / s;
    return f(r) * r * r;
  };
  const double pivot = std::max(4.0 * a0, 100.0);
  out.value = integrate(f, a, pivot, opt) + integrate(g, 1e-14, 1.0 / pivot, opt);
  return out;
}

}  // namespace spar::num
