#pragma once

// The discrete maps
//   u' = u(2-u) - u^h v / (1 + c u^h)
//   v' = beta u^h v / (1 + c u^h) + (1-r) v - theta u v
// together with the analytic helpers that organize their fixed-point
// structure:
//   psi(u)  = (r + theta u)(1 + c u^h) / u^h   (interior fixed points solve
//             beta = psi(u))
//   ubar    = the unique positive minimizer of psi
//   phi(u)  = theta (1 + c u^2)^2 / (2u)       (h = 2 only)
// No clamping is applied anywhere: orbits are allowed to leave the positive
// quadrant so that escape to infinity can be observed.

#include <cmath>
#include <stdexcept>

#include "plankton/params.hpp"

namespace plankton {

// absolute tolerance for comparisons against analytic thresholds
inline constexpr double kAnalyticTol = 1e-12;

namespace detail {

inline double pow_h(double u, int h) { return h == 1 ? u : u * u; }

// Plain bisection on [lo, hi]; assumes f(lo) and f(hi) straddle zero.
// Refines to |hi - lo| <= xtol.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// A few guarded Newton steps to polish a bisection root.
template <class F, class DF>
double newton_polish(F&& f, DF&& df, double x, double lo, double hi) {
  for (int it = 0; it < 6; ++it) {
    const double d = df(x);
    if (d == 0.0) break;
    const double step = f(x) / d;
    const double next = x - step;
    if (!(next > lo && next < hi)) break;
    x = next;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace detail

// Holling intake f(u) = u^h / (1 + c u^h).
inline double functional_response(double u, const Params& p) {
  const double uh = detail::pow_h(u, p.h);
  const double denom = 1.0 + p.c * uh;
  if (denom == 0.0)
    throw std::domain_error("functional_response: pole at 1 + c*u^h = 0");
  return uh / denom;
}

// One application of the map. The result may be negative or arbitrarily
// large; a non-finite result is the overflow signal consumed by the
// trajectory code.
inline State apply_map(const State& s, const Params& p) {
  if (!is_finite(s))
    throw std::invalid_argument("apply_map: state must be finite");
  const double fu = functional_response(s.u, p);
  return State{s.u * (2.0 - s.u) - fu * s.v,
               p.beta * fu * s.v + (1.0 - p.r) * s.v - p.theta * s.u * s.v};
}

// psi(u) = (r + theta u)(1 + c u^h) / u^h for u > 0.
// psi(1) = (1 + c)(r + theta) exactly; psi blows up as u -> 0+.
inline double psi(double u, const Params& p) {
  if (!(u > 0.0)) throw std::domain_error("psi: requires u > 0");
  const double uh = detail::pow_h(u, p.h);
  return (p.r + p.theta * u) * (1.0 + p.c * uh) / uh;
}

// The unique positive minimizer of psi.
//   h = 1: closed form sqrt(r / (c theta)).
//   h = 2: the single positive root of theta*c x^3 - theta x - 2r = 0,
//          bracketed geometrically and bisected to 1e-12, then polished.
inline double ubar(const Params& p) {
  if (p.h == 1) return std::sqrt(p.r / (p.c * p.theta));
  const auto g = [&p](double x) {
    return p.theta * p.c * x * x * x - p.theta * x - 2.0 * p.r;
  };
  const auto dg = [&p](double x) {
    return 3.0 * p.theta * p.c * x * x - p.theta;
  };
  double lo = 0.0, hi = 1.0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::domain_error("ubar: bracket growth failed");
  }
  const double root = detail::bisect(g, lo, hi, 1e-12);
  return detail::newton_polish(g, dg, root, lo, hi);
}

// phi(u) = theta (1 + c u^2)^2 / (2u), defined for the h = 2 map only.
// psi and phi cross exactly once on u > 0, at ubar.
inline double phi(double u, const Params& p) {
  if (p.h != 2) throw std::domain_error("phi: defined for h = 2 only");
  if (!(u > 0.0)) throw std::domain_error("phi: requires u > 0");
  const double w = 1.0 + p.c * u * u;
  return p.theta * w * w / (2.0 * u);
}

// 2x2 real matrix, row major.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
};

// Jacobian of the map at an arbitrary state, from the analytic partial
// derivatives (d/du of the intake is h u^(h-1) / (1 + c u^h)^2).
inline Mat2 map_jacobian(const State& s, const Params& p) {
  const double uh = detail::pow_h(s.u, p.h);
  const double denom = 1.0 + p.c * uh;
  const double fu = uh / denom;
  const double dfu =
      p.h * (p.h == 1 ? 1.0 : s.u) / (denom * denom);
  Mat2 j;
  j.a11 = 2.0 - 2.0 * s.u - s.v * dfu;
  j.a12 = -fu;
  j.a21 = s.v * (p.beta * dfu - p.theta);
  j.a22 = p.beta * fu + (1.0 - p.r) - p.theta * s.u;
  return j;
}

}  // namespace plankton
