#pragma once

// Fixed-point enumeration for the discrete maps.
//
// The boundary equilibria (0,0) and (1,0) exist for every parameter set.
// Interior fixed points have u in (0,1) solving beta = psi(u) and
// v = (1-u)(1+c u^h)/u^(h-1):
//   h = 1: a quadratic  c*theta u^2 - (beta - rc - theta) u + r = 0,
//   h = 2: a cubic      theta*c u^3 + (rc - beta) u^2 + theta u + r = 0.
// The existence count follows the shape of psi: decreasing on (0, ubar),
// increasing beyond, with psi(1) = (1+c)(r+theta).

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "plankton/model.hpp"
#include "plankton/params.hpp"

namespace plankton {

enum class FixedPointLabel { E0, E1, Eminus, Eplus };

inline std::string to_string(FixedPointLabel l) {
  switch (l) {
    case FixedPointLabel::E0: return "E0";
    case FixedPointLabel::E1: return "E1";
    case FixedPointLabel::Eminus: return "Eminus";
    case FixedPointLabel::Eplus: return "Eplus";
  }
  return "?";
}

struct FixedPoint {
  State state;
  FixedPointLabel label = FixedPointLabel::E0;
  // set when the two interior roots have collapsed into one (beta at the
  // minimum of psi)
  bool degenerate = false;
};

// tolerance for deciding the measure-zero ties beta = psi(ubar) and a root
// sitting on u = 1
inline constexpr double kExistenceTieTol = 1e-9;

enum class ExistenceRegime {
  NoInterior_UbarGE1,      // ubar >= 1, beta <= (c+1)(r+theta)
  Unique_UbarGE1,          // ubar >= 1, beta >  (c+1)(r+theta)
  NoInterior_UbarLT1,      // ubar <  1, beta <  psi(ubar)
  UniqueDegenerate_UbarLT1,  // ubar < 1, beta = psi(ubar): double root
  UniqueHighBeta_UbarLT1,  // ubar <  1, beta >= (c+1)(r+theta)
  Two_UbarLT1,             // ubar <  1, psi(ubar) < beta < (c+1)(r+theta)
};

inline std::string to_string(ExistenceRegime r) {
  switch (r) {
    case ExistenceRegime::NoInterior_UbarGE1:
      return "ubar>=1, beta<=(c+1)(r+theta): no interior fixed point";
    case ExistenceRegime::Unique_UbarGE1:
      return "ubar>=1, beta>(c+1)(r+theta): unique interior fixed point";
    case ExistenceRegime::NoInterior_UbarLT1:
      return "ubar<1, beta<psi(ubar): no interior fixed point";
    case ExistenceRegime::UniqueDegenerate_UbarLT1:
      return "ubar<1, beta=psi(ubar): unique (double) interior fixed point";
    case ExistenceRegime::UniqueHighBeta_UbarLT1:
      return "ubar<1, beta>=(c+1)(r+theta): unique interior fixed point";
    case ExistenceRegime::Two_UbarLT1:
      return "ubar<1, psi(ubar)<beta<(c+1)(r+theta): two interior fixed "
             "points";
  }
  return "?";
}

struct ExistenceVerdict {
  int count = 0;
  ExistenceRegime regime = ExistenceRegime::NoInterior_UbarGE1;
  // true when beta coincides with (c+1)(r+theta) within tolerance, i.e. the
  // excluded root u = 1 sits on the boundary
  bool root_at_unit_boundary = false;
  double ubar_value = 0.0;
  double psi_at_ubar = 0.0;
  double psi_at_one = 0.0;  // (c+1)(r+theta)
};

inline std::vector<FixedPoint> boundary_fixed_points(const Params& p) {
  p.validate();
  return {FixedPoint{State{0.0, 0.0}, FixedPointLabel::E0},
          FixedPoint{State{1.0, 0.0}, FixedPointLabel::E1}};
}

inline ExistenceVerdict existence_verdict(const Params& p) {
  p.validate();
  ExistenceVerdict out;
  out.ubar_value = ubar(p);
  out.psi_at_one = (1.0 + p.c) * (p.r + p.theta);
  out.psi_at_ubar = psi(out.ubar_value, p);
  out.root_at_unit_boundary =
      std::abs(p.beta - out.psi_at_one) <= kExistenceTieTol;
  if (out.ubar_value >= 1.0) {
    if (p.beta <= out.psi_at_one) {
      out.count = 0;
      out.regime = ExistenceRegime::NoInterior_UbarGE1;
    } else {
      out.count = 1;
      out.regime = ExistenceRegime::Unique_UbarGE1;
    }
    return out;
  }
  if (std::abs(p.beta - out.psi_at_ubar) <= kExistenceTieTol) {
    out.count = 1;
    out.regime = ExistenceRegime::UniqueDegenerate_UbarLT1;
  } else if (p.beta < out.psi_at_ubar) {
    out.count = 0;
    out.regime = ExistenceRegime::NoInterior_UbarLT1;
  } else if (p.beta >= out.psi_at_one) {
    out.count = 1;
    out.regime = ExistenceRegime::UniqueHighBeta_UbarLT1;
  } else {
    out.count = 2;
    out.regime = ExistenceRegime::Two_UbarLT1;
  }
  return out;
}

namespace detail {

// v forced by u' = u at an interior fixed point
inline double interior_v(double u, const Params& p) {
  const double uh = pow_h(u, p.h);
  return (1.0 - u) * (1.0 + p.c * uh) / (p.h == 1 ? 1.0 : u);
}

// value of the interior fixed-point polynomial (quadratic for h=1, cubic
// for h=2); its roots in (0,1) are exactly the solutions of beta = psi(u)
inline double fp_poly(double u, const Params& p) {
  if (p.h == 1)
    return p.c * p.theta * u * u - (p.beta - p.r * p.c - p.theta) * u + p.r;
  return p.theta * p.c * u * u * u + (p.r * p.c - p.beta) * u * u +
         p.theta * u + p.r;
}

inline double fp_poly_deriv(double u, const Params& p) {
  if (p.h == 1)
    return 2.0 * p.c * p.theta * u - (p.beta - p.r * p.c - p.theta);
  return 3.0 * p.theta * p.c * u * u + 2.0 * (p.r * p.c - p.beta) * u +
         p.theta;
}

// keep a candidate root if it lies in (0, 1) and is not the excluded root
// on the u = 1 boundary
inline bool keep_root(double u) { return u > 0.0 && u < 1.0 - 1e-9; }

}  // namespace detail

// All interior fixed points, sorted by ascending u and labeled Eminus then
// Eplus. A double root (beta at the minimum of psi) is returned as a single
// Eminus carrying the degenerate flag. An empty vector means none exist.
inline std::vector<FixedPoint> positive_fixed_points(const Params& p) {
  p.validate();
  const double ub = ubar(p);
  if (ub < 1.0 &&
      std::abs(p.beta - psi(ub, p)) <= kExistenceTieTol) {
    // the two roots have collapsed at ubar
    std::vector<FixedPoint> out;
    if (detail::keep_root(ub))
      out.push_back(FixedPoint{State{ub, detail::interior_v(ub, p)},
                               FixedPointLabel::Eminus, true});
    return out;
  }

  std::vector<double> roots;
  const auto f = [&p](double u) { return detail::fp_poly(u, p); };
  const auto df = [&p](double u) { return detail::fp_poly_deriv(u, p); };

  if (p.h == 1) {
    const double b = p.beta - p.r * p.c - p.theta;  // positive at any root
    const double disc = b * b - 4.0 * p.c * p.theta * p.r;
    if (disc > 0.0 && b > 0.0) {
      // larger root by the stable formula, smaller via the root product
      const double big = (b + std::sqrt(disc)) / (2.0 * p.c * p.theta);
      const double small = p.r / (p.c * p.theta) / big;
      roots = {small, big};
    }
  } else {
    // split (0,1) at the critical points of the cubic, then bisect each
    // monotone piece with a sign change
    std::vector<double> knots{0.0};
    const double a2 = 3.0 * p.theta * p.c;
    const double a1 = 2.0 * (p.r * p.c - p.beta);
    const double cd = a1 * a1 - 4.0 * a2 * p.theta;
    if (cd > 0.0) {
      const double s = std::sqrt(cd);
      for (double x : {(-a1 - s) / (2.0 * a2), (-a1 + s) / (2.0 * a2)})
        if (x > 0.0 && x < 1.0) knots.push_back(x);
    }
    knots.push_back(1.0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double fa = f(knots[i]), fb = f(knots[i + 1]);
      if (fa == 0.0 && knots[i] > 0.0) {
        roots.push_back(knots[i]);
      } else if ((fa < 0.0) != (fb < 0.0)) {
        roots.push_back(
            detail::bisect(f, knots[i], knots[i + 1], 1e-12));
      }
    }
  }

  std::vector<FixedPoint> out;
  for (double u : roots) {
    u = detail::newton_polish(f, df, u, 0.0, 1.0);
    if (!detail::keep_root(u)) continue;
    out.push_back(FixedPoint{State{u, detail::interior_v(u, p)},
                             FixedPointLabel::Eminus});
  }
  std::sort(out.begin(), out.end(), [](const FixedPoint& a,
                                       const FixedPoint& b) {
    return a.state.u < b.state.u;
  });
  if (out.size() == 2) out[1].label = FixedPointLabel::Eplus;
  return out;
}

// Roots of c*theta u^2 - (beta + c - theta - rc) u + (r - 1) = 0: the
// interval [lower, upper] on which one map step keeps v nonnegative.
// Defined for h = 1 only. For r > 1 the roots can be complex, in which
// case no u admits v' >= 0; real_roots is false and the bounds are NaN.
struct UhatBounds {
  double lower = std::numeric_limits<double>::quiet_NaN();
  double upper = std::numeric_limits<double>::quiet_NaN();
  bool real_roots = false;
};

inline UhatBounds uhat_bounds(const Params& p) {
  p.validate();
  if (p.h != 1)
    throw std::domain_error("uhat_bounds: defined for h = 1 only");
  const double b = p.beta + p.c - p.theta - p.r * p.c;
  const double disc = b * b + 4.0 * p.c * p.theta * (1.0 - p.r);
  UhatBounds out;
  if (disc < 0.0) return out;
  const double s = std::sqrt(disc);
  out.lower = (b - s) / (2.0 * p.c * p.theta);
  out.upper = (b + s) / (2.0 * p.c * p.theta);
  out.real_roots = true;
  return out;
}

}  // namespace plankton
