#pragma once

// Linear stability of fixed points.
//
// At an interior fixed point the characteristic polynomial of the Jacobian
// is lambda^2 - p(u) lambda + q(u) with
//   p(u) = 1 + (1-u) A(u),
//   q(u) =     (1-u) A(u) + u (1-u) (beta f'(u) - theta),
// where A(u) = (1+2cu)/(1+cu) for h=1 and 2cu^2/(1+cu^2) for h=2, and f'
// is the derivative of the intake. Root moduli are decided by the sign
// tests on F(1), F(-1) and the constant coefficient (classify_roots); note
// the sign convention bridge: classify_roots takes F(lambda) =
// lambda^2 + B lambda + C, so B = -p and C = q.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "plankton/fixed_points.hpp"
#include "plankton/model.hpp"
#include "plankton/params.hpp"

namespace plankton {

// tolerance band around the defining equalities of the non-hyperbolic
// cases; exact-equality semantics are unattainable in floating point
inline constexpr double kClassTol = 1e-9;

// residual bound below which a state is accepted as a fixed point
inline constexpr double kFixedPointResidualTol = 1e-8;

struct CharCoeffs {
  double p = 0.0;  // trace of the Jacobian
  double q = 0.0;  // determinant of the Jacobian
};

enum class StabilityClass { Attractive, Repelling, Saddle, NonHyperbolic };

inline std::string to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Attractive: return "Attractive";
    case StabilityClass::Repelling: return "Repelling";
    case StabilityClass::Saddle: return "Saddle";
    case StabilityClass::NonHyperbolic: return "NonHyperbolic";
  }
  return "?";
}

// case labels for the quadratic root-modulus tests
enum class RootCase { i1, i2, i3, i4, i5, i6, ii, iii1, iii2 };

inline std::string to_string(RootCase c) {
  switch (c) {
    case RootCase::i1: return "i.1";
    case RootCase::i2: return "i.2";
    case RootCase::i3: return "i.3";
    case RootCase::i4: return "i.4";
    case RootCase::i5: return "i.5";
    case RootCase::i6: return "i.6";
    case RootCase::ii: return "ii";
    case RootCase::iii1: return "iii.1";
    case RootCase::iii2: return "iii.2";
  }
  return "?";
}

enum class ModulusFact { Inside, OnCircle, Outside };

struct RootClassification {
  RootCase case_id = RootCase::i1;
  ModulusFact m1 = ModulusFact::Inside;  // |lambda_1| vs 1
  ModulusFact m2 = ModulusFact::Inside;  // |lambda_2| vs 1
  StabilityClass stability = StabilityClass::Attractive;
};

namespace detail {

inline StabilityClass class_from_moduli(ModulusFact a, ModulusFact b) {
  if (a == ModulusFact::OnCircle || b == ModulusFact::OnCircle)
    return StabilityClass::NonHyperbolic;
  if (a == ModulusFact::Inside && b == ModulusFact::Inside)
    return StabilityClass::Attractive;
  if (a == ModulusFact::Outside && b == ModulusFact::Outside)
    return StabilityClass::Repelling;
  return StabilityClass::Saddle;
}

inline ModulusFact fact_vs_one(double magnitude, double tol) {
  if (std::abs(magnitude - 1.0) <= tol) return ModulusFact::OnCircle;
  return magnitude < 1.0 ? ModulusFact::Inside : ModulusFact::Outside;
}

}  // namespace detail

// Root-modulus classification of F(lambda) = lambda^2 + B lambda + C from
// the signs of F(1), F(-1) and C. The two F values are accepted as inputs
// and checked against B, C for consistency.
inline RootClassification classify_roots(double f_of_1, double f_of_minus1,
                                         double b, double c) {
  if (std::abs(f_of_1 - (1.0 + b + c)) > kAnalyticTol ||
      std::abs(f_of_minus1 - (1.0 - b + c)) > kAnalyticTol)
    throw std::invalid_argument(
        "classify_roots: F(1)/F(-1) inconsistent with B, C");

  const double tol = kClassTol;
  RootClassification out;
  if (f_of_1 > tol) {
    if (f_of_minus1 > tol) {
      if (c < 1.0 - tol) {
        out = {RootCase::i1, ModulusFact::Inside, ModulusFact::Inside,
               StabilityClass::Attractive};
      } else if (c > 1.0 + tol) {
        out = {RootCase::i4, ModulusFact::Outside, ModulusFact::Outside,
               StabilityClass::Repelling};
      } else {
        // C = 1 with F(+-1) > 0 forces -2 < B < 2: conjugate pair on the
        // unit circle
        out = {RootCase::i5, ModulusFact::OnCircle, ModulusFact::OnCircle,
               StabilityClass::NonHyperbolic};
      }
    } else if (f_of_minus1 < -tol) {
      out = {RootCase::i3, ModulusFact::Inside, ModulusFact::Outside,
             StabilityClass::Saddle};
    } else {
      // lambda = -1 is a root; the other root is -C
      const RootCase id =
          std::abs(b - 2.0) <= tol ? RootCase::i6 : RootCase::i2;
      out = {id, ModulusFact::OnCircle,
             detail::fact_vs_one(std::abs(c), tol),
             StabilityClass::NonHyperbolic};
    }
  } else if (f_of_1 < -tol) {
    // one root lies in (1, inf)
    if (f_of_minus1 < -tol) {
      out = {RootCase::iii1, ModulusFact::Outside, ModulusFact::Outside,
             StabilityClass::Repelling};
    } else if (f_of_minus1 > tol) {
      out = {RootCase::iii2, ModulusFact::Outside, ModulusFact::Inside,
             StabilityClass::Saddle};
    } else {
      out = {RootCase::iii1, ModulusFact::Outside, ModulusFact::OnCircle,
             StabilityClass::NonHyperbolic};
    }
  } else {
    // lambda = 1 is a root; the other root is C
    out = {RootCase::ii, ModulusFact::OnCircle,
           detail::fact_vs_one(std::abs(c), tol),
           StabilityClass::NonHyperbolic};
  }
  return out;
}

// Characteristic coefficients (p, q) = (trace, det) at an interior fixed
// point, as a function of u alone (v eliminated via the fixed-point
// relation).
inline CharCoeffs char_coeffs_at(double u, const Params& p) {
  const double uh = detail::pow_h(u, p.h);
  const double denom = 1.0 + p.c * uh;
  const double a =
      p.h == 1 ? (1.0 + 2.0 * p.c * u) / denom : 2.0 * p.c * u * u / denom;
  const double dfu = p.h * (p.h == 1 ? 1.0 : u) / (denom * denom);
  CharCoeffs out;
  out.p = 1.0 + (1.0 - u) * a;
  out.q = (1.0 - u) * a + u * (1.0 - u) * (p.beta * dfu - p.theta);
  return out;
}

inline CharCoeffs char_coeffs(const FixedPoint& fp, const Params& p) {
  if (fp.label == FixedPointLabel::E0 || fp.label == FixedPointLabel::E1)
    throw std::invalid_argument(
        "char_coeffs: interior points only; use classify_boundary for "
        "E0/E1");
  return char_coeffs_at(fp.state.u, p);
}

// Jacobian of the map at a fixed point. Refuses states that are not fixed
// within the residual tolerance.
inline Mat2 jacobian(const FixedPoint& fp, const Params& p) {
  if (dist_inf(apply_map(fp.state, p), fp.state) > kFixedPointResidualTol)
    throw std::invalid_argument("jacobian: state is not a fixed point");
  return map_jacobian(fp.state, p);
}

// eigenvalues of lambda^2 - p lambda + q
inline std::array<std::complex<double>, 2> eigenvalues(
    const CharCoeffs& cc) {
  const double disc = cc.p * cc.p - 4.0 * cc.q;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return {std::complex<double>((cc.p - s) / 2.0, 0.0),
            std::complex<double>((cc.p + s) / 2.0, 0.0)};
  }
  const double im = std::sqrt(-disc) / 2.0;
  return {std::complex<double>(cc.p / 2.0, -im),
          std::complex<double>(cc.p / 2.0, im)};
}

struct StabilityReport {
  CharCoeffs coeffs;
  std::complex<double> lambda1, lambda2;
  StabilityClass stability = StabilityClass::Attractive;
  // conjugate eigenvalue pair on the unit circle (q = 1, |p| < 2): the
  // configuration at which an invariant closed curve can be born
  bool ns_flag = false;
  // h = 2 with theta >= 1: the Eplus saddle argument is not established
  // there, so the class comes from the root tests alone
  bool outside_proved_regime = false;
  // q(u-) = 1 with p(u-) >= 2: not covered by the Eminus case table
  bool table_incomplete = false;
};

namespace detail {

inline StabilityReport report_from_coeffs(const CharCoeffs& cc) {
  StabilityReport rep;
  rep.coeffs = cc;
  const auto ev = eigenvalues(cc);
  rep.lambda1 = ev[0];
  rep.lambda2 = ev[1];
  return rep;
}

}  // namespace detail

// E0 and E1 per the boundary type tables:
//   E0: eigenvalues {2, 1-r} -> saddle for 0<r<2, repelling for r>2,
//       non-hyperbolic at r=2.
//   E1: eigenvalues {0, 1-(r+theta)+beta/(1+c)} -> attractive iff
//       beta/(1+c) < r+theta < 2+beta/(1+c), non-hyperbolic on the
//       boundary, saddle otherwise.
inline StabilityReport classify_boundary(const FixedPoint& fp,
                                         const Params& p) {
  p.validate();
  if (fp.label == FixedPointLabel::E0) {
    auto rep = detail::report_from_coeffs(
        CharCoeffs{3.0 - p.r, 2.0 * (1.0 - p.r)});
    if (std::abs(p.r - 2.0) <= kClassTol)
      rep.stability = StabilityClass::NonHyperbolic;
    else if (p.r < 2.0)
      rep.stability = StabilityClass::Saddle;
    else
      rep.stability = StabilityClass::Repelling;
    return rep;
  }
  if (fp.label == FixedPointLabel::E1) {
    const double s = p.r + p.theta;
    const double lo = p.beta / (1.0 + p.c);
    const double hi = 2.0 + lo;
    auto rep =
        detail::report_from_coeffs(CharCoeffs{1.0 - s + lo, 0.0});
    if (std::abs(s - lo) <= kClassTol || std::abs(s - hi) <= kClassTol)
      rep.stability = StabilityClass::NonHyperbolic;
    else if (lo < s && s < hi)
      rep.stability = StabilityClass::Attractive;
    else
      rep.stability = StabilityClass::Saddle;
    return rep;
  }
  throw std::invalid_argument("classify_boundary: expects E0 or E1");
}

// Interior classification. For Eminus the class is the q-trichotomy
// (attractive below 1, repelling above, non-hyperbolic on the band); this
// agrees with the root tests because F(1) > 0 and F(-1) > 0 hold at every
// Eminus. Eplus goes through the root tests, which reduce to the sign of
// F(-1) since F(1) < 0 there.
inline StabilityReport classify_interior(const FixedPoint& fp,
                                         const Params& p) {
  p.validate();
  if (fp.label != FixedPointLabel::Eminus &&
      fp.label != FixedPointLabel::Eplus)
    throw std::invalid_argument("classify_interior: expects Eminus/Eplus");
  if (dist_inf(apply_map(fp.state, p), fp.state) > kFixedPointResidualTol)
    throw std::invalid_argument(
        "classify_interior: state is not a fixed point of these "
        "parameters");

  const CharCoeffs cc = char_coeffs_at(fp.state.u, p);
  auto rep = detail::report_from_coeffs(cc);
  rep.ns_flag = std::abs(cc.q - 1.0) <= kClassTol && cc.p > -2.0 &&
                cc.p < 2.0;

  if (fp.label == FixedPointLabel::Eminus) {
    if (std::abs(cc.q - 1.0) <= kClassTol) {
      rep.stability = StabilityClass::NonHyperbolic;
      rep.table_incomplete = cc.p >= 2.0;
    } else if (cc.q < 1.0) {
      rep.stability = StabilityClass::Attractive;
    } else {
      rep.stability = StabilityClass::Repelling;
    }
    return rep;
  }

  const auto rc =
      classify_roots(1.0 - cc.p + cc.q, 1.0 + cc.p + cc.q, -cc.p, cc.q);
  rep.stability = rc.stability;
  rep.outside_proved_regime = p.h == 2 && p.theta >= 1.0;
  return rep;
}

inline StabilityReport classify_fixed_point(const FixedPoint& fp,
                                            const Params& p) {
  if (fp.label == FixedPointLabel::E0 || fp.label == FixedPointLabel::E1)
    return classify_boundary(fp, p);
  return classify_interior(fp, p);
}

}  // namespace plankton
