#pragma once

// Invariant sets, their membership predicates, the h = 1 parameter-class
// taxonomy, and randomized one-step invariance checks.
//
// h = 1 sets:
//   M1 = {0<=u<=2, v=0}            M2 = {u=0, v>=0}
//   M3 = {0<=u<=1, 0<=v<=2}        M4 = {0<=u<=1, 0<=v<=(2-u)(1+cu)}
//   S1 = {0<u<=1, 0<=v<=(1-u)(1+cu)}
//   S2 = {0<u<=1, (1-u)(1+cu)<v<=2}
//   S3 = {0<u<=1, 2<v<=(2-u)(1+cu)}
// h = 2 sets:
//   N  = {0<=u<=1, 0<=v<=(2-u)(1+cu^2)/u}   (at u=0 the bound is +inf,
//                                            so every v>=0 is a member)
//   N1 = {0<u<1, 0<v<=(1-u)(1+cu^2)/u}
//   N2 = {0<u<u_-, (1-u)(1+cu^2)/u<=v<=(2-u)(1+cu^2)/u}

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "plankton/fixed_points.hpp"
#include "plankton/model.hpp"
#include "plankton/params.hpp"
#include "plankton/stability.hpp"

namespace plankton {

enum class RegionId { M1, M2, M3, M4, S1, S2, S3, N, N1, N2 };

inline std::string to_string(RegionId r) {
  switch (r) {
    case RegionId::M1: return "M1";
    case RegionId::M2: return "M2";
    case RegionId::M3: return "M3";
    case RegionId::M4: return "M4";
    case RegionId::S1: return "S1";
    case RegionId::S2: return "S2";
    case RegionId::S3: return "S3";
    case RegionId::N: return "N";
    case RegionId::N1: return "N1";
    case RegionId::N2: return "N2";
  }
  return "?";
}

namespace detail {

inline bool is_n_family(RegionId r) {
  return r == RegionId::N || r == RegionId::N1 || r == RegionId::N2;
}

inline void check_region_pairing(RegionId r, const Params& p) {
  p.validate();
  if (is_n_family(r) && p.h != 2)
    throw std::domain_error("region " + to_string(r) + " requires h = 2");
  if (!is_n_family(r) && p.h != 1)
    throw std::domain_error("region " + to_string(r) + " requires h = 1");
}

// parabola bounds used by the h=1 sets
inline double low_parabola(double u, double c) {
  return (1.0 - u) * (1.0 + c * u);
}
inline double high_parabola(double u, double c) {
  return (2.0 - u) * (1.0 + c * u);
}
// hyperbola-like bounds used by the h=2 sets
inline double low_curve2(double u, double c) {
  return (1.0 - u) * (1.0 + c * u * u) / u;
}
inline double high_curve2(double u, double c) {
  return (2.0 - u) * (1.0 + c * u * u) / u;
}

inline double eminus_u(const Params& p) {
  const auto fps = positive_fixed_points(p);
  if (fps.empty())
    throw std::domain_error(
        "region N2 is undefined without an interior fixed point");
  return fps.front().state.u;
}

}  // namespace detail

// Membership with boundary points included. Throws on a region/h mismatch.
inline bool membership(const State& s, RegionId region, const Params& p) {
  detail::check_region_pairing(region, p);
  const double u = s.u, v = s.v;
  switch (region) {
    case RegionId::M1:
      return u >= 0.0 && u <= 2.0 && v == 0.0;
    case RegionId::M2:
      return u == 0.0 && v >= 0.0;
    case RegionId::M3:
      return u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 2.0;
    case RegionId::M4:
      return u >= 0.0 && u <= 1.0 && v >= 0.0 &&
             v <= detail::high_parabola(u, p.c);
    case RegionId::S1:
      return u > 0.0 && u <= 1.0 && v >= 0.0 &&
             v <= detail::low_parabola(u, p.c);
    case RegionId::S2:
      return u > 0.0 && u <= 1.0 && v > detail::low_parabola(u, p.c) &&
             v <= 2.0;
    case RegionId::S3:
      return u > 0.0 && u <= 1.0 && v > 2.0 &&
             v <= detail::high_parabola(u, p.c);
    case RegionId::N:
      if (u < 0.0 || u > 1.0 || v < 0.0) return false;
      return u == 0.0 || v <= detail::high_curve2(u, p.c);
    case RegionId::N1:
      return u > 0.0 && u < 1.0 && v > 0.0 &&
             v <= detail::low_curve2(u, p.c);
    case RegionId::N2: {
      const double um = detail::eminus_u(p);
      return u > 0.0 && u < um && v >= detail::low_curve2(u, p.c) &&
             v <= detail::high_curve2(u, p.c);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parameter classes A-D (h = 1): where one map step keeps v nonnegative.
// The classes are signatures of the uhat interval:
//   A: uhat- < 0,   uhat+ > 1       B: 0 < uhat- < 1, uhat+ > 1
//   C: uhat- <= 0,  uhat+ >= 2      D: uhat- < 0,     1 < uhat+ < 2
// Subclasses (a1)-(d8) are explicit inequality systems on (theta, r, beta,
// c). They overlap; all satisfied subclasses are reported.
// ---------------------------------------------------------------------------

enum class ParamClass { A, B, C, D };

inline std::string to_string(ParamClass c) {
  switch (c) {
    case ParamClass::A: return "A";
    case ParamClass::B: return "B";
    case ParamClass::C: return "C";
    case ParamClass::D: return "D";
  }
  return "?";
}

enum class Subclass {
  a1, a2, a3, b1, c1, c2, c3, d1, d2, d3, d4, d5, d6, d7, d8
};

inline std::string to_string(Subclass s) {
  static const char* names[] = {"a1", "a2", "a3", "b1", "c1", "c2", "c3",
                                "d1", "d2", "d3", "d4", "d5", "d6", "d7",
                                "d8"};
  return names[static_cast<int>(s)];
}

inline ParamClass class_of(Subclass s) {
  switch (s) {
    case Subclass::a1:
    case Subclass::a2:
    case Subclass::a3: return ParamClass::A;
    case Subclass::b1: return ParamClass::B;
    case Subclass::c1:
    case Subclass::c2:
    case Subclass::c3: return ParamClass::C;
    default: return ParamClass::D;
  }
}

struct ParameterSubclass {
  Subclass subclass;
  ParamClass param_class;
};

// All subclasses whose inequality systems the parameters satisfy (h = 1
// only). An empty result means one map step can make v negative somewhere
// on the relevant u range.
inline std::vector<ParameterSubclass> parameter_subclasses(const Params& p) {
  p.validate();
  if (p.h != 1)
    throw std::domain_error(
        "parameter_subclasses: taxonomy defined for h = 1 only");
  const double th = p.theta, r = p.r, b = p.beta, c = p.c;

  const bool a1 = th <= 1.0 && r <= 1.0 - th;
  const bool a2 = th <= 1.0 && 1.0 - th < r && r < 1.0 &&
                  b > r + th - 1.0 && c < b / (r + th - 1.0) - 1.0;
  const bool a3 = th > 1.0 && r < 1.0 && b > r + th - 1.0 &&
                  c < b / (r + th - 1.0) - 1.0;
  const bool b1 =
      r > 1.0 && b > r + th - 1.0 && c < b / (r + th - 1.0) - 1.0;
  const bool c1 = th <= 0.5 && r <= 1.0 - 2.0 * th;
  const bool c2 = th <= 0.5 && 1.0 - 2.0 * th < r && r <= 1.0 &&
                  2.0 * b > r + 2.0 * th - 1.0 &&
                  c <= b / (r + 2.0 * th - 1.0) - 0.5;
  const bool c3 = th > 0.5 && r <= 1.0 && 2.0 * b > r + 2.0 * th - 1.0 &&
                  c <= b / (r + 2.0 * th - 1.0) - 0.5;
  const bool d1 = th <= 0.5 && 1.0 - 2.0 * th < r && r <= 1.0 - th &&
                  2.0 * b <= r + 2.0 * th - 1.0;
  const bool d2 = th <= 0.5 && 1.0 - 2.0 * th < r && r <= 1.0 - th &&
                  2.0 * b > r + 2.0 * th - 1.0 &&
                  c > b / (r + 2.0 * th - 1.0) - 0.5;
  const bool d3 =
      0.5 < th && th <= 1.0 && r <= 1.0 - th && 2.0 * b <= r + 2.0 * th - 1.0;
  const bool d4 = 0.5 < th && th <= 1.0 && r <= 1.0 - th &&
                  2.0 * b > r + 2.0 * th - 1.0 &&
                  c > b / (r + 2.0 * th - 1.0) - 0.5;
  const bool d5 = th <= 1.0 && 1.0 - th < r && r < 1.0 &&
                  b > r + th - 1.0 && 2.0 * b <= r + 2.0 * th - 1.0 &&
                  c < b / (r + th - 1.0) - 1.0;
  const bool d6 = th <= 1.0 && 1.0 - th < r && r < 1.0 &&
                  2.0 * b > r + 2.0 * th - 1.0 &&
                  c > b / (r + 2.0 * th - 1.0) - 0.5 &&
                  c < b / (r + th - 1.0) - 1.0;
  const bool d7 = th > 1.0 && r < 1.0 && b > r + th - 1.0 &&
                  2.0 * b <= r + 2.0 * th - 1.0 &&
                  c < b / (r + th - 1.0) - 1.0;
  const bool d8 = th > 1.0 && r < 1.0 && 2.0 * b > r + 2.0 * th - 1.0 &&
                  c > b / (r + 2.0 * th - 1.0) - 0.5 &&
                  c < b / (r + th - 1.0) - 1.0;

  const bool flags[] = {a1, a2, a3, b1, c1, c2, c3,
                        d1, d2, d3, d4, d5, d6, d7, d8};
  std::vector<ParameterSubclass> out;
  for (int i = 0; i < 15; ++i) {
    if (flags[i]) {
      const auto s = static_cast<Subclass>(i);
      out.push_back(ParameterSubclass{s, class_of(s)});
    }
  }
  return out;
}

// Numeric check that a class signature holds for the computed uhat
// interval, with a small slack at the boundary signs.
inline bool class_signature_holds(ParamClass cls, const UhatBounds& uh,
                                  double tol = 1e-9) {
  if (!uh.real_roots) return false;
  switch (cls) {
    case ParamClass::A:
      return uh.lower < tol && uh.upper > 1.0 - tol;
    case ParamClass::B:
      return uh.lower > -tol && uh.lower < 1.0 + tol &&
             uh.upper > 1.0 - tol;
    case ParamClass::C:
      return uh.lower <= tol && uh.upper >= 2.0 - tol;
    case ParamClass::D:
      return uh.lower < tol && uh.upper > 1.0 - tol &&
             uh.upper < 2.0 + tol;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Randomized one-step invariance verification
// ---------------------------------------------------------------------------

struct InvarianceViolation {
  std::size_t sample_index;
  State source;  // sampled point inside the region
  State image;   // its image, found outside
};

struct InvarianceReport {
  RegionId region;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<InvarianceViolation> violations;  // ordered by sample index

  bool invariant_observed() const { return violations.empty(); }
};

namespace detail {

// u uniform over the region's u range, then v uniform within the
// u-dependent bound; regions with a nontrivial lower v bound use rejection
// from the bounding box. N is sampled with u >= 1e-6 to stay away from the
// pole of its v bound.
inline State sample_region(RegionId region, const Params& p,
                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double kAxisVMax = 10.0;  // sampling cap for the unbounded M2
  switch (region) {
    case RegionId::M1:
      return State{2.0 * unit(rng), 0.0};
    case RegionId::M2:
      return State{0.0, kAxisVMax * unit(rng)};
    case RegionId::M3:
      return State{unit(rng), 2.0 * unit(rng)};
    case RegionId::M4: {
      const double u = unit(rng);
      return State{u, high_parabola(u, p.c) * unit(rng)};
    }
    case RegionId::S1: {
      const double u = unit(rng);
      return State{u, low_parabola(u, p.c) * unit(rng)};
    }
    case RegionId::S2:
      for (int attempt = 0; attempt < 100000; ++attempt) {
        const double u = unit(rng);
        const double lo = low_parabola(u, p.c);
        if (lo >= 2.0) continue;
        return State{u, lo + (2.0 - lo) * unit(rng)};
      }
      throw std::domain_error("sample_region: S2 appears empty");
    case RegionId::S3:
      for (int attempt = 0; attempt < 100000; ++attempt) {
        const double u = unit(rng);
        const double hi = high_parabola(u, p.c);
        if (hi <= 2.0) continue;
        return State{u, 2.0 + (hi - 2.0) * unit(rng)};
      }
      throw std::domain_error("sample_region: S3 appears empty");
    case RegionId::N: {
      const double u = 1e-6 + (1.0 - 1e-6) * unit(rng);
      return State{u, high_curve2(u, p.c) * unit(rng)};
    }
    case RegionId::N1: {
      const double u = 1e-6 + (1.0 - 2e-6) * unit(rng);
      return State{u, low_curve2(u, p.c) * unit(rng)};
    }
    case RegionId::N2: {
      const double um = eminus_u(p);
      const double u = um * (1e-6 + (1.0 - 2e-6) * unit(rng));
      const double lo = low_curve2(u, p.c);
      const double hi = high_curve2(u, p.c);
      return State{u, lo + (hi - lo) * unit(rng)};
    }
  }
  throw std::domain_error("sample_region: unknown region");
}

}  // namespace detail

// Draws `samples` points from the region (deterministic given the seed),
// applies the map once to each, and reports every image that left the
// region. Whether an empty violation list is *expected* depends on the
// parameter hypotheses of the invariance statements; this routine only
// observes.
inline InvarianceReport verify_invariance(RegionId region, const Params& p,
                                          std::size_t samples,
                                          std::uint64_t seed) {
  detail::check_region_pairing(region, p);
  InvarianceReport rep;
  rep.region = region;
  rep.samples = samples;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const State s = detail::sample_region(region, p, rng);
    const State t = apply_map(s, p);
    if (!is_finite(t) || !membership(t, region, p))
      rep.violations.push_back(InvarianceViolation{i, s, t});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hypothesis checklists for the convergence statements, used by the CLI
// and by the property tests that assert convergence under them.
// ---------------------------------------------------------------------------

struct HypothesisItem {
  std::string name;
  bool holds = false;
};

struct ChecklistBlock {
  std::string statement;
  std::vector<HypothesisItem> items;

  bool all_hold() const {
    for (const auto& it : items)
      if (!it.holds) return false;
    return true;
  }
};

namespace detail {

// "beta below every value of psi on (0,1)": no interior fixed point by the
// existence table
inline bool no_interior_beta_bound(const Params& p) {
  const double ub = ubar(p);
  const double psi1 = (1.0 + p.c) * (p.r + p.theta);
  if (ub >= 1.0) return p.beta <= psi1;
  return p.beta <= psi(ub, p);
}

inline bool one_of_a(const Params& p) {
  for (const auto& m : parameter_subclasses(p))
    if (m.param_class == ParamClass::A) return true;
  return false;
}

inline bool has_b1(const Params& p) {
  for (const auto& m : parameter_subclasses(p))
    if (m.subclass == Subclass::b1) return true;
  return false;
}

}  // namespace detail

// Parameter-level hypothesis checks for the convergence statements
// applicable to the given h.
inline std::vector<ChecklistBlock> convergence_checklist(const Params& p) {
  p.validate();
  std::vector<ChecklistBlock> out;
  const auto verdict = existence_verdict(p);

  if (p.h == 1) {
    const bool betaBound = detail::no_interior_beta_bound(p);
    const bool aClass = detail::one_of_a(p);
    const bool b1 = detail::has_b1(p);

    out.push_back(
        {"M2 invariance", {{"r <= 1", p.r <= 1.0}}});
    out.push_back({"M3/M4 invariance",
                   {{"beta below psi on [0,1] (no interior fixed point)",
                     betaBound},
                    {"one of (a1)-(a3)", aClass},
                    {"c <= 1/2 (needed for M4 only)", p.c <= 0.5}}});
    out.push_back({"global convergence to E1 on M3/M4",
                   {{"beta below psi on [0,1] (no interior fixed point)",
                     betaBound},
                    {"one of (a1)-(a3)", aClass}}});

    bool qMinusBelow1 = false;
    if (verdict.count >= 1) {
      const auto fps = positive_fixed_points(p);
      if (!fps.empty())
        qMinusBelow1 = char_coeffs_at(fps.front().state.u, p).q < 1.0;
    }
    out.push_back({"convergence to Eminus",
                   {{"exactly one interior fixed point", verdict.count == 1},
                    {"q(u-) < 1", qMinusBelow1},
                    {"one of (a1)-(a3) or (b1)", detail::one_of_a(p) || b1}}});
    const double lo = p.beta / (1.0 + p.c);
    out.push_back(
        {"bistable basin split",
         {{"two interior fixed points", verdict.count == 2},
          {"q(u-) < 1", qMinusBelow1},
          {"E1 attractive", lo < p.r + p.theta && p.r + p.theta < 2.0 + lo},
          {"one of (a1)-(a3) or (b1)", detail::one_of_a(p) || b1}}});
  } else {
    const bool rtheta = p.r + p.theta <= 1.0;
    const bool cBound = p.c <= 27.0 / 4.0;
    const bool betaBound = detail::no_interior_beta_bound(p);
    out.push_back({"N invariance and convergence to E1",
                   {{"r + theta <= 1", rtheta},
                    {"c <= 27/4", cBound},
                    {"beta below psi on [0,1] (no interior fixed point)",
                     betaBound}}});

    bool qMinusBelow1 = false;
    if (verdict.count >= 1) {
      const auto fps = positive_fixed_points(p);
      if (!fps.empty())
        qMinusBelow1 = char_coeffs_at(fps.front().state.u, p).q < 1.0;
    }
    out.push_back({"convergence to Eminus from N1 u N2",
                   {{"r + theta <= 1", rtheta},
                    {"c <= 27/4", cBound},
                    {"exactly one interior fixed point", verdict.count == 1},
                    {"qbar(u-) < 1", qMinusBelow1}}});
    out.push_back({"bistable basin split",
                   {{"r + theta <= 1", rtheta},
                    {"c <= 27/4", cBound},
                    {"two interior fixed points", verdict.count == 2},
                    {"qbar(u-) < 1", qMinusBelow1}}});
  }
  return out;
}

}  // namespace plankton
