#pragma once

// Trajectory iteration with limit verdicts, phase-portrait grids, basin
// boundary estimation by bisection of initial conditions, and parameter
// sweeps locating the q(u-) = 1 crossing.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plankton/fixed_points.hpp"
#include "plankton/model.hpp"
#include "plankton/params.hpp"
#include "plankton/stability.hpp"

namespace plankton {

struct SimOptions {
  long max_steps = 100000;
  double conv_tol = 1e-9;       // sustained over 10 consecutive iterates
  double escape_radius = 1e8;
  long store_cap = 100000;      // iterate storage cap; larger runs decimate
  // the invariant-curve verdict needs the stored tail; with storage off a
  // bounded non-convergent run reports Undecided
  bool store_iterates = true;

  void validate() const {
    if (max_steps < 1)
      throw std::domain_error("SimOptions: max_steps must be >= 1");
    if (!(conv_tol > 0.0))
      throw std::domain_error("SimOptions: conv_tol must be > 0");
    if (!(escape_radius > 0.0))
      throw std::domain_error("SimOptions: escape_radius must be > 0");
    if (store_cap < 2)
      throw std::domain_error("SimOptions: store_cap must be >= 2");
  }
};

enum class VerdictKind { Converged, Diverged, InvariantCurve, Undecided };

struct TrajectoryResult {
  std::vector<State> iterates;  // every stride-th state, plus the last one
  long stride = 1;
  VerdictKind kind = VerdictKind::Undecided;
  std::optional<FixedPointLabel> target;  // set iff kind == Converged
  long steps_used = 0;

  std::string verdict_string() const {
    switch (kind) {
      case VerdictKind::Converged:
        return "ConvergedTo(" + to_string(*target) + ")";
      case VerdictKind::Diverged: return "Diverged";
      case VerdictKind::InvariantCurve: return "InvariantCurve";
      case VerdictKind::Undecided: return "Undecided";
    }
    return "?";
  }
};

namespace detail {

// sup-norm diameter of the tail of the stored orbit
inline double tail_diameter(const std::vector<State>& pts,
                            std::size_t tail_len) {
  if (pts.size() < 2) return 0.0;
  const std::size_t n = std::min(tail_len, pts.size());
  double ulo = pts.back().u, uhi = ulo, vlo = pts.back().v, vhi = vlo;
  for (std::size_t i = pts.size() - n; i < pts.size(); ++i) {
    ulo = std::min(ulo, pts[i].u);
    uhi = std::max(uhi, pts[i].u);
    vlo = std::min(vlo, pts[i].v);
    vhi = std::max(vhi, pts[i].v);
  }
  return std::max(uhi - ulo, vhi - vlo);
}

}  // namespace detail

// Iterate the map from s0 until the orbit settles on a known fixed point,
// escapes, or max_steps is reached. Convergence requires 10 consecutive
// iterates within conv_tol of the same fixed point (an exact hit counts
// immediately). A bounded, non-convergent orbit whose stored tail has
// sup-norm diameter above 10*conv_tol is reported as an invariant curve;
// this is an empirical verdict, not a proof.
inline TrajectoryResult simulate(const State& s0, const Params& p,
                                 const SimOptions& opts = {}) {
  p.validate();
  opts.validate();
  if (!is_finite(s0))
    throw std::invalid_argument("simulate: initial state must be finite");

  struct Target {
    State state;
    FixedPointLabel label;
    int streak = 0;
  };
  std::vector<Target> targets;
  for (const auto& fp : boundary_fixed_points(p))
    targets.push_back({fp.state, fp.label, 0});
  for (const auto& fp : positive_fixed_points(p))
    targets.push_back({fp.state, fp.label, 0});

  TrajectoryResult out;
  out.stride =
      std::max<long>(1, (opts.max_steps + opts.store_cap - 1) / opts.store_cap);
  const auto store = [&](long n, const State& s) {
    if (!opts.store_iterates) return;
    if (n % out.stride == 0) out.iterates.push_back(s);
  };
  const auto store_last = [&](long n, const State& s) {
    if (!opts.store_iterates) return;
    if (n % out.stride != 0) out.iterates.push_back(s);
  };

  State s = s0;
  for (long n = 0;; ++n) {
    store(n, s);
    if (!is_finite(s) || std::abs(s.u) > opts.escape_radius ||
        std::abs(s.v) > opts.escape_radius) {
      store_last(n, s);
      out.kind = VerdictKind::Diverged;
      out.steps_used = n;
      return out;
    }
    for (auto& t : targets) {
      const double d = dist_inf(s, t.state);
      if (d <= opts.conv_tol) {
        ++t.streak;
        if (d == 0.0 || t.streak >= 10) {
          store_last(n, s);
          out.kind = VerdictKind::Converged;
          out.target = t.label;
          out.steps_used = n;
          return out;
        }
      } else {
        t.streak = 0;
      }
    }
    if (n == opts.max_steps) {
      store_last(n, s);
      out.steps_used = n;
      const double diam = detail::tail_diameter(
          out.iterates, static_cast<std::size_t>(
                            std::max<long>(10, 1000 / out.stride)));
      out.kind = diam > 10.0 * opts.conv_tol ? VerdictKind::InvariantCurve
                                             : VerdictKind::Undecided;
      return out;
    }
    s = apply_map(s, p);
  }
}

// ---------------------------------------------------------------------------
// Phase-portrait grid
// ---------------------------------------------------------------------------

struct GridSpec {
  double u0 = 0.0, u1 = 1.0;
  int nu = 1;
  double v0 = 0.0, v1 = 1.0;
  int nv = 1;

  void validate() const {
    if (nu < 1 || nv < 1)
      throw std::domain_error("GridSpec: resolution must be >= 1 per axis");
  }
  double u_center(int iu) const {
    return u0 + (iu + 0.5) * (u1 - u0) / nu;
  }
  double v_center(int iv) const {
    return v0 + (iv + 0.5) * (v1 - v0) / nv;
  }
};

struct CellVerdict {
  State start;
  VerdictKind kind;
  std::optional<FixedPointLabel> target;
  long steps_used = 0;

  std::string verdict_string() const {
    TrajectoryResult t;
    t.kind = kind;
    t.target = target;
    return t.verdict_string();
  }
};

struct Portrait {
  GridSpec grid;
  std::vector<CellVerdict> cells;  // row-major: index = iu * nv + iv
};

// Verdict at every grid cell center, row-major (u-major, v-minor),
// deterministic.
inline Portrait portrait(const GridSpec& grid, const Params& p,
                         SimOptions opts = {}) {
  p.validate();
  grid.validate();
  opts.store_iterates = true;  // tail needed for the invariant-curve check
  Portrait out;
  out.grid = grid;
  out.cells.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  for (int iu = 0; iu < grid.nu; ++iu) {
    for (int iv = 0; iv < grid.nv; ++iv) {
      const State s0{grid.u_center(iu), grid.v_center(iv)};
      const auto res = simulate(s0, p, opts);
      out.cells.push_back(
          CellVerdict{s0, res.kind, res.target, res.steps_used});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Basin boundary by bisection of initial conditions
// ---------------------------------------------------------------------------

struct BasinSample {
  double u = 0.0;
  double v_star = 0.0;            // bisected boundary height
  FixedPointLabel below, above;   // attractors bracketing the boundary
};

struct BasinBoundary {
  std::vector<BasinSample> samples;
  std::vector<std::string> notes;  // u values omitted and why
};

namespace detail {

inline std::optional<FixedPointLabel> converged_label(
    const State& s0, const Params& p, const SimOptions& opts) {
  const auto res = simulate(s0, p, opts);
  if (res.kind == VerdictKind::Converged) return res.target;
  return std::nullopt;
}

}  // namespace detail

// For each u, scans the admissible v range for a pair of adjacent seeds
// converging to the two different attractors (Eminus vs E1) and bisects
// between them to width v_tol. Requires the bistable regime: two interior
// fixed points, Eminus attractive, E1 attractive.
inline BasinBoundary basin_boundary(const std::vector<double>& u_values,
                                    const Params& p, double v_tol,
                                    SimOptions opts = {},
                                    int scan_points = 96) {
  p.validate();
  if (!(v_tol > 0.0))
    throw std::domain_error("basin_boundary: v_tol must be > 0");
  if (scan_points < 2)
    throw std::domain_error("basin_boundary: scan_points must be >= 2");
  opts.store_iterates = false;

  const auto fps = positive_fixed_points(p);
  if (fps.size() != 2)
    throw regime_error(
        "basin_boundary: requires two interior fixed points (bistable "
        "regime)");
  if (char_coeffs_at(fps[0].state.u, p).q >= 1.0)
    throw regime_error("basin_boundary: Eminus is not attractive");
  const auto e1 = classify_boundary(
      FixedPoint{State{1.0, 0.0}, FixedPointLabel::E1}, p);
  if (e1.stability != StabilityClass::Attractive)
    throw regime_error("basin_boundary: E1 is not attractive");

  BasinBoundary out;
  for (double u : u_values) {
    if (!(u > 0.0 && u < 1.0)) {
      out.notes.push_back("u=" + std::to_string(u) +
                          ": outside (0,1), skipped");
      continue;
    }
    const double vmax = p.h == 1
                            ? (2.0 - u) * (1.0 + p.c * u)
                            : (2.0 - u) * (1.0 + p.c * u * u) / u;
    // scan upward for adjacent seeds with different converged labels
    double lo = 0.0, hi = 0.0;
    std::optional<FixedPointLabel> lo_label, hi_label;
    bool found = false;
    std::optional<FixedPointLabel> prev;
    double prev_v = 0.0;
    for (int j = 1; j <= scan_points; ++j) {
      const double v = vmax * j / scan_points;
      const auto lab = detail::converged_label(State{u, v}, p, opts);
      if (lab && prev && *lab != *prev) {
        lo = prev_v;
        hi = v;
        lo_label = prev;
        hi_label = lab;
        found = true;
        break;
      }
      if (lab) {
        prev = lab;
        prev_v = v;
      }
    }
    if (!found) {
      out.notes.push_back("u=" + std::to_string(u) +
                          ": no bracket found in the admissible v range");
      continue;
    }
    bool refined = true;
    while (hi - lo > v_tol) {
      const double mid = 0.5 * (lo + hi);
      const auto lab = detail::converged_label(State{u, mid}, p, opts);
      if (!lab || (*lab != *lo_label && *lab != *hi_label)) {
        out.notes.push_back("u=" + std::to_string(u) +
                            ": bisection seed did not converge to either "
                            "attractor");
        refined = false;
        break;
      }
      if (*lab == *lo_label)
        lo = mid;
      else
        hi = mid;
    }
    if (!refined) continue;
    out.samples.push_back(
        BasinSample{u, 0.5 * (lo + hi), *lo_label, *hi_label});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameter sweep for the q(u-) = 1 crossing
// ---------------------------------------------------------------------------

enum class ParamName { Beta, R, Theta, C };

inline std::string to_string(ParamName n) {
  switch (n) {
    case ParamName::Beta: return "beta";
    case ParamName::R: return "r";
    case ParamName::Theta: return "theta";
    case ParamName::C: return "c";
  }
  return "?";
}

inline Params with_param(Params p, ParamName name, double value) {
  switch (name) {
    case ParamName::Beta: p.beta = value; break;
    case ParamName::R: p.r = value; break;
    case ParamName::Theta: p.theta = value; break;
    case ParamName::C: p.c = value; break;
  }
  return p;
}

struct SweepSample {
  double param_value = 0.0;
  double u_minus = 0.0;
  double p = 0.0;
  double q = 0.0;
  StabilityClass stability = StabilityClass::Attractive;
};

struct BifurcationPoint {
  ParamName param_name;
  double value = 0.0;
  double u_minus = 0.0;
  double q_at_crossing = 0.0;
  double p_at_crossing = 0.0;
};

struct NsSweepResult {
  std::vector<SweepSample> samples;       // grid points where Eminus exists
  std::vector<BifurcationPoint> crossings;
  std::vector<std::string> notes;         // skipped grid points etc.
};

namespace detail {

// q(u-) - 1 at the given parameter value, or nullopt when Eminus is absent
inline std::optional<SweepSample> sweep_eval(const Params& base,
                                             ParamName name, double value) {
  const Params p = with_param(base, name, value);
  try {
    p.validate();
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const auto fps = positive_fixed_points(p);
  if (fps.empty()) return std::nullopt;
  const auto cc = char_coeffs_at(fps.front().state.u, p);
  SweepSample s;
  s.param_value = value;
  s.u_minus = fps.front().state.u;
  s.p = cc.p;
  s.q = cc.q;
  s.stability = classify_interior(fps.front(), p).stability;
  return s;
}

}  // namespace detail

// Evaluates q(u-) on a uniform grid over [from, to], brackets sign changes
// of q - 1 and refines each by bisection on the parameter until
// |q - 1| <= 1e-9 or the bracket width falls below 1e-12. Crossings are
// emitted only when -2 < p(u-) < 2 there (conjugate pair on the unit
// circle). Grid points without Eminus are skipped with a note; if no grid
// point has Eminus the sweep is rejected.
inline NsSweepResult ns_sweep(ParamName name, double from, double to,
                              int steps, const Params& base) {
  base.validate();
  if (!(from < to)) throw std::domain_error("ns_sweep: requires from < to");
  if (steps < 2) throw std::domain_error("ns_sweep: requires steps >= 2");

  NsSweepResult out;
  for (int i = 0; i < steps; ++i) {
    const double t = from + (to - from) * i / (steps - 1);
    const auto s = detail::sweep_eval(base, name, t);
    if (!s) {
      out.notes.push_back(to_string(name) + "=" + std::to_string(t) +
                          ": no Eminus, skipped");
      continue;
    }
    out.samples.push_back(*s);
  }
  if (out.samples.empty())
    throw std::domain_error(
        "ns_sweep: Eminus exists nowhere in the scanned range");

  const auto emit = [&out, name](const SweepSample& s) {
    if (s.p > -2.0 && s.p < 2.0) {
      out.crossings.push_back(
          BifurcationPoint{name, s.param_value, s.u_minus, s.q, s.p});
    } else {
      out.notes.push_back("q=1 crossing at " + std::to_string(s.param_value) +
                          " rejected: p outside (-2, 2)");
    }
  };

  // grid points sitting exactly on the crossing
  for (const auto& s : out.samples)
    if (s.q == 1.0) emit(s);

  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    const auto& a = out.samples[i];
    const auto& b = out.samples[i + 1];
    if ((a.q - 1.0) * (b.q - 1.0) >= 0.0) continue;
    double lo = a.param_value, hi = b.param_value;
    double flo = a.q - 1.0;
    SweepSample at_mid = a;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto s = detail::sweep_eval(base, name, mid);
      if (!s) break;  // Eminus vanished inside the bracket
      at_mid = *s;
      const double fm = s->q - 1.0;
      if (std::abs(fm) <= 1e-9 || hi - lo <= 1e-12) break;
      if ((flo < 0.0) == (fm < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    if (std::abs(at_mid.q - 1.0) > 1e-9 && hi - lo > 1e-12) {
      out.notes.push_back("crossing near " + std::to_string(0.5 * (lo + hi)) +
                          " abandoned: Eminus vanished during refinement");
      continue;
    }
    emit(at_mid);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dynamics on the axes
// ---------------------------------------------------------------------------

struct LogisticEdgeReport {
  double period_two_discriminant = 0.0;  // of u^2 - 3u + 3
  bool no_period_two = false;
  int grid_points = 0;
  bool all_grid_converged = false;  // f^n(u0) -> 1 on (0,2)
  long max_iters_used = 0;
  bool v_axis_decays = false;       // (1-r)^n v0 -> 0 (requires r <= 1)
};

// Checks the one-dimensional dynamics on the invariant axes: the logistic
// restriction u -> u(2-u) on v = 0 has no period-2 orbit (negative
// discriminant of u^2 - 3u + 3) and sends every start in (0,2) to 1; on
// the u = 0 axis v decays geometrically when r <= 1.
inline LogisticEdgeReport logistic_edge_checks(const Params& p,
                                               int grid_points = 100,
                                               long max_iters = 10000,
                                               double tol = 1e-9) {
  p.validate();
  LogisticEdgeReport rep;
  rep.period_two_discriminant = 3.0 * 3.0 - 4.0 * 3.0;
  rep.no_period_two = rep.period_two_discriminant < 0.0;
  rep.grid_points = grid_points;

  rep.all_grid_converged = true;
  for (int k = 0; k < grid_points; ++k) {
    State s{2.0 * (k + 0.5) / grid_points, 0.0};
    long n = 0;
    while (n < max_iters && std::abs(s.u - 1.0) > tol) {
      s = apply_map(s, p);
      ++n;
    }
    rep.max_iters_used = std::max(rep.max_iters_used, n);
    if (std::abs(s.u - 1.0) > tol) rep.all_grid_converged = false;
  }

  if (p.r <= 1.0) {
    rep.v_axis_decays = true;
    for (int k = 0; k < grid_points; ++k) {
      State s{0.0, 10.0 * (k + 1.0) / grid_points};
      long n = 0;
      while (n < max_iters && s.v > tol) {
        s = apply_map(s, p);
        ++n;
      }
      if (s.v > tol) rep.v_axis_decays = false;
    }
  }
  return rep;
}

}  // namespace plankton
