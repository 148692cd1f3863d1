#include <catch_amalgamated.hpp>

#include <cmath>

#include "plankton/dynamics.hpp"
#include "plankton/regions.hpp"
#include "support/oracles.hpp"

using namespace plankton;

namespace {

Params make(int h, double beta, double r, double theta, double c) {
  Params p;
  p.h = h;
  p.beta = beta;
  p.r = r;
  p.theta = theta;
  p.c = c;
  return p;
}

const Params kH1Unique = make(1, 1.0, 0.5, 0.25, 0.25);
const Params kH1Bistable = make(1, 3.7, 0.5, 0.25, 4.0);
const Params kH2Unique = make(2, 3.0, 0.5, 0.25, 2.0);
const Params kH2Bistable = make(2, 6.7, 0.5, 0.25, 8.0);
const Params kH2SlowSpiral = make(2, 11.0, 0.5, 0.25, 11.3);
const Params kH2PostCrossing = make(2, 11.0, 0.5, 0.25, 11.1);

}  // namespace

TEST_CASE("trajectories converge to the interior attractor") {
  for (const State s0 : {State{0.4, 0.8}, State{0.04, 0.1}}) {
    const auto res = simulate(s0, kH1Unique);
    REQUIRE(res.kind == VerdictKind::Converged);
    CHECK(*res.target == FixedPointLabel::Eminus);
    CHECK(dist_inf(res.iterates.back(),
                   positive_fixed_points(kH1Unique)[0].state) <= 1e-8);
  }
  for (const State s0 : {State{0.4, 1.6}, State{0.4, 4.0}}) {
    const auto res = simulate(s0, kH2Unique);
    REQUIRE(res.kind == VerdictKind::Converged);
    CHECK(*res.target == FixedPointLabel::Eminus);
  }
}

TEST_CASE("slow spiral converges, post-crossing orbits do not") {
  // q(u-) ~ 0.999: convergence well within 1e5 steps
  const auto a = simulate(State{0.3, 4.0}, kH2SlowSpiral);
  REQUIRE(a.kind == VerdictKind::Converged);
  CHECK(*a.target == FixedPointLabel::Eminus);

  // q(u-) ~ 1.003: bounded orbit circling Eminus at n = 10^4
  SimOptions opts;
  opts.max_steps = 10000;
  for (const State s0 : {State{0.36, 4.3}, State{0.4, 5.0}}) {
    const auto res = simulate(s0, kH2PostCrossing, opts);
    CHECK(res.kind == VerdictKind::InvariantCurve);
    CHECK(res.steps_used == 10000);
  }
}

TEST_CASE("negative u with positive v escapes to infinity") {
  const auto res = simulate(State{-0.1, 1.0}, kH2Unique);
  REQUIRE(res.kind == VerdictKind::Diverged);
  CHECK(res.iterates.back().u < 0.0);
  CHECK(res.iterates.back().v > 0.0);
}

TEST_CASE("an exact fixed-point start converges in zero steps") {
  const auto res = simulate(State{1.0, 0.0}, kH1Unique);
  REQUIRE(res.kind == VerdictKind::Converged);
  CHECK(*res.target == FixedPointLabel::E1);
  CHECK(res.steps_used == 0);
}

TEST_CASE("invalid simulation options are rejected") {
  SimOptions bad;
  bad.max_steps = 0;
  CHECK_THROWS_AS(simulate(State{0.5, 0.5}, kH1Unique, bad), std::domain_error);
  SimOptions bad2;
  bad2.conv_tol = 0.0;
  CHECK_THROWS_AS(simulate(State{0.5, 0.5}, kH1Unique, bad2), std::domain_error);
}

TEST_CASE("portrait single cell and degenerate rows") {
  {
    GridSpec g{0.4, 0.4, 1, 0.8, 0.8, 1};
    const auto por = portrait(g, kH1Unique);
    REQUIRE(por.cells.size() == 1);
    CHECK(por.cells[0].start.u == 0.4);
    CHECK(por.cells[0].start.v == 0.8);
    CHECK(por.cells[0].verdict_string() == "ConvergedTo(Eminus)");
  }
  {
    // the v = 0 line inside (0,2): everything runs to E1
    GridSpec g{0.05, 1.95, 12, 0.0, 0.0, 1};
    const auto por = portrait(g, kH1Unique);
    for (const auto& cell : por.cells)
      CHECK(cell.verdict_string() == "ConvergedTo(E1)");
  }
  {
    // the u = 0 line with r <= 1: v decays to E0
    GridSpec g{0.0, 0.0, 1, 0.2, 3.0, 6};
    const auto por = portrait(g, kH1Unique);
    for (const auto& cell : por.cells)
      CHECK(cell.verdict_string() == "ConvergedTo(E0)");
  }
}

TEST_CASE("portrait is row-major and deterministic") {
  GridSpec g{0.1, 0.9, 3, 0.1, 1.9, 4};
  const auto a = portrait(g, kH1Unique);
  const auto b = portrait(g, kH1Unique);
  REQUIRE(a.cells.size() == 12);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].start.u == b.cells[i].start.u);
    CHECK(a.cells[i].verdict_string() == b.cells[i].verdict_string());
  }
  // index = iu * nv + iv
  CHECK(a.cells[0].start.u == Catch::Approx(g.u_center(0)));
  CHECK(a.cells[0].start.v == Catch::Approx(g.v_center(0)));
  CHECK(a.cells[4].start.u == Catch::Approx(g.u_center(1)));
  CHECK(a.cells[4].start.v == Catch::Approx(g.v_center(0)));
}

TEST_CASE("basin boundary brackets the saddle") {
  {
    const auto fps = positive_fixed_points(kH1Bistable);
    const double up = fps[1].state.u, vp = fps[1].state.v;
    const auto bb = basin_boundary({up}, kH1Bistable, 1e-4);
    REQUIRE(bb.samples.size() == 1);
    CHECK(std::abs(bb.samples[0].v_star - vp) <= 0.05);
    // bracket sanity: straddling seeds reach different attractors
    const double vs = bb.samples[0].v_star;
    const auto lo = simulate(State{up, vs - 2e-4}, kH1Bistable);
    const auto hi = simulate(State{up, vs + 2e-4}, kH1Bistable);
    REQUIRE(lo.kind == VerdictKind::Converged);
    REQUIRE(hi.kind == VerdictKind::Converged);
    CHECK(*lo.target != *hi.target);
  }
  {
    const auto fps = positive_fixed_points(kH2Bistable);
    const double up = fps[1].state.u, vp = fps[1].state.v;
    const auto bb = basin_boundary({up}, kH2Bistable, 1e-4);
    REQUIRE(bb.samples.size() == 1);
    CHECK(std::abs(bb.samples[0].v_star - vp) <= 0.05);
  }
}

TEST_CASE("basin boundary requires the bistable regime") {
  CHECK_THROWS_AS(basin_boundary({0.5}, kH1Unique, 1e-4), regime_error);
  CHECK_THROWS_AS(basin_boundary({0.5}, kH1Bistable, 0.0), std::domain_error);
  // u outside (0,1) is omitted with a note, not an error
  const auto bb = basin_boundary({1.5}, kH1Bistable, 1e-4);
  CHECK(bb.samples.empty());
  CHECK_FALSE(bb.notes.empty());
}

TEST_CASE("ns_sweep finds the crossing in the reference window") {
  Params base = kH2PostCrossing;  // c replaced by the sweep
  const auto res = ns_sweep(ParamName::C, 11.0, 11.5, 50, base);
  REQUIRE(res.crossings.size() == 1);
  const auto& bp = res.crossings[0];
  CHECK(bp.value > 11.1);
  CHECK(bp.value < 11.3);
  CHECK(std::abs(bp.q_at_crossing - 1.0) <= 1e-9);
  CHECK(bp.p_at_crossing > -2.0);
  CHECK(bp.p_at_crossing < 2.0);
  // the sweep brackets a genuine sign change of q - 1
  double before = 0.0, after = 0.0;
  for (const auto& s : res.samples) {
    if (s.param_value < bp.value) before = s.q - 1.0;
    if (s.param_value > bp.value && after == 0.0) after = s.q - 1.0;
  }
  CHECK(before * after < 0.0);
}

TEST_CASE("ns_sweep reports no crossing when q stays away from 1") {
  const auto res = ns_sweep(ParamName::Beta, 0.95, 1.05, 21, kH1Unique);
  CHECK(res.crossings.empty());
  for (const auto& s : res.samples) CHECK(s.q < 0.5);
}

TEST_CASE("ns_sweep rejects a range without the interior point") {
  // beta far below the existence threshold everywhere in the range
  CHECK_THROWS_AS(ns_sweep(ParamName::Beta, 0.1, 0.2, 5, kH1Unique),
                  std::domain_error);
  CHECK_THROWS_AS(ns_sweep(ParamName::C, 11.5, 11.0, 5, kH2PostCrossing),
                  std::domain_error);
  CHECK_THROWS_AS(ns_sweep(ParamName::C, 11.0, 11.5, 1, kH2PostCrossing),
                  std::domain_error);
}

TEST_CASE("logistic edge dynamics") {
  const auto rep = logistic_edge_checks(kH1Unique);
  CHECK(rep.period_two_discriminant == -3.0);
  CHECK(rep.no_period_two);
  CHECK(rep.all_grid_converged);
  CHECK(rep.v_axis_decays);

  // u0 = 1 stays put
  const State one = apply_map(State{1.0, 0.0}, kH1Unique);
  CHECK(one.u == 1.0);

  // monotone increase from below (saturates at 1.0 exactly in floating
  // point once the quadratic convergence bottoms out)
  State s{0.01, 0.0};
  double prev = s.u;
  for (int i = 0; i < 50; ++i) {
    s = apply_map(s, kH1Unique);
    if (prev < 1.0) CHECK(s.u > prev);
    CHECK(s.u <= 1.0);
    prev = s.u;
  }
  CHECK(std::abs(s.u - 1.0) < 1e-9);

  // a start in (1,2) lands in (0,1) after one step and then converges
  State t{1.99, 0.0};
  t = apply_map(t, kH1Unique);
  CHECK(t.u > 0.0);
  CHECK(t.u < 1.0);
}

TEST_CASE("v is nonincreasing along orbits while beta stays below psi") {
  // no-interior-point regime: beta < psi(u) everywhere on the orbit's
  // u range, so each step multiplies v by (1 + f(u)(beta - psi(u))) <= 1
  oracles::ParamGen gen(8080);
  for (int trial = 0; trial < 200; ++trial) {
    Params p = gen.draw_any_h();
    // force the no-interior-point branch
    const double ub = ubar(p);
    const double cap = ub >= 1.0 ? (1.0 + p.c) * (p.r + p.theta)
                                 : psi(ub, p);
    p.beta = gen.uniform(0.05, 0.95) * cap;
    State s{gen.uniform(0.01, 0.99), gen.uniform(0.0, 2.0)};
    for (int n = 0; n < 50; ++n) {
      const State next = apply_map(s, p);
      if (s.u > 0.0 && s.u <= 1.0 && s.v >= 0.0 &&
          p.beta < psi(s.u, p)) {
        CHECK(next.v <= s.v + 1e-15);
      }
      s = next;
      if (!is_finite(s)) break;
    }
  }
}

TEST_CASE("u moves toward the low parabola (h=1 regions)") {
  // one step from S1 does not decrease u; one step from S2 u S3 does not
  // increase u
  oracles::ParamGen gen(515);
  for (int trial = 0; trial < 2000; ++trial) {
    const Params p = gen.draw(1);
    const double u = gen.uniform(1e-6, 1.0);
    const double parab = (1.0 - u) * (1.0 + p.c * u);
    const double top = (2.0 - u) * (1.0 + p.c * u);
    {
      const double v = gen.uniform(0.0, parab);
      const State next = apply_map(State{u, v}, p);
      CHECK(next.u >= u - 1e-15);
    }
    {
      const double v = parab + gen.uniform(0.0, top - parab);
      const State next = apply_map(State{u, v}, p);
      CHECK(next.u <= u + 1e-15);
    }
  }
}

TEST_CASE("orbits reach E1 under the global-convergence hypotheses") {
  // no interior point, (a1), start anywhere in M3 with c >= 1 so that one
  // step cannot leave through u < 0
  const Params p = make(1, 1.4, 0.5, 0.25, 1.0);
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const State s0{unit(rng), 2.0 * unit(rng)};
    const auto res = simulate(s0, p);
    REQUIRE(res.kind == VerdictKind::Converged);
    CHECK(*res.target == FixedPointLabel::E1);
  }
}

TEST_CASE("orbits reach Eminus under the interior-attractor hypotheses") {
  // h=1: unique attractive interior point, (a1), starts below the low
  // parabola
  {
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
      const double u = 0.01 + 0.98 * unit(rng);
      const double v = (1.0 - u) * (1.0 + kH1Unique.c * u) * unit(rng);
      if (v <= 0.0) continue;
      const auto res = simulate(State{u, v}, kH1Unique);
      REQUIRE(res.kind == VerdictKind::Converged);
      CHECK(*res.target == FixedPointLabel::Eminus);
    }
  }
  // h=2: N1 u N2 starts
  {
    const auto fps = positive_fixed_points(kH2Unique);
    REQUIRE(fps.size() == 1);
    const double um = fps[0].state.u;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
      State s0;
      if (i % 2 == 0) {  // N1
        const double u = 0.02 + 0.96 * unit(rng);
        s0 = State{u, (1.0 - u) * (1.0 + kH2Unique.c * u * u) / u * unit(rng)};
        if (s0.v <= 0.0) continue;
      } else {  // N2
        const double u = um * (0.05 + 0.9 * unit(rng));
        const double lo = (1.0 - u) * (1.0 + kH2Unique.c * u * u) / u;
        const double hi = (2.0 - u) * (1.0 + kH2Unique.c * u * u) / u;
        s0 = State{u, lo + (hi - lo) * unit(rng)};
      }
      const auto res = simulate(s0, kH2Unique);
      REQUIRE(res.kind == VerdictKind::Converged);
      CHECK(*res.target == FixedPointLabel::Eminus);
    }
  }
}

TEST_CASE("bistable regimes split between Eminus and E1") {
  SimOptions opts;
  opts.max_steps = 30000;
  {
    GridSpec g{0.05, 0.95, 10, 0.05, 1.0, 8};  // inside M4 for c = 4
    const auto por = portrait(g, kH1Bistable, opts);
    for (const auto& cell : por.cells) {
      if (!membership(cell.start, RegionId::M4, kH1Bistable)) continue;
      REQUIRE(cell.kind == VerdictKind::Converged);
      const bool ok = *cell.target == FixedPointLabel::Eminus ||
                      *cell.target == FixedPointLabel::E1;
      CHECK(ok);
    }
  }
  {
    GridSpec g{0.1, 0.9, 8, 0.1, 2.0, 8};  // inside N for c = 8
    const auto por = portrait(g, kH2Bistable, opts);
    for (const auto& cell : por.cells) {
      REQUIRE(cell.kind == VerdictKind::Converged);
      const bool ok = *cell.target == FixedPointLabel::Eminus ||
                      *cell.target == FixedPointLabel::E1;
      CHECK(ok);
    }
  }
}

TEST_CASE("decimation keeps the head and tail of long orbits") {
  SimOptions opts;
  opts.max_steps = 10000;
  opts.store_cap = 100;
  const auto res = simulate(State{0.36, 4.3}, kH2PostCrossing, opts);
  CHECK(res.stride == 100);
  CHECK(res.iterates.size() <= 102);
  CHECK(res.iterates.front().u == 0.36);
}
