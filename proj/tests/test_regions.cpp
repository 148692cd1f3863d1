#include <catch_amalgamated.hpp>

#include <cmath>

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
// one map step can leave M4 here (c > 1/2)
const Params kLeakyM4 = make(1, 1.71, 0.25, 0.25, 20.0);

bool has_subclass(const std::vector<ParameterSubclass>& v, Subclass s) {
  for (const auto& m : v)
    if (m.subclass == s) return true;
  return false;
}

}  // namespace

TEST_CASE("membership basics") {
  CHECK(membership(State{0.5, 0.0}, RegionId::M1, kH1Unique));
  CHECK_FALSE(membership(State{2.5, 0.0}, RegionId::M1, kH1Unique));
  CHECK_FALSE(membership(State{0.5, 0.1}, RegionId::M1, kH1Unique));

  // (0.15, 6) with c=20: 6 <= (2-0.15)(1+20*0.15) = 7.4
  CHECK(membership(State{0.15, 6.0}, RegionId::M4, kLeakyM4));
  CHECK_FALSE(membership(State{0.15, 7.5}, RegionId::M4, kLeakyM4));

  // h=2, c=2: (2-0.5)(1+0.5)/0.5 = 4.5 >= 4
  const Params p2 = make(2, 3.0, 0.5, 0.25, 2.0);
  CHECK(membership(State{0.5, 4.0}, RegionId::N, p2));
  CHECK_FALSE(membership(State{0.5, 4.6}, RegionId::N, p2));
  // the u = 0 edge of N admits every v >= 0
  CHECK(membership(State{0.0, 1e6}, RegionId::N, p2));

  // region/h mismatches
  CHECK_THROWS_AS(membership(State{0.5, 0.5}, RegionId::N, kH1Unique),
                  std::domain_error);
  CHECK_THROWS_AS(membership(State{0.5, 0.5}, RegionId::M3, p2),
                  std::domain_error);
}

TEST_CASE("partition identities M3 = S1 u S2 and M4 = M3 u S3") {
  // as point sets these identities require the S2/S3 bounds to nest, which
  // holds for c in [1, 3+2*sqrt(2)]
  oracles::ParamGen gen(314159);
  for (int i = 0; i < 10000; ++i) {
    Params p = gen.draw(1);
    p.c = gen.uniform(1.0, 3.0 + 2.0 * std::sqrt(2.0));
    const double u = gen.uniform(1e-12, 1.0);
    const double v = gen.uniform(0.0, (2.0 - u) * (1.0 + p.c * u) + 1.0);
    const State s{u, v};
    const bool m3 = membership(s, RegionId::M3, p);
    const bool s1 = membership(s, RegionId::S1, p);
    const bool s2 = membership(s, RegionId::S2, p);
    const bool s3 = membership(s, RegionId::S3, p);
    const bool m4 = membership(s, RegionId::M4, p);
    INFO("c=" << p.c << " u=" << u << " v=" << v);
    CHECK(m3 == (s1 || s2));
    CHECK(m4 == (m3 || s3));
  }
}

TEST_CASE("subclass examples") {
  {
    const auto v = parameter_subclasses(kH1Unique);
    CHECK(has_subclass(v, Subclass::a1));
    CHECK(has_subclass(v, Subclass::c1));
    // signature check: uhat- ~ -0.5498 < 0, uhat+ ~ 14.55 >= 2
    const auto uh = uhat_bounds(kH1Unique);
    for (const auto& m : v)
      CHECK(class_signature_holds(m.param_class, uh));
  }
  {
    // r > 1 case
    const Params p = make(1, 1.0, 1.2, 0.25, 1.0);
    const auto v = parameter_subclasses(p);
    REQUIRE(has_subclass(v, Subclass::b1));
    const auto uh = uhat_bounds(p);
    REQUIRE(uh.real_roots);
    CHECK(uh.lower > 0.0);
    CHECK(uh.lower < 1.0);
    CHECK(uh.upper > 1.0);
  }
  {
    const Params p = make(1, 2.0, 0.3, 0.25, 1.0);
    CHECK(has_subclass(parameter_subclasses(p), Subclass::c1));
  }
  CHECK_THROWS_AS(parameter_subclasses(make(2, 1, 1, 1, 1)),
                  std::domain_error);
}

TEST_CASE("every matched subclass has its class signature") {
  oracles::ParamGen gen(271828);
  for (int i = 0; i < 5000; ++i) {
    const Params p = gen.draw(1);
    const auto uh = uhat_bounds(p);
    for (const auto& m : parameter_subclasses(p)) {
      INFO("subclass " << to_string(m.subclass) << " beta=" << p.beta
                       << " r=" << p.r << " theta=" << p.theta
                       << " c=" << p.c);
      CHECK(class_signature_holds(m.param_class, uh));
    }
  }
}

TEST_CASE("one-step invariance under the stated hypotheses") {
  // M1 holds for any h=1 parameters
  CHECK(verify_invariance(RegionId::M1, kLeakyM4, 10000, 1)
            .invariant_observed());
  // M2 needs r <= 1
  CHECK(verify_invariance(RegionId::M2, kH1Unique, 10000, 2)
            .invariant_observed());
  // M3: no interior fixed point, one of (a1)-(a3), and c >= 1 so that
  // (2-u)(1+cu) >= 2 on [0,1] (u' >= 0 for every v <= 2); here
  // beta = 1.4 < (c+1)(r+theta) = 1.5 with (a1)
  const Params pm3 = make(1, 1.4, 0.5, 0.25, 1.0);
  CHECK(verify_invariance(RegionId::M3, pm3, 10000, 3).invariant_observed());
  // M4: same shape of hypotheses but c <= 1/2
  const Params pm4 = make(1, 0.9, 0.5, 0.25, 0.25);
  CHECK(verify_invariance(RegionId::M4, pm4, 10000, 4).invariant_observed());
  // N: r+theta <= 1, c <= 27/4, beta = 2 <= (c+1)(r+theta) = 2.25 with
  // ubar ~ 1.39 >= 1
  const Params pn = make(2, 2.0, 0.5, 0.25, 2.0);
  CHECK(verify_invariance(RegionId::N, pn, 10000, 5).invariant_observed());
}

TEST_CASE("M3 can leak when c < 1") {
  // with c < 1 the cap v <= 2 is not enough to keep u' >= 0 near u = 1:
  // (0.5, 1.9) maps to u' = 0.75 - 0.95/1.125 < 0
  const Params p = make(1, 0.9, 0.5, 0.25, 0.25);
  const State s{0.5, 1.9};
  REQUIRE(membership(s, RegionId::M3, p));
  const State t = apply_map(s, p);
  CHECK(t.u < 0.0);
  CHECK_FALSE(membership(t, RegionId::M3, p));
  CHECK_FALSE(
      verify_invariance(RegionId::M3, p, 10000, 3).invariant_observed());
}

TEST_CASE("M4 leaks when c > 1/2") {
  const auto rep = verify_invariance(RegionId::M4, kLeakyM4, 10000, 99);
  CHECK_FALSE(rep.invariant_observed());
  // the known escaping point: (0.15, 6) maps to ~(0.0525, 4.65975),
  // outside M4
  const State s{0.15, 6.0};
  REQUIRE(membership(s, RegionId::M4, kLeakyM4));
  const State t = apply_map(s, kLeakyM4);
  CHECK_FALSE(membership(t, RegionId::M4, kLeakyM4));
  CHECK(t.u == Catch::Approx(0.0525).margin(1e-9));
  CHECK(t.v == Catch::Approx(4.65975).margin(1e-9));
}

TEST_CASE("invariance verification is deterministic given the seed") {
  const auto a = verify_invariance(RegionId::M4, kLeakyM4, 2000, 7);
  const auto b = verify_invariance(RegionId::M4, kLeakyM4, 2000, 7);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].sample_index == b.violations[i].sample_index);
    CHECK(a.violations[i].source.u == b.violations[i].source.u);
    CHECK(a.violations[i].source.v == b.violations[i].source.v);
  }
  // ordered by sample index
  for (std::size_t i = 1; i < a.violations.size(); ++i)
    CHECK(a.violations[i - 1].sample_index < a.violations[i].sample_index);
}

TEST_CASE("N invariance outside the hypotheses is observed, not asserted") {
  // beta = 3 > (c+1)(r+theta) = 2.25 violates the no-interior-point bound,
  // so the report may or may not be empty; the call itself must work
  const Params p = make(2, 3.0, 0.5, 0.25, 2.0);
  const auto rep = verify_invariance(RegionId::N, p, 2000, 11);
  CHECK(rep.samples == 2000);
}

TEST_CASE("N2 requires an interior fixed point") {
  const Params none = make(2, 1.0, 0.5, 0.25, 2.0);  // count = 0
  CHECK_THROWS_AS(membership(State{0.2, 3.0}, RegionId::N2, none),
                  std::domain_error);
  CHECK_THROWS_AS(verify_invariance(RegionId::N2, none, 10, 0),
                  std::domain_error);
}

TEST_CASE("the N roof is decreasing on (0,1) exactly when c <= 27/4") {
  // g(x) = (2-x)(1+cx^2)/x has g'(x) = -2(cx^3 - cx^2 + 1)/x^2, so g is
  // nonincreasing on (0,1) iff c <= 1/(x^2-x^3) everywhere, whose minimum
  // over (0,1) is 27/4 at x = 2/3
  const auto g = [](double x, double c) {
    return (2.0 - x) * (1.0 + c * x * x) / x;
  };
  const auto increasing_somewhere = [&](double c) {
    double prev = g(1.0 / 20001.0, c);
    for (int k = 2; k <= 20000; ++k) {
      const double x = k / 20001.0;
      const double cur = g(x, c);
      if (cur > prev * (1.0 + 1e-14)) return true;
      prev = cur;
    }
    return false;
  };
  CHECK_FALSE(increasing_somewhere(27.0 / 4.0));
  CHECK_FALSE(increasing_somewhere(3.0));
  CHECK(increasing_somewhere(27.0 / 4.0 + 0.1));
  CHECK(increasing_somewhere(12.0));
}

TEST_CASE("hypothesis checklist reflects the parameter regime") {
  {
    const auto blocks = convergence_checklist(kH1Unique);
    // unique attractive interior point with (a1): convergence-to-Eminus
    // hypotheses all hold
    bool found = false;
    for (const auto& b : blocks)
      if (b.statement == "convergence to Eminus") {
        found = true;
        CHECK(b.all_hold());
      }
    CHECK(found);
  }
  {
    const auto blocks = convergence_checklist(make(2, 3.0, 0.5, 0.25, 2.0));
    for (const auto& b : blocks) {
      if (b.statement == "N invariance and convergence to E1")
        CHECK_FALSE(b.all_hold());  // beta above the existence threshold
      if (b.statement == "convergence to Eminus from N1 u N2")
        CHECK(b.all_hold());
    }
  }
}
