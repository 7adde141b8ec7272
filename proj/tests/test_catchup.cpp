// Single catching-up steps, full runs against closed-form solutions, the
// admissibility rule, and the convergence study.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "sweep/catchup.hpp"

#include <cmath>

using namespace sweep;

namespace {

Vector vec(std::initializer_list<double> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

ConstraintSet lower_half_plane() {
  return ConstraintSet(HalfSpace{vec({0, 1}), 0.0});
}

Problem halfplane_slide() {
  Problem p;
  p.set = MovingSet{lower_half_plane(), FixedMotion{}};
  p.f = Perturbation{[](const Vector&) { return vec({1, 1}); }, std::sqrt(2.0), false};
  p.u0 = vec({0, 0});
  p.horizon = 1.0;
  return p;
}

Problem sinking_half_plane() {
  Problem p;
  p.set = MovingSet{lower_half_plane(), TranslationMotion{vec({0, -1})}};
  p.f = Perturbation{nullptr, 0.0, false};
  p.u0 = vec({0, 0});
  p.horizon = 1.0;
  return p;
}

// Constant drive (1, 0) against the unit-disk exterior; the boundary angle
// follows theta' = -sin(theta) in the arc-length clock, giving the closed
// form below for points started on the circle.
Problem ballext_slide() {
  Problem p;
  p.set = MovingSet{ConstraintSet(BallExterior{vec({0, 0}), 1.0}), FixedMotion{}};
  p.f = Perturbation{[](const Vector&) { return vec({1, 0}); }, 1.0, false};
  p.u0 = vec({-std::sqrt(0.5), std::sqrt(0.5)});
  p.horizon = 0.5;
  p.r = 1.0;
  return p;
}

Vector ballext_reference(double t) {
  const double th0 = 3.0 * M_PI / 4.0;
  double th = 2.0 * std::atan(std::tan(0.5 * th0) * std::exp(-t));
  return vec({std::cos(th), std::sin(th)});
}

}  // namespace

TEST_CASE("single step hand values") {
  ConstraintSet hp = lower_half_plane();
  SUBCASE("half-space absorbs the normal part of the drive") {
    StepResult s = step(hp, vec({0, 0}), 0.1, vec({1, 1}));
    REQUIRE(s.ok);
    CHECK(s.next == vec({0.1, 0}));
    CHECK(s.delta == vec({0, -1}));
    REQUIRE(s.multipliers.size() == 1);
    CHECK(s.multipliers[0] == 0.1);
  }
  SUBCASE("zero drive leaves a feasible state untouched") {
    StepResult s = step(hp, vec({3, 0}), 0.1, vec({0, 0}));
    CHECK(s.next == vec({3, 0}));
    CHECK(s.delta == vec({0, 0}));
  }
  SUBCASE("ball exterior pushes an inward drive back to the sphere") {
    ConstraintSet be(BallExterior{vec({0, 0}), 1.0});
    StepResult s = step(be, vec({1, 0}), 0.25, vec({-1, 0}), 1.0);
    REQUIRE(s.ok);
    CHECK((s.next - vec({1, 0})).norm() <= 1e-15);
    CHECK((s.delta - vec({1, 0})).norm() <= 1e-14);
  }
  SUBCASE("step rule violations are rejected") {
    CHECK_THROWS_WITH_AS(step(hp, vec({0, 0}), 1.0, vec({1, 1}), 1.0),
                         "step: h |f| exceeds r/2", input_error);
  }
  SUBCASE("delta reconstructs the step") {
    std::mt19937_64 gen(7);
    for (int k = 0; k < 50; ++k) {
      Vector u = oracle::gaussian(gen, 2);
      u[1] = -std::abs(u[1]);
      Vector f = oracle::gaussian(gen, 2);
      StepResult s = step(hp, u, 0.05, f);
      CHECK((u + 0.05 * f + 0.05 * s.delta - s.next).norm() <= 1e-15 * (1 + u.norm()));
    }
  }
}

TEST_CASE("half-plane slide is reproduced exactly") {
  Trajectory traj = integrate(halfplane_slide(), 64);
  REQUIRE(traj.ok);
  REQUIRE(traj.steps() == 64);
  CHECK(traj.h == 1.0 / 64);
  for (int i = 0; i <= 64; ++i) CHECK(traj.states[i] == vec({i / 64.0, 0.0}));
  for (const Vector& d : traj.deltas) CHECK(d == vec({0, -1}));
  CHECK(traj.f_sup == std::sqrt(2.0));
  CHECK(traj.delta_bound == std::sqrt(2.0));
  CHECK(traj.speed_bound == 2.0 * std::sqrt(2.0));
  CHECK(traj.gap_rate == std::sqrt(2.0));
}

TEST_CASE("translating half-space drags the state exactly") {
  Trajectory traj = integrate(sinking_half_plane(), 64);
  REQUIRE(traj.ok);
  for (int i = 0; i <= 64; ++i) CHECK(traj.states[i] == vec({0.0, -i / 64.0}));
  for (const Vector& d : traj.deltas) CHECK(d == vec({0, -1}));
  // Motion-rate constants: zero drive, unit translation speed.
  CHECK(traj.f_sup == 0.0);
  CHECK(traj.delta_bound == 1.0);
  CHECK(traj.speed_bound == 1.0);
  CHECK(traj.gap_rate == 1.0);
}

TEST_CASE("ball-exterior slide tracks the closed form") {
  Trajectory traj = integrate(ballext_slide(), 160);
  REQUIRE(traj.ok);
  double gap = 0.0;
  for (int i = 0; i <= 160; ++i)
    gap = std::max(gap, (traj.states[i] - ballext_reference(traj.time(i))).norm());
  CHECK(gap <= 2e-3);
  for (const Vector& d : traj.deltas) CHECK(d.norm() <= traj.delta_bound + 1e-9);
  for (int i = 0; i < traj.steps(); ++i)
    CHECK((traj.states[i + 1] - traj.states[i]).norm() <=
          traj.h * traj.speed_bound + 1e-9);
}

TEST_CASE("per-step corrections stay in the scaled gamma cone") {
  SUBCASE("ball exterior") {
    Problem p = ballext_slide();
    Trajectory traj = integrate(p, 40);
    REQUIRE(traj.ok);
    for (int i = 0; i < traj.steps(); ++i) {
      if (traj.deltas[i].norm() <= 1e-9) continue;
      ConstraintSet c = set_at(p.set, traj.time(i + 1));
      std::optional<bool> g = in_gamma_r(c, traj.states[i + 1],
                                         -traj.deltas[i] / traj.f_sup, p.r / traj.f_sup);
      REQUIRE(g.has_value());
      CHECK(*g);
    }
  }
  SUBCASE("half-space") {
    Problem p = halfplane_slide();
    Trajectory traj = integrate(p, 16);
    REQUIRE(traj.ok);
    for (int i = 0; i < traj.steps(); ++i) {
      std::optional<bool> g = in_gamma_r(set_at(p.set, traj.time(i + 1)),
                                         traj.states[i + 1],
                                         -traj.deltas[i] / traj.f_sup, 10.0);
      REQUIRE(g.has_value());
      CHECK(*g);
    }
  }
}

TEST_CASE("admissibility rule") {
  Problem p;
  DiskSystem sys{2, 1.0, {}};
  p.set = MovingSet{ConstraintSet(sys), FixedMotion{}};
  p.f = Perturbation{[](const Vector&) { return vec({1, 0, -1, 0}); },
                     std::sqrt(2.0), false};
  p.u0 = vec({-1, 0, 1, 0});
  p.horizon = 1.0;
  p.r = 1.0;
  CHECK(min_admissible_steps(p) == 3);
  CHECK_THROWS_WITH_AS(integrate(p, 2),
                       "integrate: n = 2 violates the step rule; minimal admissible n is 3",
                       input_error);
  CHECK(integrate(p, 3).ok);
}

TEST_CASE("integrate input guards") {
  SUBCASE("infeasible start") {
    Problem p = halfplane_slide();
    p.u0 = vec({0, 1});
    CHECK_THROWS_AS(integrate(p, 8), input_error);
  }
  SUBCASE("drive exceeding its declared bound is reported at the step") {
    Problem p = halfplane_slide();
    p.f = Perturbation{[](const Vector&) { return vec({10, 0}); }, 1.0, false};
    CHECK_THROWS_WITH_AS(integrate(p, 8),
                         "integrate: perturbation exceeds its declared bound at step 0",
                         input_error);
  }
}

TEST_CASE("effective sup and linear growth") {
  Problem p = halfplane_slide();
  p.f.bound = 3.0;
  CHECK(effective_sup(p) == 3.0);

  Problem decay;
  decay.set = MovingSet{lower_half_plane(), FixedMotion{}};
  decay.f = Perturbation{[](const Vector& x) { return Vector(-0.2 * x); }, 0.2, true};
  decay.u0 = vec({3, 0});
  decay.horizon = 2.0;
  CHECK(effective_sup(decay) == doctest::Approx(0.2 * std::exp(0.8) * 4.0).epsilon(1e-14));
  // 4 L T = 1.6 dominates the (infinite-budget) step rule here.
  CHECK(min_admissible_steps(decay) == 2);
  Trajectory traj = integrate(decay, 32);
  REQUIRE(traj.ok);
  // Pure tangential decay: x(t) = 3 (1 - 0.2 h)^i on the grid.
  double expect = 3.0;
  for (int i = 0; i <= 32; ++i) {
    CHECK(std::abs(traj.states[i][0] - expect) <= 1e-12);
    CHECK(traj.states[i][1] == 0.0);
    expect *= 1.0 - 0.2 * traj.h;
  }
}

TEST_CASE("interpolation clamps to the grid span") {
  Trajectory t;
  t.h = 0.5;
  t.states = {vec({0, 0}), vec({1, 0}), vec({1, 1})};
  CHECK(t.at_time(0.25) == vec({0.5, 0}));
  CHECK(t.at_time(0.75) == vec({1, 0.5}));
  CHECK(t.at_time(-3.0) == vec({0, 0}));
  CHECK(t.at_time(99.0) == vec({1, 1}));
}

TEST_CASE("convergence study") {
  SUBCASE("exact runs are flagged instead of fitted") {
    ConvergenceStudy study = convergence_study(
        halfplane_slide(), {8, 16, 32}, {},
        [](double t) { return vec({t, 0.0}); });
    CHECK(study.exact);
    CHECK(study.fitted_order == kInf);
    for (const ConvergenceRow& row : study.rows) CHECK(row.gap <= 1e-13);
  }
  SUBCASE("swept half-space is exact against its closed form") {
    ConvergenceStudy study = convergence_study(
        sinking_half_plane(), {8, 16, 32}, {},
        [](double t) { return vec({0.0, -t}); });
    CHECK(study.exact);
  }
  SUBCASE("ball-exterior slide converges at first order") {
    ConvergenceStudy study = convergence_study(
        ballext_slide(), {20, 40, 80}, {}, ballext_reference);
    CHECK(!study.exact);
    CHECK(study.fitted_order >= 0.9);
    CHECK(study.fitted_order <= 1.5);
    REQUIRE(study.rows.size() == 3);
    for (const ConvergenceRow& row : study.rows) {
      CHECK(row.kappa == row.n * row.gap);
      CHECK(row.kappa >= 0.5 * study.rows[0].kappa);
      CHECK(row.kappa <= 2.0 * study.rows[0].kappa);
    }
    CHECK(std::isnan(study.rows[0].local_order));
    CHECK(study.rows[1].local_order == doctest::Approx(1.0).epsilon(0.35));
  }
  SUBCASE("self-referenced study against a finer grid") {
    Problem decay;
    decay.set = MovingSet{lower_half_plane(), FixedMotion{}};
    decay.f = Perturbation{[](const Vector& x) { return Vector(-0.2 * x); }, 0.2, true};
    decay.u0 = vec({3, 0});
    decay.horizon = 2.0;
    ConvergenceStudy study = convergence_study(decay, {8, 16, 32});
    CHECK(!study.exact);
    CHECK(study.fitted_order == doctest::Approx(1.0).epsilon(0.25));
  }
  SUBCASE("grid list validation") {
    CHECK_THROWS_AS(convergence_study(halfplane_slide(), {8, 16}), input_error);
    CHECK_THROWS_AS(convergence_study(halfplane_slide(), {8, 8, 16}), input_error);
  }
}
