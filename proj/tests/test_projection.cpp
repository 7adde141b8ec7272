// Projection oracles per set kind, the disk multistart solver, Gamma^r
// membership, and the directional prox-regularity certificate.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "sweep/projection.hpp"

#include <cmath>
#include <random>

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

ConstraintSet unit_disk_exterior() {
  return ConstraintSet(BallExterior{vec({0, 0}), 1.0});
}

}  // namespace

TEST_CASE("projection hand values per kind") {
  SUBCASE("half-space") {
    ProjectionResult pr = project(lower_half_plane(), vec({3, 2}));
    REQUIRE(pr.nearest.size() == 1);
    CHECK(pr.nearest[0] == vec({3, 0}));
    CHECK(pr.dist == 2.0);
    REQUIRE(pr.multipliers.size() == 1);
    CHECK(pr.multipliers[0] == 2.0);
  }
  SUBCASE("box") {
    ConstraintSet box(AxisBox{vec({-1, -1}), vec({1, 1})});
    ProjectionResult pr = project(box, vec({4, 0.5}));
    CHECK(pr.nearest[0] == vec({1, 0.5}));
    CHECK(pr.dist == 3.0);
  }
  SUBCASE("ball exterior, radial") {
    ProjectionResult pr = project(unit_disk_exterior(), vec({0.5, 0}));
    REQUIRE(pr.nearest.size() == 1);
    CHECK((pr.nearest[0] - vec({1, 0})).norm() <= 1e-15);
    CHECK(pr.dist == 0.5);
  }
  SUBCASE("ball exterior, center ties") {
    ProjectionResult pr = project(unit_disk_exterior(), vec({0, 0}));
    REQUIRE(pr.nearest.size() == 2);
    CHECK(pr.nearest[0] == vec({-1, 0}));  // lexicographically first
    CHECK(pr.nearest[1] == vec({1, 0}));
    CHECK(pr.dist == 1.0);
  }
  SUBCASE("cross set, diagonal tie") {
    ProjectionResult pr = project(ConstraintSet(CrossSet{0, 0}), vec({1, 1}));
    REQUIRE(pr.nearest.size() == 2);
    CHECK(pr.nearest[0] == vec({0, 1}));
    CHECK(pr.nearest[1] == vec({1, 0}));
    CHECK(pr.dist == 1.0);
  }
  SUBCASE("cross set, off the diagonal") {
    ProjectionResult pr = project(ConstraintSet(CrossSet{0, 0}), vec({3, 1}));
    REQUIRE(pr.nearest.size() == 1);
    CHECK(pr.nearest[0] == vec({3, 0}));
    CHECK(pr.dist == 1.0);
  }
  SUBCASE("feasible points are fixed") {
    CHECK(project(lower_half_plane(), vec({-2, -3})).dist == 0.0);
    CHECK(project(unit_disk_exterior(), vec({2, 2})).dist == 0.0);
  }
}

TEST_CASE("projection is idempotent and distance-consistent") {
  std::mt19937_64 gen(11);
  std::vector<ConstraintSet> sets;
  sets.push_back(lower_half_plane());
  sets.push_back(unit_disk_exterior());
  sets.emplace_back(AxisBox{vec({-1, 0}), vec({1, 2})});
  sets.emplace_back(CrossSet{0.5, -0.25});
  sets.emplace_back(
      Polyhedron{{HalfSpace{vec({0, 1}), 0.0}, HalfSpace{vec({1, 1}), 1.0}}});
  for (const ConstraintSet& s : sets) {
    for (int k = 0; k < 100; ++k) {
      Vector x = 3.0 * oracle::gaussian(gen, s.dim());
      ProjectionResult pr = project(s, x);
      REQUIRE(pr.converged);
      REQUIRE(!pr.nearest.empty());
      CHECK(std::abs(pr.dist - distance(s, x)) <= 1e-8 * (1.0 + x.norm()));
      for (const Vector& p : pr.nearest) {
        CHECK(member(s, p, 1e-9));
        CHECK(std::abs((x - p).norm() - pr.dist) <= 1e-8 * (1.0 + x.norm()));
      }
      ProjectionResult again = project(s, pr.nearest[0]);
      CHECK(again.dist <= 1e-9 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("disk projection: feasible configurations are fixed points") {
  DiskSystem sys{3, 0.5, {}};
  Vector q = vec({0, 0, 2, 0, 0, 2});
  ProjectionResult pr = project_disk_config(sys, q);
  REQUIRE(pr.nearest.size() == 1);
  CHECK(pr.nearest[0] == q);
  CHECK(pr.dist == 0.0);
  CHECK(pr.multipliers == std::vector<double>(3, 0.0));
}

TEST_CASE("disk projection: overlapping pair separates symmetrically") {
  DiskSystem sys{2, 1.0, {}};
  ProjectionResult pr = project_disk_config(sys, vec({0, 0, 1.8, 0}));
  REQUIRE(pr.converged);
  REQUIRE(pr.nearest.size() == 1);
  // Each center retreats 0.1 along the line of centers.
  CHECK((pr.nearest[0] - vec({-0.1, 0, 1.9, 0})).norm() <= 1e-7);
  CHECK(pr.dist == doctest::Approx(std::sqrt(0.02)).epsilon(1e-7));
  CHECK(signed_distance(sys, pr.nearest[0], 0, 1) >= -1e-9);
}

TEST_CASE("disk projection: coincident targets still split apart") {
  DiskSystem sys{2, 0.5, {}};
  ProjectionResult pr = project_disk_config(sys, vec({1, 1, 1, 1}));
  REQUIRE(pr.converged);
  for (const Vector& q : pr.nearest) {
    CHECK(feasible(sys, q, 1e-9));
    // Optimal split moves each center half the touching distance.
    CHECK(std::abs((q - vec({1, 1, 1, 1})).norm() - std::sqrt(0.5)) <= 1e-6);
  }
}

TEST_CASE("in_gamma_r membership") {
  SUBCASE("convex sets accept outward normals at any scale") {
    CHECK(*in_gamma_r(lower_half_plane(), vec({0, 0}), vec({0, 1}), 100.0));
    CHECK(!*in_gamma_r(lower_half_plane(), vec({0, 0}), vec({1, 1}), 1.0));
  }
  SUBCASE("ball exterior accepts the inward normal up to the radius") {
    CHECK(*in_gamma_r(unit_disk_exterior(), vec({1, 0}), vec({-1, 0}), 0.9));
    CHECK(!*in_gamma_r(unit_disk_exterior(), vec({1, 0}), vec({-1, 0}), 1.1));
  }
  SUBCASE("zero direction is always good") {
    CHECK(*in_gamma_r(unit_disk_exterior(), vec({1, 0}), vec({0, 0}), 1e6));
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(in_gamma_r(lower_half_plane(), vec({0, 1}), vec({0, 1}), 1.0),
                    input_error);
    CHECK_THROWS_AS(in_gamma_r(lower_half_plane(), vec({0, 0}), vec({0, 1}), 0.0),
                    input_error);
  }
}

TEST_CASE("gamma directions shrink to smaller scales") {
  // lambda v stays good for lambda in (0,1) whenever v is good.
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::uniform_real_distribution<double> scl(0.1, 0.9);
  ConstraintSet be = unit_disk_exterior();
  ConstraintSet hp = lower_half_plane();
  for (int k = 0; k < 50; ++k) {
    Vector dir = oracle::gaussian(gen, 2).normalized();
    double m = mag(gen);
    double r = scl(gen) / m;  // keeps r |v| inside the radius
    Vector x = dir;
    Vector v = -m * dir;
    REQUIRE(*in_gamma_r(be, x, v, r));
    for (int ten = 1; ten <= 9; ++ten)
      CHECK(*in_gamma_r(be, x, v * (0.1 * ten), r));

    Vector xh = vec({mag(gen), 0.0});
    Vector vh = vec({0.0, mag(gen)});
    REQUIRE(*in_gamma_r(hp, xh, vh, 10.0));
    for (int ten = 1; ten <= 9; ++ten)
      CHECK(*in_gamma_r(hp, xh, vh * (0.1 * ten), 10.0));
  }
}

TEST_CASE("directional prox certificate on the cross set") {
  ConstraintSet cross{CrossSet{0, 0}};
  std::vector<Vector> samples = {vec({0, 0}),  vec({2, 0}),  vec({0, 2}),
                                 vec({-1, 3}), vec({3, -1}), vec({-1, -1})};
  SUBCASE("pulling into the corner certifies at huge scales") {
    auto f = [](const Vector&) { return vec({-1, -1}); };
    DirectionalProxReport rep =
        certify_directional_prox(cross, f, 1e6, samples, {0.5, 1.0, 2.0});
    CHECK(rep.certified());
    CHECK(rep.checked == static_cast<int>(samples.size()) * 3);
  }
  SUBCASE("pushing out of the corner fails stage a") {
    auto f = [](const Vector&) { return vec({1, 1}); };
    DirectionalProxReport rep =
        certify_directional_prox(cross, f, 2.0, {vec({0, 0})}, {1.0});
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].stage == 'a');
    CHECK(rep.violations[0].s == 1.0);
    CHECK(!rep.certified());
  }
  SUBCASE("uniformly prox-regular sets certify every direction") {
    std::mt19937_64 gen(5);
    std::vector<Vector> on_circle;
    for (int k = 0; k < 20; ++k)
      on_circle.push_back(oracle::gaussian(gen, 2).normalized());
    auto f = [](const Vector&) { return vec({1, 0}); };
    DirectionalProxReport rep =
        certify_directional_prox(unit_disk_exterior(), f, 0.5, on_circle, {0.1, 0.25, 0.4});
    CHECK(rep.certified());
    CHECK(rep.indeterminate == 0);
  }
  SUBCASE("grid and sample validation") {
    auto f = [](const Vector&) { return vec({-1, -1}); };
    CHECK_THROWS_AS(certify_directional_prox(cross, f, 1.0, samples, {1.5}), input_error);
    CHECK_THROWS_AS(certify_directional_prox(cross, f, 1.0, {vec({1, 1})}, {0.5}),
                    input_error);
  }
}

TEST_CASE("vanishing perturbations certify vacuously") {
  auto f = [](const Vector&) { return vec({0, 0}); };
  DirectionalProxReport rep = certify_directional_prox(
      unit_disk_exterior(), f, 1.0, {vec({1, 0}), vec({0, -1})}, {0.5});
  CHECK(rep.certified());
  CHECK(rep.checked == 2);
}
