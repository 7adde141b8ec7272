// Duality maps of the l^p spaces: hand values, algebraic identities, and a
// finite-difference check of the gradient property.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "sweep/duality.hpp"

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

}  // namespace

TEST_CASE("duality map hand values") {
  PNormSpace e2{2, 2.0};
  PNormSpace p4{2, 4.0};
  SUBCASE("p = 2 is the identity, exactly") {
    Vector x = vec({0.3, -1.7});
    CHECK(jp(e2, x) == x);
    std::mt19937_64 gen(3);
    for (int k = 0; k < 20; ++k) {
      Vector y = oracle::gaussian(gen, 5);
      CHECK(jp(PNormSpace{5, 2.0}, y) == y);
    }
  }
  SUBCASE("p = 4 cubes the coordinates") {
    CHECK(jp(p4, vec({1, -2})) == vec({1, -8}));
    CHECK(jp(p4, vec({0, 0})) == vec({0, 0}));
    CHECK(jp(p4, vec({-1, 0})) == vec({-1, 0}));
  }
  SUBCASE("norm gradient") {
    Vector g = norm_gradient(e2, vec({3, 4}));
    CHECK((g - vec({0.6, 0.8})).norm() <= 1e-15);

    Vector x = vec({1, -2});
    Vector g4 = norm_gradient(p4, x);
    CHECK(std::abs(g4.dot(x) - lp_norm(p4, x)) <= 1e-10);
    CHECK(std::abs(lp_norm(p4, x) - std::pow(17.0, 0.25)) <= 1e-12);

    Vector e1 = vec({1, 0});
    CHECK((norm_gradient(p4, e1) - e1).norm() <= 1e-12);
  }
  SUBCASE("norm gradient has unit dual norm") {
    std::mt19937_64 gen(9);
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
      PNormSpace space{4, p};
      PNormSpace dual{4, dual_exponent(p)};
      for (int k = 0; k < 50; ++k) {
        Vector x = oracle::gaussian(gen, 4);
        if (lp_norm(space, x) < 1e-6) continue;
        Vector g = norm_gradient(space, x);
        if (p == 2.0) {
          CHECK(std::abs(g.norm() - 1.0) <= 1e-10);
        } else {
          // q = p/(p-1) < 2 steps outside the validated family; evaluate the
          // dual norm directly.
          double q = dual.p;
          double s = 0.0;
          for (Eigen::Index i = 0; i < g.size(); ++i) s += std::pow(std::abs(g[i]), q);
          CHECK(std::abs(std::pow(s, 1.0 / q) - 1.0) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("duality map identities") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  for (double p : {2.0, 4.0, 6.0}) {
    PNormSpace space{3, p};
    for (int k = 0; k < 200; ++k) {
      Vector x = oracle::gaussian(gen, 3);
      double npow = std::pow(lp_norm(space, x), p);
      Vector j = jp(space, x);
      double s = 1.0 + npow + j.norm();
      // Pairing <J_p(x), x> = |x|_p^p.
      CHECK(std::abs(j.dot(x) - npow) <= 1e-9 * s);
      // Positive homogeneity of degree p - 1.
      double a = scale(gen);
      CHECK((jp(space, Vector(a * x)) - std::pow(a, p - 1.0) * j).norm() <=
            1e-9 * (1.0 + std::pow(a, p - 1.0)) * s);
    }
  }
}

TEST_CASE("duality map is the gradient of the p-th power mean") {
  std::mt19937_64 gen(55);
  for (double p : {2.0, 4.0, 6.0}) {
    PNormSpace space{3, p};
    auto phi = [&](const Vector& y) { return std::pow(lp_norm(space, y), p) / p; };
    for (int k = 0; k < 25; ++k) {
      Vector x = oracle::gaussian(gen, 3);
      Vector fd = oracle::fd_gradient(phi, x);
      CHECK((jp(space, x) - fd).norm() <= 1e-6 * (1.0 + fd.norm()));
    }
    // Near the origin the map flattens out (p > 2) or stays linear (p = 2).
    Vector tiny = 1e-3 * Vector::Ones(3);
    Vector fd = oracle::fd_gradient(phi, tiny);
    CHECK((jp(space, tiny) - fd).norm() <= 1e-6);
  }
}

TEST_CASE("local uniform continuity tightens with the neighbourhood") {
  // Worst-case |J_p(x) - J_p(y)| over |x - y| <= delta shrinks with delta.
  PNormSpace space{2, 4.0};
  std::mt19937_64 gen(77);
  Vector x0 = vec({0.8, -0.4});
  Vector j0 = jp(space, x0);
  double mod_coarse = 0.0, mod_fine = 0.0;
  for (int k = 0; k < 400; ++k) {
    Vector d = oracle::gaussian(gen, 2).normalized();
    mod_coarse = std::max(mod_coarse, (jp(space, Vector(x0 + 1e-2 * d)) - j0).norm());
    mod_fine = std::max(mod_fine, (jp(space, Vector(x0 + 1e-3 * d)) - j0).norm());
  }
  CHECK(mod_fine < mod_coarse);
  CHECK(mod_fine <= 0.2 * mod_coarse);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(jp(PNormSpace{2, 1.5}, vec({1, 1})), input_error);
  CHECK_THROWS_AS(jp(PNormSpace{0, 2.0}, Vector()), input_error);
  CHECK_THROWS_AS(jp(PNormSpace{2, kInf}, vec({1, 1})), input_error);
  CHECK_THROWS_AS(jp(PNormSpace{3, 4.0}, vec({1, 1})), input_error);  // dim mismatch
  CHECK_THROWS_AS(norm_gradient(PNormSpace{2, 4.0}, vec({0, 0})), input_error);
  CHECK(dual_exponent(2.0) == 2.0);
  CHECK(dual_exponent(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}
