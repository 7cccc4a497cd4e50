#include <cmath>

#include "doctest.h"
#include "sllg/rng.hpp"
#include "sllg/vec3.hpp"

using namespace sllg;

TEST_CASE("vector algebra basics") {
  Vec3 a{1.0, 2.0, 3.0}, b{-2.0, 0.5, 4.0};
  CHECK(dot(a, b) == doctest::Approx(11.0));
  Vec3 c = cross(a, b);
  CHECK(dot(a, c) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(dot(b, c) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));
  Vec3 u = normalized(a);
  CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-15));
  Vec3 s = 2.0 * a - b * 0.5 + (-a);
  CHECK(s.x == doctest::Approx(2.0));
  CHECK(s.y == doctest::Approx(1.75));
  CHECK(s.z == doctest::Approx(1.0));
  CHECK(a[0] == 1.0);
  CHECK(a[2] == 3.0);
}

TEST_CASE("cross product handedness") {
  Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  Vec3 c = cross(e1, e2);
  CHECK(c.x == 0.0);
  CHECK(c.y == 0.0);
  CHECK(c.z == 1.0);
  c = cross(e2, e3);
  CHECK(c.x == 1.0);
  c = cross(e3, e1);
  CHECK(c.y == 1.0);
}

TEST_CASE("axis rotations are right handed") {
  Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  double h = M_PI / 2;
  // rotating e1 about axis 3 by +pi/2 gives e2, and cyclically
  Vec3 r = rotate_axis(3, h, e1);
  CHECK(r.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.y == doctest::Approx(1.0));
  r = rotate_axis(1, h, e2);
  CHECK(r.z == doctest::Approx(1.0));
  r = rotate_axis(2, h, e3);
  CHECK(r.x == doctest::Approx(1.0));
}

TEST_CASE("rotations preserve norm") {
  RngStream rng(7, 0);
  for (int i = 0; i < 200; ++i) {
    Vec3 v{rng.normal(static_cast<std::uint64_t>(3 * i)),
           rng.normal(static_cast<std::uint64_t>(3 * i + 1)),
           rng.normal(static_cast<std::uint64_t>(3 * i + 2))};
    double angle = 10.0 * (rng.uniform(static_cast<std::uint64_t>(i), 1) - 0.5);
    for (int axis = 1; axis <= 3; ++axis) {
      Vec3 r = rotate_axis(axis, angle, v);
      CHECK(std::abs(norm(r) - norm(v)) <= 1e-14 * (1.0 + norm(v)));
    }
  }
}

TEST_CASE("rotation composes with its inverse") {
  Vec3 v{0.3, -1.2, 0.8};
  for (int axis = 1; axis <= 3; ++axis) {
    Vec3 w = rotate_axis(axis, -0.7, rotate_axis(axis, 0.7, v));
    CHECK(norm(w - v) <= 1e-15);
  }
}
