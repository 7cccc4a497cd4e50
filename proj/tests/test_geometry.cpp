#include <cmath>

#include "doctest.h"
#include "sllg/geometry.hpp"
#include "sllg/rng.hpp"

using namespace sllg;

namespace {

CCState random_state(const RngStream& rng, std::uint64_t i) {
  CCState s;
  s.w = 0.2 + 3.0 * rng.uniform(10 * i);
  s.theta = 20.0 * (rng.uniform(10 * i + 1) - 0.5);
  s.eta = (M_PI - 2e-4) * (rng.uniform(10 * i + 2) - 0.5);
  s.phi = 40.0 * (rng.uniform(10 * i + 3) - 0.5);
  s.psi = 20.0 * (rng.uniform(10 * i + 4) - 0.5);
  return s;
}

}  // namespace

TEST_CASE("front profile and derivatives") {
  Vec3 m0 = front_profile(0.0);
  CHECK(m0.x == 0.0);
  CHECK(m0.y == 1.0);
  CHECK(m0.z == 0.0);
  CHECK(norm(front_profile(3.7)) == doctest::Approx(1.0).epsilon(1e-14));
  // analytic derivatives against central differences
  const double h = 1e-5;
  for (double x : {-2.0, -0.3, 0.0, 1.1, 4.0}) {
    Vec3 d1 = front_profile_d1(x);
    Vec3 fd1 = (1.0 / (2.0 * h)) * (front_profile(x + h) - front_profile(x - h));
    CHECK(norm(d1 - fd1) <= 1e-9);
    Vec3 d2 = front_profile_d2(x);
    Vec3 fd2 = (1.0 / (h * h)) *
               (front_profile(x + h) - 2.0 * front_profile(x) + front_profile(x - h));
    CHECK(norm(d2 - fd2) <= 1e-5);
  }
}

TEST_CASE("angles_to_amplitudes matches the rotation columns") {
  AmplitudeState a = angles_to_amplitudes(CCState{1.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(norm(a.A - Vec3{1, 0, 0}) <= 1e-15);
  CHECK(norm(a.B - Vec3{0, 1, 0}) <= 1e-15);

  a = angles_to_amplitudes(CCState{1.0, M_PI / 2, 0.0, 0.0, 0.0});
  CHECK(norm(a.A - Vec3{0, 1, 0}) <= 1e-15);
  CHECK(norm(a.B - Vec3{-1, 0, 0}) <= 1e-15);

  RngStream rng(11, 0);
  for (std::uint64_t i = 0; i < 300; ++i) {
    AmplitudeState r = angles_to_amplitudes(random_state(rng, i));
    CHECK(std::abs(norm(r.A) - 1.0) <= 1e-14);
    CHECK(std::abs(norm(r.B) - 1.0) <= 1e-14);
    CHECK(std::abs(dot(r.A, r.B)) <= 1e-14);
  }
}

TEST_CASE("chart round trip on random valid states") {
  RngStream rng(12, 0);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    CCState s = random_state(rng, i);
    AmplitudeState a = angles_to_amplitudes(s);
    CCState back = amplitudes_to_angles(a);
    AmplitudeState again = angles_to_amplitudes(back);
    worst = std::max(worst, norm(again.A - a.A) + norm(again.B - a.B) +
                                std::abs(again.w - a.w) + std::abs(again.phi - a.phi));
    // eta comes back on the arcsin branch; theta, psi up to 2 pi shifts
    CHECK(std::abs(back.eta) < M_PI / 2);
    CHECK(std::abs(std::remainder(back.theta - s.theta, 2.0 * M_PI)) <= 1e-9);
    CHECK(std::abs(std::remainder(back.psi - s.psi, 2.0 * M_PI)) <= 1e-9);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("inverse chart rejects the pole") {
  AmplitudeState a;
  a.A = {0.0, 0.0, 1.0};
  a.B = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(amplitudes_to_angles(a), ChartSingularity);
}

TEST_CASE("ansatz equals its amplitude form pointwise") {
  RngStream rng(13, 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    CCState s = random_state(rng, i);
    AmplitudeState a = angles_to_amplitudes(s);
    for (double x : {-7.0, 0.0, 3.3, 15.0}) {
      double xi = (x - s.phi) / s.w;
      Vec3 direct = evaluate_ansatz(s, x);
      Vec3 amp = std::tanh(xi) * a.A + (1.0 / std::cosh(xi)) * a.B;
      CHECK(norm(direct - amp) <= 1e-12);
    }
  }
}

TEST_CASE("ansatz evaluation is a unit field") {
  CCState s{0.7, 1.2, -0.9, 3.0, 2.5};
  for (double x = -10.0; x <= 10.0; x += 0.37)
    CHECK(std::abs(norm(evaluate_ansatz(s, x)) - 1.0) <= 1e-14);
}
