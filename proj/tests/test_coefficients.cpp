#include <cmath>

#include "doctest.h"
#include "sllg/collective.hpp"
#include "sllg/rng.hpp"

using namespace sllg;

namespace {

ModelParams params(double lambda, double sigma, Vec3 g) {
  ModelParams p;
  p.lambda = lambda;
  p.sigma = sigma;
  p.g = g;
  return p;
}

}  // namespace

TEST_CASE("symmetric configuration values") {
  ModelParams p = params(1.7, 0.4, {0.3, -1.1, 2.2});
  for (double w : {0.4, 1.0, 2.5}) {
    CCCoefficients c = cc_coefficients(CCState{w, 0.0, 0.0, 0.0, 0.0}, p);
    CHECK(c.f[kW] ==
          doctest::Approx(6.0 * p.lambda / (M_PI * M_PI) * (1.0 / w - w)).epsilon(1e-12));
    CHECK(c.f[kPhi] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c.s[kW] == 0.0);
    CHECK(c.s[kPhi] == 0.0);
    CHECK(c.s[kTheta] == doctest::Approx(-p.sigma * p.g.z).epsilon(1e-12));
    CHECK(c.s[kEta] == doctest::Approx(p.sigma * p.g.y).epsilon(1e-12));
    CHECK(c.s[kPsi] == doctest::Approx(-p.sigma * p.g.x).epsilon(1e-12));
    // the psi drift at the symmetric point is pure Ito correction
    CHECK(c.f[kPsi] == doctest::Approx(0.5 * p.sigma * p.sigma * p.g.y * p.g.z).epsilon(1e-10));
  }
  // fixed point of the width relaxation
  CHECK(cc_coefficients(CCState{1.0, 0.0, 0.0, 0.0, 0.0}, p).f[kW] ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("width drift at the flipped configuration") {
  ModelParams p = params(1.0, 0.3, {1, 1, 1});
  for (double eta : {0.0, -0.7, 0.7, 1.3}) {
    for (double w : {0.5, 1.0, 2.0, 5.0}) {
      CCCoefficients c = cc_coefficients(CCState{w, M_PI / 2, eta, 0.0, M_PI}, p);
      double expected = 6.0 * p.lambda * (1.0 + w * w) / (M_PI * M_PI * w);
      CHECK(c.f[kW] == doctest::Approx(expected).epsilon(1e-12));
      CHECK(c.f[kW] > 0.0);
    }
  }
}

TEST_CASE("position drift is linear in the width") {
  ModelParams p = params(1.0, 0.3, {1, 1, 1});
  CCState s{1.0, 0.8, 0.4, 0.0, 2.0};
  double f1 = cc_coefficients(s, p).f[kPhi];
  REQUIRE(std::abs(f1) > 1e-3);  // pick a configuration with nonzero drift
  s.w = 2.0;
  CHECK(cc_coefficients(s, p).f[kPhi] == doctest::Approx(2.0 * f1).epsilon(1e-13));
  s.w = 16.0;
  CHECK(cc_coefficients(s, p).f[kPhi] == doctest::Approx(16.0 * f1).epsilon(1e-13));
}

TEST_CASE("rotational degeneracy of the axis-aligned noise") {
  ModelParams p = params(2.0, 0.25, {1, 0, 0});
  for (double w : {0.5, 1.3}) {
    for (double psi : {0.0, 1.1}) {
      CCCoefficients c = cc_coefficients(CCState{w, 0.0, 0.0, 0.0, psi}, p);
      CHECK(c.f[kTheta] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(c.f[kEta] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(c.s[kTheta] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(c.s[kEta] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(c.f[kPhi] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(c.s[kPsi] == doctest::Approx(-p.sigma).epsilon(1e-14));
      CHECK(c.f[kW] ==
            doctest::Approx(6.0 * p.lambda / (M_PI * M_PI * w) * (1.0 - w * w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("domain guards") {
  ModelParams p = params(1.0, 0.3, {1, 1, 1});
  CHECK_THROWS_AS(cc_coefficients(CCState{0.0, 0, 0, 0, 0}, p), ValidationError);
  CHECK_THROWS_AS(cc_coefficients(CCState{-1.0, 0, 0, 0, 0}, p), ValidationError);
  CHECK_THROWS_AS(cc_coefficients(CCState{1.0, 0.0, M_PI / 2 - 1e-7, 0.0, 0.0}, p),
                  ChartSingularity);
}

TEST_CASE("amplitude-chart drifts equal the angle-chart rows") {
  RngStream rng(21, 0);
  for (std::uint64_t i = 0; i < 500; ++i) {
    CCState s;
    s.w = 0.1 + 4.0 * rng.uniform(10 * i);
    s.theta = 20.0 * (rng.uniform(10 * i + 1) - 0.5);
    s.eta = (M_PI - 2e-3) * (rng.uniform(10 * i + 2) - 0.5);
    s.psi = 20.0 * (rng.uniform(10 * i + 3) - 0.5);
    ModelParams p = params(0.2 + 4.0 * rng.uniform(10 * i + 4), 0.3, {1, 1, 1});
    CCCoefficients c = cc_coefficients(s, p);
    AmplitudeState a = angles_to_amplitudes(s);
    CHECK(amplitude_width_drift(a, p.lambda) ==
          doctest::Approx(c.f[kW]).epsilon(1e-11));
    CHECK(amplitude_position_drift(a, p.lambda) ==
          doctest::Approx(c.f[kPhi]).epsilon(1e-11));
    for (double v : c.f) CHECK(std::isfinite(v));
    for (double v : c.s) CHECK(std::isfinite(v));
  }
}

TEST_CASE("amplitude drifts stay finite and smooth at the pole") {
  // the angle chart is singular at |A3| = 1; the amplitude forms are not
  AmplitudeState a;
  a.A = {0.0, 0.0, 1.0};
  a.B = {std::sqrt(0.5), std::sqrt(0.5), 0.0};
  a.w = 1.3;
  double fw = amplitude_width_drift(a, 1.0);
  double fp = amplitude_position_drift(a, 1.0);
  CHECK(std::isfinite(fw));
  CHECK(std::isfinite(fp));
  Vec3 dB = amplitude_drift_B(a.A, a.B, 1.0);
  CHECK(std::isfinite(dB.x));
  CHECK(std::isfinite(dB.y));
  CHECK(std::isfinite(dB.z));
  // approaching the pole along a meridian converges to the pole value
  CCState near{1.3, M_PI / 4, M_PI / 2 - 1e-5, 0.0, M_PI / 4 - 1e-5};
  AmplitudeState an = angles_to_amplitudes(near);
  // same B1 ray: compare drift against a state 10x closer to the pole
  CCState nearer = near;
  nearer.eta = M_PI / 2 - 1e-6;
  AmplitudeState an2 = angles_to_amplitudes(nearer);
  CHECK(std::abs(amplitude_width_drift(an, 1.0) - amplitude_width_drift(an2, 1.0)) < 1e-3);
}
