#include <cmath>
#include <vector>

#include "doctest.h"
#include "sllg/collective.hpp"
#include "sllg/rng.hpp"

using namespace sllg;

namespace {

ModelParams params(double lambda, double sigma, Vec3 g, std::uint64_t seed = 7) {
  ModelParams p;
  p.lambda = lambda;
  p.sigma = sigma;
  p.g = g;
  p.seed = seed;
  return p;
}

// plain Euler-Maruyama in the angle chart, optionally negating the eta row;
// used to discriminate the sign of the eta dynamics against the chart-free
// amplitude integration
CCState euler_angles(CCState s, const ModelParams& p, double T, double dt, bool flip_eta) {
  RngStream rng(p.seed, 0);
  long n = static_cast<long>(std::llround(T / dt));
  double sq = std::sqrt(dt);
  for (long k = 0; k < n; ++k) {
    double dW = sq * rng.normal(static_cast<std::uint64_t>(k));
    CCCoefficients c = cc_coefficients(s, p);
    double fe = flip_eta ? -c.f[kEta] : c.f[kEta];
    double se = flip_eta ? -c.s[kEta] : c.s[kEta];
    s.w += c.f[kW] * dt;
    s.theta += c.f[kTheta] * dt + c.s[kTheta] * dW;
    s.eta += fe * dt + se * dW;
    s.phi += c.f[kPhi] * dt;
    s.psi += c.f[kPsi] * dt + c.s[kPsi] * dW;
  }
  return s;
}

double amplitude_gap(const CCState& a, const CCState& b) {
  AmplitudeState ua = angles_to_amplitudes(a);
  AmplitudeState ub = angles_to_amplitudes(b);
  return norm(ua.A - ub.A) + norm(ua.B - ub.B);
}

}  // namespace

TEST_CASE("noise-free width relaxation is monotone") {
  ModelParams p = params(1.0, 0.0, {1, 1, 1});
  CCTrajectory tr = simulate_cc(p, CCState{0.5, 0.0, 0.0, 0.0, 0.0}, 20.0, 1e-3, 100);
  double prev = 0.0;
  bool monotone = true;
  for (const CCSample& s : tr.samples) {
    if (s.state.w < prev - 1e-12) monotone = false;
    prev = s.state.w;
    CHECK(s.state.theta == 0.0);
    CHECK(s.state.phi == 0.0);
  }
  CHECK(monotone);
  CHECK(std::abs(tr.samples.back().state.w - 1.0) < 1e-3);
}

TEST_CASE("axis-aligned noise integrates the linear system exactly") {
  ModelParams p = params(1.0, 0.25, {1, 0, 0}, 99);
  CCTrajectory tr = simulate_cc(p, CCState{0.8, 0.0, 0.0, 0.0, 0.0}, 10.0, 1e-4, 200, 3);
  for (const CCSample& s : tr.samples) {
    CHECK(s.state.phi == 0.0);  // exact, not approximate
    CHECK(std::abs(s.state.psi + p.sigma * s.W) < 1e-3);
    CHECK(s.state.theta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.state.eta == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(std::abs(tr.samples.back().state.w - 1.0) < 2e-3);
}

TEST_CASE("identical seed reproduces the trajectory bitwise") {
  ModelParams p = params(1.0, 0.3, {1, 1, 1}, 4242);
  CCState init{1.0, 0.0, 0.0, 0.0, 0.0};
  CCTrajectory a = simulate_cc(p, init, 5.0, 1e-3, 50, 2);
  CCTrajectory b = simulate_cc(p, init, 5.0, 1e-3, 50, 2);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].state.w == b.samples[i].state.w);
    CHECK(a.samples[i].state.phi == b.samples[i].state.phi);
    CHECK(a.samples[i].state.psi == b.samples[i].state.psi);
    CHECK(a.samples[i].W == b.samples[i].W);
  }
  // a different stream decorrelates
  CCTrajectory c = simulate_cc(p, init, 5.0, 1e-3, 50, 3);
  CHECK(c.samples.back().state.w != a.samples.back().state.w);
}

TEST_CASE("sample layout and first sample") {
  ModelParams p = params(1.0, 0.3, {1, 1, 1});
  CCState init{0.9, 0.2, -0.1, 3.0, 0.4};
  CCTrajectory tr = simulate_cc(p, init, 1.0, 1e-3, 100);
  CHECK(tr.samples.size() == 11);
  CHECK(tr.samples[0].t == 0.0);
  CHECK(tr.samples[0].state.w == init.w);
  CHECK(tr.samples[0].state.theta == init.theta);
  CHECK(tr.samples[0].state.phi == init.phi);
  CHECK(tr.samples[1].t == doctest::Approx(0.1));
  CHECK(tr.clamped_records == 0);
  CHECK_THROWS_AS(simulate_cc(p, init, -1.0, 1e-3, 10), ValidationError);
  CHECK_THROWS_AS(simulate_cc(p, init, 1.0, 0.0, 10), ValidationError);
}

TEST_CASE("angle chart and amplitude chart integrate the same dynamics") {
  ModelParams p = params(1.0, 0.2, {1, 1, 1}, 314);
  CCState init{0.9, 0.4, -0.3, 0.0, 0.7};
  double T = 2.0, dt = 1e-4;

  // reference: reject-and-halve angle stepping on the same Wiener stream
  RngStream rng(p.seed, 0);
  CCState s = init;
  double sq = std::sqrt(dt);
  long n = static_cast<long>(std::llround(T / dt));
  for (long k = 0; k < n; ++k) s = cc_step(s, p, sq * rng.normal(static_cast<std::uint64_t>(k)), dt);

  CCTrajectory tr = simulate_cc(p, init, T, dt, static_cast<int>(n), 0);
  double gap = amplitude_gap(s, tr.samples.back().state);
  CHECK(gap < 2e-2);
  CHECK(std::abs(s.w - tr.samples.back().state.w) < 2e-2);

  // negating the eta row is not the same dynamics: the gap grows two orders
  CCState flipped = euler_angles(init, p, T, dt, true);
  CCState straight = euler_angles(init, p, T, dt, false);
  CHECK(amplitude_gap(straight, tr.samples.back().state) < 2e-2);
  CHECK(amplitude_gap(flipped, tr.samples.back().state) > 0.1);
}

TEST_CASE("amplitude step preserves the frame over many steps") {
  ModelParams p = params(1.0, 0.3, {1, 1, 1}, 11);
  AmplitudeState a = angles_to_amplitudes(CCState{1.0, 0.3, 0.2, 0.0, -0.5});
  RngStream rng(11, 0);
  double dt = 1e-4, sq = std::sqrt(dt);
  double worst_defect = 0.0;
  for (long k = 0; k < 1000000; ++k) {
    double defect = amplitude_step(a, p, sq * rng.normal(static_cast<std::uint64_t>(k)), dt);
    worst_defect = std::max(worst_defect, defect);
    if ((k & 0xffff) == 0) {
      CHECK(std::abs(norm(a.A) - 1.0) <= 1e-8);
      CHECK(std::abs(norm(a.B) - 1.0) <= 1e-8);
      CHECK(std::abs(dot(a.A, a.B)) <= 1e-8);
    }
  }
  CHECK(std::abs(norm(a.A) - 1.0) <= 1e-8);
  CHECK(std::abs(norm(a.B) - 1.0) <= 1e-8);
  CHECK(std::abs(dot(a.A, a.B)) <= 1e-8);
  CHECK(worst_defect < 1e-4);
  CHECK(a.w > 0.0);
}

TEST_CASE("amplitude step fixed point and pole guard") {
  ModelParams p = params(1.5, 0.0, {1, 0, 0});
  AmplitudeState a;
  a.A = {1.0, 0.0, 0.0};
  a.B = {0.0, 1.0, 0.0};
  a.w = 1.0;
  amplitude_step(a, p, 0.0, 1e-3);
  CHECK(a.A.x == 1.0);  // e1 is a zero of the A drift and of A x g
  CHECK(a.A.y == 0.0);
  CHECK(a.A.z == 0.0);

  AmplitudeState pole;
  pole.A = {1e-7, 0.0, std::sqrt(1.0 - 1e-14)};
  pole.B = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(amplitude_step(pole, p, 0.0, 1e-3), PoleSingularity);
}

TEST_CASE("event detection on a constructed trajectory") {
  CCTrajectory tr;
  auto push = [&](double t, double w, double phi) {
    CCSample s;
    s.t = t;
    s.state = CCState{w, 0.0, 0.0, phi, 0.0};
    tr.samples.push_back(s);
  };
  for (int i = 0; i < 500; ++i) {
    double w = 1.0, phi = 0.0;
    if (i >= 100 && i <= 110) {
      w = (i == 105) ? 5.0 : 3.0;
      phi = 2.0;  // position shifts inside the first excursion
    }
    if (i > 110) phi = 2.0;
    if (i >= 300 && i <= 305) w = 3.2;
    push(0.1 * i, w, phi);
  }

  SUBCASE("no excursions above a high threshold") {
    CHECK(detect_events(tr, 10.0).empty());
  }
  SUBCASE("two separated events") {
    auto ev = detect_events(tr, 2.5, 10);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].start == doctest::Approx(10.0));
    CHECK(ev[0].end == doctest::Approx(11.0));
    CHECK(ev[0].peak_w == doctest::Approx(5.0));
    CHECK(ev[0].delta_phi == doctest::Approx(2.0));
    CHECK(ev[1].peak_w == doctest::Approx(3.2));
    CHECK(ev[1].delta_phi == doctest::Approx(0.0));
  }
  SUBCASE("nearby excursions merge") {
    // gap between samples 110 and 300 is large; use a huge merge window
    auto ev = detect_events(tr, 2.5, 200);
    CHECK(ev.size() == 1);
    CHECK(ev[0].peak_w == doctest::Approx(5.0));
  }
}

TEST_CASE("flat trajectory has no events") {
  ModelParams p = params(1.0, 0.0, {1, 1, 1});
  CCTrajectory tr = simulate_cc(p, CCState{1.0, 0.0, 0.0, 0.0, 0.0}, 5.0, 1e-3, 10);
  CHECK(detect_events(tr, 2.0).empty());
}
