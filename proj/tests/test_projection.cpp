#include <cmath>

#include "doctest.h"
#include "sllg/ansatz_calculus.hpp"
#include "sllg/collective.hpp"
#include "sllg/rng.hpp"

using namespace sllg;

namespace {

CCState random_state(const RngStream& rng, std::uint64_t i) {
  CCState s;
  s.w = 0.4 + 2.0 * rng.uniform(10 * i);
  s.theta = 6.0 * (rng.uniform(10 * i + 1) - 0.5);
  s.eta = 2.4 * (rng.uniform(10 * i + 2) - 0.5);
  s.phi = 10.0 * (rng.uniform(10 * i + 3) - 0.5);
  s.psi = 6.0 * (rng.uniform(10 * i + 4) - 0.5);
  return s;
}

CCState bump(const CCState& s, int k, double h) {
  CCState t = s;
  switch (k) {
    case 0: t.w += h; break;
    case 1: t.theta += h; break;
    case 2: t.eta += h; break;
    case 3: t.phi += h; break;
    default: t.psi += h; break;
  }
  return t;
}

}  // namespace

TEST_CASE("analytic ansatz partials match finite differences") {
  RngStream rng(41, 0);
  const double h = 1e-6;
  for (std::uint64_t i = 0; i < 30; ++i) {
    CCState s = random_state(rng, i);
    for (double x : {-3.0, 0.5, 4.2}) {
      double xs = s.phi + x * s.w;  // probe relative to the front
      for (int k = 0; k < 5; ++k) {
        Vec3 a = ansatz_partial(s, k, xs);
        Vec3 fd = (1.0 / (2.0 * h)) *
                  (evaluate_ansatz(bump(s, k, h), xs) - evaluate_ansatz(bump(s, k, -h), xs));
        CHECK(norm(a - fd) <= 1e-7 * (1.0 + norm(a)));
      }
    }
  }
}

TEST_CASE("analytic second partials match finite differences") {
  RngStream rng(42, 0);
  const double h = 1e-4;
  for (std::uint64_t i = 0; i < 10; ++i) {
    CCState s = random_state(rng, i);
    double xs = s.phi + 0.7 * s.w;
    for (int a = 0; a < 5; ++a) {
      for (int b = a; b < 5; ++b) {
        Vec3 d2 = ansatz_second_partial(s, a, b, xs);
        Vec3 fd = (1.0 / (4.0 * h * h)) *
                  (evaluate_ansatz(bump(bump(s, a, h), b, h), xs) -
                   evaluate_ansatz(bump(bump(s, a, h), b, -h), xs) -
                   evaluate_ansatz(bump(bump(s, a, -h), b, h), xs) +
                   evaluate_ansatz(bump(bump(s, a, -h), b, -h), xs));
        CHECK(norm(d2 - fd) <= 2e-5 * (1.0 + norm(d2)));
        // symmetry of mixed partials
        Vec3 d2t = ansatz_second_partial(s, b, a, xs);
        CHECK(norm(d2 - d2t) <= 1e-12);
      }
    }
  }
}

TEST_CASE("oracle agrees with the closed forms on random states") {
  RngStream rng(43, 0);
  for (std::uint64_t i = 0; i < 25; ++i) {
    CCState s = random_state(rng, i);
    ModelParams p;
    p.lambda = 0.5 + 4.5 * rng.uniform(10 * i + 7);
    p.sigma = 0.05 + 0.45 * rng.uniform(10 * i + 8);
    p.g = {1, 1, 1};
    CCCoefficients closed = cc_coefficients(s, p);
    CCCoefficients oracle = projection_oracle(s, p);
    for (int k = 0; k < 5; ++k) {
      CHECK(std::abs(closed.f[static_cast<std::size_t>(k)] -
                     oracle.f[static_cast<std::size_t>(k)]) <=
            1e-6 * (1.0 + std::abs(oracle.f[static_cast<std::size_t>(k)])));
      CHECK(std::abs(closed.s[static_cast<std::size_t>(k)] -
                     oracle.s[static_cast<std::size_t>(k)]) <=
            1e-6 * (1.0 + std::abs(oracle.s[static_cast<std::size_t>(k)])));
    }
  }
}

TEST_CASE("oracle is converged in the quadrature length") {
  CCState s{1.2, 0.9, -0.5, 2.0, 1.7};
  ModelParams p;
  p.lambda = 1.0;
  p.sigma = 0.3;
  p.g = {1, 1, 1};
  CCCoefficients a = projection_oracle(s, p, 40.0 * s.w);
  CCCoefficients b = projection_oracle(s, p, 80.0 * s.w);
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(a.f[static_cast<std::size_t>(k)] - b.f[static_cast<std::size_t>(k)]) < 1e-8);
    CHECK(std::abs(a.s[static_cast<std::size_t>(k)] - b.s[static_cast<std::size_t>(k)]) < 1e-8);
  }
}

TEST_CASE("oracle recovers the axis-aligned reduced system") {
  ModelParams p;
  p.lambda = 1.4;
  p.sigma = 0.2;
  p.g = {1, 0, 0};
  for (double w : {0.6, 1.0, 1.8}) {
    CCCoefficients o = projection_oracle(CCState{w, 0.0, 0.0, 0.0, 0.9}, p);
    CHECK(o.f[kW] ==
          doctest::Approx(6.0 * p.lambda / (M_PI * M_PI * w) * (1.0 - w * w)).epsilon(1e-8));
    CHECK(o.s[kPsi] == doctest::Approx(-p.sigma).epsilon(1e-8));
    CHECK(o.f[kPhi] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(o.f[kTheta] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(o.f[kEta] == doctest::Approx(0.0).epsilon(1e-10));
  }
}
