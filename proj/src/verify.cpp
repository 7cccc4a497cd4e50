#include <algorithm>
#include <cmath>
#include <sstream>

#include "sllg/collective.hpp"
#include "sllg/field.hpp"
#include "sllg/rng.hpp"
#include "sllg/spde.hpp"
#include "sllg/verify.hpp"

namespace sllg {

namespace {

double coeff_error(const CCCoefficients& a, const CCCoefficients& b) {
  double scale = 1.0, diff = 0.0;
  for (int k = 0; k < 5; ++k) {
    scale = std::max({scale, std::abs(b.f[static_cast<std::size_t>(k)]),
                      std::abs(b.s[static_cast<std::size_t>(k)])});
    diff = std::max({diff,
                     std::abs(a.f[static_cast<std::size_t>(k)] - b.f[static_cast<std::size_t>(k)]),
                     std::abs(a.s[static_cast<std::size_t>(k)] - b.s[static_cast<std::size_t>(k)])});
  }
  return diff / scale;
}

VerifySuiteResult suite_coefficients(int n_states, std::uint64_t seed) {
  VerifySuiteResult r;
  r.name = "coefficients-vs-quadrature";
  r.tolerance = 1e-6;
  RngStream rng(seed, 42);
  double worst = 0.0;
  int worst_state = -1;
  std::uint64_t idx = 0;
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(idx++); };
  for (int i = 0; i < n_states; ++i) {
    ModelParams p;
    p.lambda = draw(0.5, 5.0);
    p.sigma = draw(0.05, 0.5);
    do {
      p.g = {draw(-1.0, 1.0), draw(-1.0, 1.0), draw(-1.0, 1.0)};
    } while (norm(p.g) < 0.1);
    CCState s;
    s.w = draw(0.3, 5.0);
    s.theta = draw(-M_PI, M_PI);
    s.eta = draw(-1.3, 1.3);
    s.phi = draw(-10.0, 10.0);
    s.psi = draw(-M_PI, M_PI);
    double err = coeff_error(cc_coefficients(s, p), projection_oracle(s, p));
    if (err > worst) {
      worst = err;
      worst_state = i;
    }
  }
  r.measured = worst;
  r.pass = worst <= r.tolerance;
  std::ostringstream d;
  d << n_states << " random states, worst at state " << worst_state;
  r.detail = d.str();
  return r;
}

// With g along e1 the drift leaves the front invariant and the noise is a
// rigid rotation about e1: m1 stays tanh and psi tracks -sigma W exactly.
VerifySuiteResult suite_axis_noise(std::uint64_t seed) {
  VerifySuiteResult r;
  r.name = "axis-noise-exactness";
  r.tolerance = 5e-3;

  ModelParams p;
  p.lambda = 1.0;
  p.sigma = 0.3;
  p.g = {1.0, 0.0, 0.0};
  p.L = 40.0;
  p.nx = 801;
  p.dt = 1e-3;
  p.seed = seed;

  MagnetizationField m0 = make_front_field(p.L, p.nx, CCState{1.0, 0.0, 0.0, p.L / 2.0, 0.0});
  SpdeRun run(p, m0);
  RngStream noise(p.seed, 0);
  int n_steps = 1000;
  double sup_m1 = 0.0, max_angle_err = 0.0;
  double sdt = std::sqrt(p.dt);
  for (int n = 0; n < n_steps; ++n) {
    run.step(sdt * noise.normal(static_cast<std::uint64_t>(n)));
    // rotation angle at the front center, where m0 = e2
    const Vec3& mc = run.state()[(p.nx - 1) / 2];
    double angle = std::atan2(mc.z, mc.y);
    double target = std::remainder(-p.sigma * run.wiener(), 2.0 * M_PI);
    max_angle_err = std::max(max_angle_err, std::abs(std::remainder(angle - target, 2.0 * M_PI)));
  }
  for (int i = 0; i < p.nx; ++i)
    sup_m1 = std::max(sup_m1, std::abs(run.state()[i].x - std::tanh(m0.x(i) - p.L / 2.0)));

  r.measured = std::max(sup_m1, max_angle_err);
  r.pass = r.measured <= r.tolerance;
  std::ostringstream d;
  d << "sup|m1 - tanh| = " << sup_m1 << ", rotation tracking error = " << max_angle_err;
  r.detail = d.str();
  return r;
}

// Same Wiener path through both charts: Euler-Maruyama on the angles against
// Heun on the amplitudes must land on the same orientation up to the strong
// discretization error.
VerifySuiteResult suite_chart_consistency(std::uint64_t seed) {
  VerifySuiteResult r;
  r.name = "chart-consistency";
  r.tolerance = 5e-3;

  ModelParams p;
  p.lambda = 1.0;
  p.sigma = 0.2;
  p.g = {1.0, 1.0, 1.0};
  p.seed = seed;
  double dt = 1e-5, T = 0.25;
  int n_steps = static_cast<int>(std::lround(T / dt));

  CCState angles;
  angles.w = 1.2;
  angles.theta = 0.3;
  angles.eta = -0.2;
  angles.psi = 0.1;
  AmplitudeState amp = angles_to_amplitudes(angles);

  RngStream noise(p.seed, 5);
  double sdt = std::sqrt(dt);
  for (int n = 0; n < n_steps; ++n) {
    double dW = sdt * noise.normal(static_cast<std::uint64_t>(n));
    angles = cc_step(angles, p, dW, dt);
    amplitude_step(amp, p, dW, dt);
  }
  AmplitudeState from_angles = angles_to_amplitudes(angles);
  double err = std::max({norm(from_angles.A - amp.A), norm(from_angles.B - amp.B),
                         std::abs(from_angles.w - amp.w), std::abs(from_angles.phi - amp.phi)});
  r.measured = err;
  r.pass = err <= r.tolerance;
  std::ostringstream d;
  d << n_steps << " shared-path steps at dt = " << dt;
  r.detail = d.str();
  return r;
}

VerifySuiteResult suite_norm_preservation(std::uint64_t seed) {
  VerifySuiteResult r;
  r.name = "norm-preservation";
  r.tolerance = 1e-6;

  ModelParams p;
  p.lambda = 1.0;
  p.sigma = 0.5;
  p.g = {1.0, 1.0, 1.0};
  p.L = 40.0;
  p.nx = 401;
  p.dt = 1e-3;
  p.seed = seed;

  MagnetizationField m0 = make_front_field(p.L, p.nx, CCState{1.0, 0.0, 0.0, p.L / 2.0, 0.0});
  SpdeRun run(p, m0);
  RngStream noise(p.seed, 0);
  double sdt = std::sqrt(p.dt);
  for (int n = 0; n < 1000; ++n) run.step(sdt * noise.normal(static_cast<std::uint64_t>(n)));

  r.measured = run.max_prenorm_defect();
  r.pass = r.measured <= r.tolerance && run.max_postnorm_defect() <= 1e-8;
  std::ostringstream d;
  d << "pre-renormalization defect per step; post-renormalization worst = "
    << run.max_postnorm_defect();
  r.detail = d.str();
  return r;
}

}  // namespace

std::vector<VerifySuiteResult> run_verification_suites(int oracle_states, std::uint64_t seed) {
  std::vector<VerifySuiteResult> out;
  out.push_back(suite_coefficients(oracle_states, seed));
  out.push_back(suite_axis_noise(seed));
  out.push_back(suite_chart_consistency(seed));
  out.push_back(suite_norm_preservation(seed));
  return out;
}

}  // namespace sllg
