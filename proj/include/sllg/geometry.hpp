#pragma once
#include <cmath>
#include <string>

#include "sllg/errors.hpp"
#include "sllg/vec3.hpp"

namespace sllg {

// Collective coordinates of the front ansatz. Angles are stored unwrapped so
// trajectories stay continuous; eta lives on the arcsin branch (-pi/2, pi/2).
struct CCState {
  double w = 1.0;
  double theta = 0.0;
  double eta = 0.0;
  double phi = 0.0;
  double psi = 0.0;
};

// Amplitude chart: m = A tanh(xi) + B sech(xi), xi = (x - phi)/w,
// with A, B orthonormal.
struct AmplitudeState {
  Vec3 A{1.0, 0.0, 0.0};
  Vec3 B{0.0, 1.0, 0.0};
  double w = 1.0;
  double phi = 0.0;
};

// Stationary front profile m0(x) = (tanh x, sech x, 0).
inline Vec3 front_profile(double x) {
  return {std::tanh(x), 1.0 / std::cosh(x), 0.0};
}

// First and second derivatives of m0, used by projections and fits.
inline Vec3 front_profile_d1(double x) {
  double s = 1.0 / std::cosh(x), t = std::tanh(x);
  return {s * s, -s * t, 0.0};
}
inline Vec3 front_profile_d2(double x) {
  double s = 1.0 / std::cosh(x), t = std::tanh(x);
  return {-2.0 * s * s * t, s - 2.0 * s * s * s, 0.0};
}

// Rotation matrix of the angle chart applied to v:
// columns (A, B, A x B) as functions of (theta, eta, psi).
inline Vec3 chart_rotation(double theta, double eta, double psi, const Vec3& v) {
  return rotate_axis(3, theta, rotate_axis(2, -eta, rotate_axis(1, psi, v)));
}

inline Vec3 evaluate_ansatz(const CCState& s, double x) {
  double xi = (x - s.phi) / s.w;
  return chart_rotation(s.theta, s.eta, s.psi, front_profile(xi));
}

inline AmplitudeState angles_to_amplitudes(const CCState& s) {
  double ct = std::cos(s.theta), st = std::sin(s.theta);
  double ce = std::cos(s.eta), se = std::sin(s.eta);
  double cp = std::cos(s.psi), sp = std::sin(s.psi);
  AmplitudeState a;
  a.A = {ct * ce, st * ce, se};
  a.B = {-cp * st - ct * sp * se, cp * ct - sp * st * se, ce * sp};
  a.w = s.w;
  a.phi = s.phi;
  return a;
}

inline CCState amplitudes_to_angles(const AmplitudeState& a) {
  if (std::abs(a.A.z) >= 1.0 - 1e-9)
    throw ChartSingularity("amplitudes_to_angles: |A3| = " +
                           std::to_string(std::abs(a.A.z)) +
                           " too close to 1 (eta = +-pi/2 pole)");
  CCState s;
  s.eta = std::asin(a.A.z);
  s.theta = std::atan2(a.A.y, a.A.x);
  Vec3 c = cross(a.A, a.B);
  s.psi = std::atan2(a.B.z, c.z);
  s.w = a.w;
  s.phi = a.phi;
  return s;
}

}  // namespace sllg
