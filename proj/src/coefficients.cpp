#include <cmath>

#include "sllg/collective.hpp"

// Closed-form drift and diffusion of the collective coordinates. The angle
// sector is obtained exactly from the amplitude system
//
//   dA = lambda A x (A x KA) dt + sigma A x g o dW
//   dB = lambda B x [ <B x KB, A> A + (|A-KA|^2 A3/(1-A3^2)) A x e3
//                     + (<A x KA, e3>/(1-A3^2)) (A x e3) x A ] dt
//        + sigma B x g o dW
//
// through the chart A(theta, eta), B(theta, eta, psi): the tangents satisfy
// A_theta . A_eta = 0, |A_theta|^2 = cos^2 eta, |A_eta| = 1, and
// B_theta . (A x B) = sin eta, B_eta . (A x B) = 0, B_psi = A x B, so the
// angle components of any sphere motion can be read off by projection. The
// Stratonovich angle drifts and noises follow, and the Ito form adds
// (1/2) sum_i s_i d s_k / d p_i with the analytic derivatives of the noise
// coefficients. Width and position carry no noise and their drifts do not
// involve the noise direction at all; they close over the angles alone. The
// whole set is checked against the numerical tangent-space projection over
// random states and parameters.

namespace sllg {

namespace {

struct AngleFrame {
  Vec3 A, B, C;                // orthonormal triad, C = A x B
  Vec3 A_t, A_e;               // dA/dtheta, dA/deta
  Vec3 A_tt, A_te, A_ee;       // second derivatives of A
  Vec3 B_t, B_e, B_p;          // dB/dtheta, dB/deta, dB/dpsi
  Vec3 C_t, C_e, C_p;

  AngleFrame(double theta, double eta, double psi) {
    double ct = std::cos(theta), st = std::sin(theta);
    double ce = std::cos(eta), se = std::sin(eta);
    double cp = std::cos(psi), sp = std::sin(psi);
    Vec3 chat{ct, st, 0.0};         // equatorial direction of A
    Vec3 c1{-st, ct, 0.0};          // dchat/dtheta
    Vec3 c2{-ct * se, -st * se, ce};  // dA/deta

    A = {ct * ce, st * ce, se};
    A_t = ce * c1;
    A_e = c2;
    A_tt = -ce * chat;
    A_te = -se * c1;
    A_ee = -1.0 * A;

    B = cp * c1 + sp * c2;
    B_t = cp * (-1.0 * chat) + sp * (-se * c1);
    B_e = -sp * A;
    B_p = -sp * c1 + cp * c2;

    C = cross(A, B);
    C_t = cross(A_t, B) + cross(A, B_t);
    C_e = cross(A_e, B) + cross(A, B_e);
    C_p = cross(A, B_p);
  }
};

inline Vec3 Kv(const Vec3& v) { return {0.0, v.y, v.z}; }

}  // namespace

CCCoefficients cc_coefficients(const CCState& state, const ModelParams& params) {
  if (state.w <= 0.0) throw ValidationError("cc_coefficients: w must be positive");
  double ce = std::cos(state.eta);
  if (std::abs(ce) < 1e-6)
    throw ChartSingularity("cc_coefficients: |cos eta| < 1e-6 at eta = " +
                           std::to_string(state.eta));

  const double lam = params.lambda, sig = params.sigma, w = state.w;
  const Vec3& g = params.g;
  double ct = std::cos(state.theta), st = std::sin(state.theta);
  double se = std::sin(state.eta);
  double cp = std::cos(state.psi), sp = std::sin(state.psi);
  double c2 = ce * ce;

  AngleFrame F(state.theta, state.eta, state.psi);

  // diffusion of the angles
  Vec3 Axg = cross(F.A, g);
  Vec3 Bxg = cross(F.B, g);
  double s_t = sig * dot(Axg, F.A_t) / c2;
  double s_e = sig * dot(Axg, F.A_e);
  double s_p = sig * dot(Bxg, F.C) - se * s_t;

  // analytic derivatives of the noise coefficients for the Ito correction
  double ds_t_dt = sig * (dot(cross(F.A_t, g), F.A_t) + dot(Axg, F.A_tt)) / c2;
  double ds_t_de =
      sig * (dot(cross(F.A_e, g), F.A_t) + dot(Axg, F.A_te)) / c2 + 2.0 * s_t * se / ce;
  double ds_e_dt = sig * (dot(cross(F.A_t, g), F.A_e) + dot(Axg, F.A_te));
  double ds_e_de = sig * (dot(cross(F.A_e, g), F.A_e) + dot(Axg, F.A_ee));
  double ds_p_dt =
      sig * (dot(cross(F.B_t, g), F.C) + dot(Bxg, F.C_t)) - se * ds_t_dt;
  double ds_p_de = sig * (dot(cross(F.B_e, g), F.C) + dot(Bxg, F.C_e)) - ce * s_t -
                   se * ds_t_de;
  double ds_p_dp = sig * (dot(cross(F.B_p, g), F.C) + dot(Bxg, F.C_p));

  // Stratonovich drifts of the angles from the amplitude system
  Vec3 driftA = lam * cross(F.A, cross(F.A, Kv(F.A)));
  double fs_t = dot(driftA, F.A_t) / c2;
  double fs_e = dot(driftA, F.A_e);

  Vec3 e3{0.0, 0.0, 1.0};
  Vec3 AxKA = cross(F.A, Kv(F.A));
  Vec3 Axe3 = cross(F.A, e3);
  Vec3 AmKA = F.A - Kv(F.A);
  Vec3 bracket = dot(cross(F.B, Kv(F.B)), F.A) * F.A +
                 (dot(AmKA, AmKA) * F.A.z / c2) * Axe3 +
                 (dot(AxKA, e3) / c2) * cross(Axe3, F.A);
  Vec3 driftB = lam * cross(F.B, bracket);
  double fs_p = dot(driftB, F.C) - se * fs_t;

  // Ito form
  double f_t = fs_t + 0.5 * (s_t * ds_t_dt + s_e * ds_t_de);
  double f_e = fs_e + 0.5 * (s_t * ds_e_dt + s_e * ds_e_de);
  double f_p = fs_p + 0.5 * (s_t * ds_p_dt + s_e * ds_p_de + s_p * ds_p_dp);

  // width relaxation and front speed; no noise direction enters
  double pi2 = M_PI * M_PI;
  double f_w =
      6.0 / pi2 * lam / w -
      1.5 / pi2 * w *
          (lam * (ct * ct * std::cos(2.0 * state.eta) * (3.0 - std::cos(2.0 * state.psi)) -
                  2.0 * std::sin(2.0 * state.psi) * std::sin(2.0 * state.theta) * se +
                  cp * cp * (3.0 * std::cos(2.0 * state.theta) - 1.0)) +
           2.0 * M_PI * ce * (2.0 * cp * ct * ct * se - sp * std::sin(2.0 * state.theta)));
  double f_phi = 0.5 * w * (ct * sp * se + cp * st) *
                 (2.0 * cp * ct * se - 2.0 * sp * st + lam * M_PI * ct * ce);

  CCCoefficients out;
  out.f = {f_w, f_t, f_e, f_phi, f_p};
  out.s = {0.0, s_t, s_e, 0.0, s_p};
  return out;
}

}  // namespace sllg
