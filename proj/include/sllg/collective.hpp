#pragma once
#include <array>
#include <vector>

#include "sllg/geometry.hpp"
#include "sllg/params.hpp"

namespace sllg {

// Drift and diffusion of the reduced system for p = (w, theta, eta, phi, psi),
// in Ito form: dp_k = f_k dt + s_k dW with one scalar Wiener process shared by
// all coordinates. Width and position carry no noise.
struct CCCoefficients {
  std::array<double, 5> f{};  // f_w, f_theta, f_eta, f_phi, f_psi
  std::array<double, 5> s{};  // 0, s_theta, s_eta, 0, s_psi
};

enum CCIndex { kW = 0, kTheta = 1, kEta = 2, kPhi = 3, kPsi = 4 };

// Closed-form coefficients.
CCCoefficients cc_coefficients(const CCState& state, const ModelParams& params);

// Independent check: build the tangent-space orthogonality conditions by
// quadrature and solve them numerically, without using the closed forms.
// Inner products are taken over [phi - L_quad, phi + L_quad] with the
// divergent translational volume handled exactly, then the infinite-length
// limit of the linear system is solved (the T-divergent part decouples on the
// (theta, eta) block).
CCCoefficients projection_oracle(const CCState& state, const ModelParams& params,
                                 double L_quad = 0.0 /* 0 -> 40 w */, int n_quad = 2000);

// Euler-Maruyama step with reject-and-halve control: a proposal producing
// w <= 0, |eta| too close to pi/2, or a move of any coordinate by more than
// 0.5 is rejected and retried on dt/2 (the Wiener increment is split by
// Brownian bridge), up to 20 halvings.
CCState cc_step(const CCState& state, const ModelParams& params, double dW, double dt);

// Stratonovich Heun step of the amplitude system
//   dA = lambda A x (A x KA) dt + sigma A x g o dW
//   dB = lambda B x [ <B x KB, A> A + ... ] dt + sigma B x g o dW
// with K = diag(0,1,1), plus the noise-free width and position drifts. A and
// B are renormalized and re-orthogonalized after each step. Returns the
// orthonormality defect removed by that projection.
double amplitude_step(AmplitudeState& state, const ModelParams& params, double dW, double dt);

// drift right-hand sides of the amplitude system (exposed for tests)
Vec3 amplitude_drift_A(const Vec3& A, double lambda);
Vec3 amplitude_drift_B(const Vec3& A, const Vec3& B, double lambda);

// Width and position drifts evaluated in the amplitude chart. Algebraically
// identical to the f_w and f_phi rows of cc_coefficients (through C = A x B
// and A1^2 + B1^2 + C1^2 = 1) but free of the eta = +-pi/2 chart singularity:
//   f_w   = (6 lambda/pi^2)/w - (6w/pi^2) [lambda (A1^2 - B1^2) - pi A1 C1]
//   f_phi = -(w/2) B1 (lambda pi A1 - 2 C1)
double amplitude_width_drift(const AmplitudeState& a, double lambda);
double amplitude_position_drift(const AmplitudeState& a, double lambda);

struct CCSample {
  double t = 0.0;
  CCState state;
  double A1 = 0.0;
  double B1 = 0.0;
  double f_phi = 0.0;
  double W = 0.0;
};

struct CCTrajectory {
  std::vector<CCSample> samples;
  // samples whose angle extraction needed the pole nudge (|A3| within 1e-8 of 1)
  int clamped_records = 0;
};

// Integrate with fixed dt, recording every `thin` steps (the initial state is
// sample 0). Noise from stream `stream_index` of params.seed. Integration runs
// in the amplitude chart (Heun, Stratonovich), which is regular at the angle
// chart's eta = +-pi/2 poles, so trajectories pass flip configurations without
// step rejection; recorded angles are unwrapped against the previous sample.
CCTrajectory simulate_cc(const ModelParams& params, const CCState& initial, double T,
                         double dt, int thin, std::uint64_t stream_index = 0);

struct WidthEvent {
  double start = 0.0;
  double end = 0.0;
  double peak_w = 0.0;
  double delta_phi = 0.0;
};

// Contiguous excursions of w above threshold; excursions separated by fewer
// than `merge_gap` samples are merged.
std::vector<WidthEvent> detect_events(const CCTrajectory& traj, double w_threshold,
                                      int merge_gap = 10);

}  // namespace sllg
