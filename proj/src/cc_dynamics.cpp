#include <cmath>
#include <functional>
#include <string>

#include "sllg/collective.hpp"
#include "sllg/rng.hpp"

namespace sllg {

namespace {

constexpr int kMaxHalvings = 20;
constexpr double kMaxMove = 0.5;
constexpr double kEtaMargin = 1e-3;  // stay this far inside |eta| < pi/2

struct Proposal {
  CCState next;
  double f_phi = 0.0;
  bool ok = false;
};

Proposal try_step(const CCState& s, const ModelParams& par, double dW, double dt) {
  Proposal out;
  CCCoefficients c = cc_coefficients(s, par);
  std::array<double, 5> p{s.w, s.theta, s.eta, s.phi, s.psi};
  std::array<double, 5> q;
  for (int i = 0; i < 5; ++i) {
    double d = c.f[static_cast<std::size_t>(i)] * dt + c.s[static_cast<std::size_t>(i)] * dW;
    if (!(std::abs(d) <= kMaxMove)) return out;
    q[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] + d;
  }
  if (q[kW] <= 0.0) return out;
  if (std::abs(q[kEta]) >= M_PI / 2 - kEtaMargin) return out;
  out.next = CCState{q[kW], q[kTheta], q[kEta], q[kPhi], q[kPsi]};
  out.f_phi = c.f[kPhi];
  out.ok = true;
  return out;
}

// Recursive reject-and-halve. `split` produces the first half of a Wiener
// increment over a halved interval: the driver supplies a Brownian-bridge
// sample, the plain API the deterministic midpoint.
CCState refine_step(const CCState& s, const ModelParams& par, double dW, double dt, int depth,
                    const std::function<double(double, double)>& split, double* last_f_phi) {
  Proposal pr = try_step(s, par, dW, dt);
  if (pr.ok) {
    if (last_f_phi) *last_f_phi = pr.f_phi;
    return pr.next;
  }
  if (depth >= kMaxHalvings)
    throw StepsizeUnderflow("cc_step: step rejected after " + std::to_string(kMaxHalvings) +
                            " halvings (dt=" + std::to_string(dt) + ")");
  double dW1 = split(dW, dt);
  double dW2 = dW - dW1;
  CCState mid = refine_step(s, par, dW1, 0.5 * dt, depth + 1, split, last_f_phi);
  return refine_step(mid, par, dW2, 0.5 * dt, depth + 1, split, last_f_phi);
}

// One Heun (Stratonovich) step of the amplitude system with no chart guard.
// All right-hand sides are bounded polynomials of the state (so no step
// rejection is needed) and the width/position drifts are evaluated in their
// pole-free amplitude form.
double heun_amplitude(AmplitudeState& state, const ModelParams& par, double dW, double dt) {
  const Vec3& g = par.g;
  double sig = par.sigma;
  Vec3 A = state.A, B = state.B;

  double fw0 = amplitude_width_drift(state, par.lambda);
  double fp0 = amplitude_position_drift(state, par.lambda);
  Vec3 aA = amplitude_drift_A(A, par.lambda);
  Vec3 aB = amplitude_drift_B(A, B, par.lambda);
  Vec3 Ap = A + dt * aA + (sig * dW) * cross(A, g);
  Vec3 Bp = B + dt * aB + (sig * dW) * cross(B, g);
  double wp = state.w + dt * fw0;
  if (wp <= 0.0) throw StepsizeUnderflow("amplitude step: predictor width went nonpositive");

  AmplitudeState pred;
  pred.A = normalized(Ap);
  pred.B = normalized(Bp - dot(pred.A, Bp) * pred.A);
  pred.w = wp;
  pred.phi = state.phi + dt * fp0;
  double fw1 = amplitude_width_drift(pred, par.lambda);
  double fp1 = amplitude_position_drift(pred, par.lambda);

  Vec3 aA2 = amplitude_drift_A(Ap, par.lambda);
  Vec3 aB2 = amplitude_drift_B(Ap, Bp, par.lambda);
  Vec3 An = A + 0.5 * dt * (aA + aA2) + 0.5 * sig * dW * (cross(A, g) + cross(Ap, g));
  Vec3 Bn = B + 0.5 * dt * (aB + aB2) + 0.5 * sig * dW * (cross(B, g) + cross(Bp, g));
  double wn = state.w + 0.5 * dt * (fw0 + fw1);
  if (wn <= 0.0) throw StepsizeUnderflow("amplitude step: width went nonpositive");

  // renormalize and re-orthogonalize, reporting the removed defect
  double defect = std::abs(norm(An) - 1.0);
  An = normalized(An);
  defect = std::max(defect, std::abs(dot(An, Bn)));
  Bn = Bn - dot(An, Bn) * An;
  defect = std::max(defect, std::abs(norm(Bn) - 1.0));
  Bn = normalized(Bn);

  state.A = An;
  state.B = Bn;
  state.w = wn;
  state.phi += 0.5 * dt * (fp0 + fp1);
  return defect;
}

// Angle extraction that stays defined arbitrarily close to the chart pole.
// Inside a tiny exclusion disc around |A3| = 1 the state is nudged to the
// disc edge along its meridian (perturbing the recorded state by ~1e-8);
// everywhere else this is the plain inverse chart.
CCState pole_safe_angles(const AmplitudeState& a, int* clamped) {
  Vec3 A = a.A, B = a.B;
  double r = std::hypot(A.x, A.y);
  constexpr double rmin = 1e-8;
  if (r < rmin) {
    ++*clamped;
    if (r == 0.0) {
      A.x = rmin;
      A.y = 0.0;
    } else {
      A.x *= rmin / r;
      A.y *= rmin / r;
    }
    A.z = std::copysign(std::sqrt(1.0 - rmin * rmin), A.z);
    B = normalized(B - dot(B, A) * A);
  }
  CCState s;
  s.eta = std::asin(std::max(-1.0, std::min(1.0, A.z)));
  s.theta = std::atan2(A.y, A.x);
  s.psi = std::atan2(B.z, cross(A, B).z);
  s.w = a.w;
  s.phi = a.phi;
  return s;
}

double unwrap_near(double angle, double reference) {
  return angle + 2.0 * M_PI * std::round((reference - angle) / (2.0 * M_PI));
}

}  // namespace

CCState cc_step(const CCState& state, const ModelParams& params, double dW, double dt) {
  auto midpoint = [](double w, double) { return 0.5 * w; };
  return refine_step(state, params, dW, dt, 0, midpoint, nullptr);
}

double amplitude_width_drift(const AmplitudeState& a, double lambda) {
  double C1 = a.A.y * a.B.z - a.A.z * a.B.y;
  double pi2 = M_PI * M_PI;
  return 6.0 / pi2 * lambda / a.w -
         6.0 / pi2 * a.w * (lambda * (a.A.x * a.A.x - a.B.x * a.B.x) - M_PI * a.A.x * C1);
}

double amplitude_position_drift(const AmplitudeState& a, double lambda) {
  double C1 = a.A.y * a.B.z - a.A.z * a.B.y;
  return -0.5 * a.w * a.B.x * (lambda * M_PI * a.A.x - 2.0 * C1);
}

CCTrajectory simulate_cc(const ModelParams& params, const CCState& initial, double T,
                         double dt, int thin, std::uint64_t stream_index) {
  if (T <= 0.0) throw ValidationError("simulate_cc: T must be positive");
  if (dt <= 0.0) throw ValidationError("simulate_cc: dt must be positive");
  if (thin < 1) thin = 1;
  params.validate();

  RngStream rng(params.seed, stream_index);
  long nsteps = static_cast<long>(std::llround(T / dt));
  double sqdt = std::sqrt(dt);

  CCTrajectory traj;
  AmplitudeState amp = angles_to_amplitudes(initial);
  CCState prev = initial;
  double W = 0.0;
  int clamped = 0;
  traj.samples.push_back({0.0, initial, amp.A.x, amp.B.x,
                          amplitude_position_drift(amp, params.lambda), W});
  for (long n = 0; n < nsteps; ++n) {
    double dW = (params.sigma > 0.0) ? sqdt * rng.normal(static_cast<std::uint64_t>(n)) : 0.0;
    try {
      heun_amplitude(amp, params, dW, dt);
    } catch (const StepsizeUnderflow& e) {
      throw StepsizeUnderflow(std::string(e.what()) + " at t=" + std::to_string((n + 1) * dt));
    }
    W += dW;
    if ((n + 1) % thin == 0) {
      CCState s = pole_safe_angles(amp, &clamped);
      s.theta = unwrap_near(s.theta, prev.theta);
      s.psi = unwrap_near(s.psi, prev.psi);
      prev = s;
      traj.samples.push_back({(n + 1) * dt, s, amp.A.x, amp.B.x,
                              amplitude_position_drift(amp, params.lambda), W});
    }
  }
  traj.clamped_records = clamped;
  return traj;
}

Vec3 amplitude_drift_A(const Vec3& A, double lambda) {
  Vec3 KA{0.0, A.y, A.z};
  return lambda * cross(A, cross(A, KA));
}

Vec3 amplitude_drift_B(const Vec3& A, const Vec3& B, double lambda) {
  Vec3 KB{0.0, B.y, B.z};
  Vec3 Axe3{A.y, -A.x, 0.0};  // A x e3
  // 1 - A3^2 computed without cancellation; the two pole-limited terms carry
  // bounded ratios times vectors that vanish at the pole, so dropping them at
  // the exact pole is the continuous limit.
  double c2 = A.x * A.x + A.y * A.y;
  Vec3 bracket = dot(cross(B, KB), A) * A;
  if (c2 > 0.0)
    bracket = bracket + (A.x * A.x / c2 * A.z) * Axe3 +
              (A.x * A.y / c2) * cross(Axe3, A);
  return lambda * cross(B, bracket);
}

double amplitude_step(AmplitudeState& state, const ModelParams& params, double dW, double dt) {
  if (std::abs(state.A.z) >= 1.0 - 1e-6)
    throw PoleSingularity("amplitude_step: |A3| = " + std::to_string(std::abs(state.A.z)) +
                          " too close to 1");
  return heun_amplitude(state, params, dW, dt);
}

std::vector<WidthEvent> detect_events(const CCTrajectory& traj, double w_threshold,
                                      int merge_gap) {
  const auto& s = traj.samples;
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(s.size());
  auto w_at = [&](std::ptrdiff_t k) { return s[static_cast<std::size_t>(k)].state.w; };

  // excursion index ranges [first, last]
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> ranges;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (w_at(i) <= w_threshold) continue;
    std::ptrdiff_t j = i;
    while (j + 1 < n && w_at(j + 1) > w_threshold) ++j;
    if (!ranges.empty() && i - ranges.back().second < merge_gap)
      ranges.back().second = j;
    else
      ranges.emplace_back(i, j);
    i = j;
  }

  std::vector<WidthEvent> events;
  events.reserve(ranges.size());
  for (auto [i, j] : ranges) {
    WidthEvent ev;
    ev.start = s[static_cast<std::size_t>(i)].t;
    ev.end = s[static_cast<std::size_t>(j)].t;
    for (std::ptrdiff_t k = i; k <= j; ++k) ev.peak_w = std::max(ev.peak_w, w_at(k));
    // phi change across the event, one sample of margin on each side
    std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, i - 1);
    std::ptrdiff_t i1 = std::min<std::ptrdiff_t>(n - 1, j + 1);
    ev.delta_phi = s[static_cast<std::size_t>(i1)].state.phi -
                   s[static_cast<std::size_t>(i0)].state.phi;
    events.push_back(ev);
  }
  return events;
}

}  // namespace sllg
