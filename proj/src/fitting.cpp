#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sllg/fitting.hpp"

// Levenberg-Marquardt style damped Gauss-Newton for
//   m(x_i) ~ A tanh(xi_i) + B sech(xi_i),  xi_i = (x_i - phi)/w.
// The orthonormal pair (A, B) moves only by rigid rotations, so the local
// parameters are a rotation vector omega (3 dof) plus w and phi: the model
// derivative along omega_k is e_k x m_i, and rotated updates stay on the
// constraint manifold exactly.

namespace sllg {

namespace {

struct Residual {
  double sum_sq = 0.0;
  Eigen::VectorXd r;  // 3 nx stacked residuals
};

Vec3 rotate_about(const Vec3& omega, const Vec3& v) {
  double a = norm(omega);
  if (a < 1e-300) return v;
  Vec3 n = (1.0 / a) * omega;
  double c = std::cos(a), s = std::sin(a);
  return c * v + s * cross(n, v) + ((1.0 - c) * dot(n, v)) * n;
}

Residual compute_residual(const MagnetizationField& field, const AmplitudeState& u) {
  Residual res;
  int nx = field.nx;
  res.r.resize(3 * nx);
  for (int i = 0; i < nx; ++i) {
    double xi = (field.x(i) - u.phi) / u.w;
    double t = std::tanh(xi), s = 1.0 / std::cosh(xi);
    Vec3 model = t * u.A + s * u.B;
    Vec3 d = field[i] - model;
    res.r(3 * i) = d.x;
    res.r(3 * i + 1) = d.y;
    res.r(3 * i + 2) = d.z;
    res.sum_sq += dot(d, d);
  }
  return res;
}

void project_constraints(AmplitudeState& u) {
  u.A = normalized(u.A);
  u.B = u.B - dot(u.B, u.A) * u.A;
  u.B = normalized(u.B);
  u.w = std::max(u.w, 1e-3);
}

}  // namespace

FitResult fit_snapshot(const MagnetizationField& field, const AmplitudeState& guess,
                       int max_iter) {
  AmplitudeState u = guess;
  project_constraints(u);
  Residual res = compute_residual(field, u);
  double mu = 1e-4;
  int nx = field.nx;
  bool converged = false;

  int it = 0;
  for (; it < max_iter && !converged; ++it) {
    // Jacobian wrt (omega, w, phi); rows follow the residual
    Eigen::MatrixXd J(3 * nx, 5);
    for (int i = 0; i < nx; ++i) {
      double xi = (field.x(i) - u.phi) / u.w;
      double t = std::tanh(xi), s = 1.0 / std::cosh(xi);
      Vec3 model = t * u.A + s * u.B;
      Vec3 dxi = (s * s) * u.A - (s * t) * u.B;  // d model / d xi
      for (int k = 0; k < 3; ++k) {
        Vec3 ek{k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
        Vec3 col = cross(ek, model);
        J(3 * i, k) = col.x;
        J(3 * i + 1, k) = col.y;
        J(3 * i + 2, k) = col.z;
      }
      J(3 * i, 3) = dxi.x * (-xi / u.w);
      J(3 * i + 1, 3) = dxi.y * (-xi / u.w);
      J(3 * i + 2, 3) = dxi.z * (-xi / u.w);
      J(3 * i, 4) = dxi.x * (-1.0 / u.w);
      J(3 * i + 1, 4) = dxi.y * (-1.0 / u.w);
      J(3 * i + 2, 4) = dxi.z * (-1.0 / u.w);
    }
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd Jtr = J.transpose() * res.r;
    if (Jtr.norm() < 1e-10 * (1.0 + std::sqrt(res.sum_sq))) {
      converged = true;
      break;
    }

    bool accepted = false;
    for (int damp = 0; damp < 16; ++damp) {
      Eigen::MatrixXd M = JtJ;
      for (int d = 0; d < 5; ++d) M(d, d) += mu * std::max(JtJ(d, d), 1e-12);
      Eigen::VectorXd step = M.ldlt().solve(Jtr);
      AmplitudeState trial = u;
      Vec3 omega{step(0), step(1), step(2)};
      trial.A = rotate_about(omega, u.A);
      trial.B = rotate_about(omega, u.B);
      trial.w += step(3);
      trial.phi += step(4);
      project_constraints(trial);
      Residual tres = compute_residual(field, trial);
      if (tres.sum_sq < res.sum_sq) {
        double rel_step = step.norm() / (1.0 + std::sqrt(u.w * u.w + u.phi * u.phi));
        u = trial;
        res = tres;
        mu = std::max(mu * 0.3, 1e-14);
        accepted = true;
        if (rel_step < 1e-12) converged = true;
        break;
      }
      mu *= 10.0;
    }
    if (!accepted) {
      converged = true;  // no descent direction left at this shape
      break;
    }
  }

  FitResult out;
  out.amp = u;
  out.residual = std::sqrt(res.sum_sq / nx);
  out.iterations = it;
  out.converged = converged;
  return out;
}

AmplitudeState initial_guess(const MagnetizationField& field) {
  int nx = field.nx;
  int edge = std::max(2, nx / 50);
  Vec3 left{}, right{};
  for (int i = 0; i < edge; ++i) left += field[i];
  for (int i = nx - edge; i < nx; ++i) right += field[i];
  left *= 1.0 / edge;
  right *= 1.0 / edge;

  AmplitudeState u;
  Vec3 diff = right - left;
  if (norm(diff) < 1e-8) diff = Vec3{1.0, 0.0, 0.0};
  u.A = normalized(0.5 * diff);

  // position: crossing of the midpoint in the largest-variation component
  int comp = 0;
  double best_var = -1.0;
  for (int c = 0; c < 3; ++c) {
    double v = std::abs((&diff.x)[c]);
    if (v > best_var) {
      best_var = v;
      comp = c;
    }
  }
  double mid = 0.5 * ((&left.x)[comp] + (&right.x)[comp]);
  double phi = 0.5 * field.L;
  int cross_idx = nx / 2;
  for (int i = 0; i + 1 < nx; ++i) {
    double a = (&field[i].x)[comp] - mid, b = (&field[i + 1].x)[comp] - mid;
    if (a == 0.0 || a * b < 0.0) {
      double f = (b - a) != 0.0 ? -a / (b - a) : 0.0;
      phi = field.x(i) + f * field.dx();
      cross_idx = i;
      break;
    }
  }
  u.phi = phi;

  // width from the slope at the crossing: d/dx [amp tanh((x-phi)/w)] = amp/w
  double amp = 0.5 * std::abs((&right.x)[comp] - (&left.x)[comp]);
  int i0 = std::max(0, cross_idx - 1), i1 = std::min(nx - 1, cross_idx + 2);
  double slope = std::abs(((&field[i1].x)[comp] - (&field[i0].x)[comp]) /
                          (field.x(i1) - field.x(i0)));
  u.w = (slope > 1e-8 && amp > 1e-8) ? amp / slope : 1.0;
  u.w = std::min(std::max(u.w, 0.05), 0.2 * field.L);

  // sech amplitude from the profile at the center
  Vec3 center = field[cross_idx];
  Vec3 b = center - dot(center, u.A) * u.A;
  u.B = (norm(b) > 1e-8) ? normalized(b) : normalized(cross(Vec3{0.0, 0.0, 1.0}, u.A));
  return u;
}

std::vector<FitResult> fit_trajectory(const std::vector<MagnetizationField>& snapshots) {
  std::vector<FitResult> out;
  out.reserve(snapshots.size());
  std::vector<double> residuals;
  AmplitudeState guess;
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    if (k == 0) guess = initial_guess(snapshots[k]);
    FitResult fr = fit_snapshot(snapshots[k], guess);
    if (fr.converged || fr.residual < 0.5) guess = fr.amp;  // warm start
    residuals.push_back(fr.residual);
    std::vector<double> sorted = residuals;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    fr.flagged = (k > 0 && fr.residual > 5.0 * median && fr.residual > 1e-8);
    out.push_back(fr);
  }
  return out;
}

}  // namespace sllg
