#pragma once
#include <functional>
#include <vector>

#include "sllg/field.hpp"
#include "sllg/params.hpp"
#include "sllg/rng.hpp"

namespace sllg {

// One realization of the magnetization SPDE
//   dm = (-m x H - lambda m x (m x H)) dt + sigma (m x g) o dW,
//   H(m) = d^2 m / dx^2 - m2 e2 - m3 e3,
// advanced by a semi-implicit Crank-Nicolson scheme: the linear operator
// acting on m^{n+1} uses coefficients extrapolated by two-step
// Adams-Bashforth, and the scalar noise enters at the midpoint so the
// Stratonovich calculus of the continuum equation is respected. Each step
// solves a block-tridiagonal system and renormalizes pointwise.
class SpdeRun {
 public:
  SpdeRun(const ModelParams& params, const MagnetizationField& m0);

  // Advance one step with the supplied Wiener increment (caller owns the
  // path so the reduced model can be driven by the identical one).
  void step(double dW);

  const MagnetizationField& state() const { return state_; }
  double time() const { return time_; }
  double wiener() const { return wiener_; }

  // pre-renormalization norm defect of the most recent step, and the worst
  // over the whole run
  double last_prenorm_defect() const { return last_prenorm_defect_; }
  double max_prenorm_defect() const { return max_prenorm_defect_; }
  double max_postnorm_defect() const { return max_postnorm_defect_; }

  // serial reference step, bitwise comparable against the parallel one
  void set_serial(bool s) { serial_ = s; }

 private:
  ModelParams params_;
  MagnetizationField state_;
  MagnetizationField prev_;  // previous level for the Adams-Bashforth extrapolant
  bool have_prev_ = false;
  bool serial_ = false;
  double time_ = 0.0;
  double wiener_ = 0.0;
  double last_prenorm_defect_ = 0.0;
  double max_prenorm_defect_ = 0.0;
  double max_postnorm_defect_ = 0.0;

  // block-tridiagonal workspace (3x3 blocks)
  std::vector<double> diag_, lower_, upper_, rhs_;
};

// H(m) = m_xx - m2 e2 - m3 e3 with Neumann ghosts at both ends.
std::vector<Vec3> effective_field(const MagnetizationField& m);

struct SpdeSnapshot {
  double t = 0.0;
  double W = 0.0;
  MagnetizationField field;
};

struct SpdeTrajectory {
  std::vector<SpdeSnapshot> snapshots;
  double max_prenorm_defect = 0.0;
  double max_postnorm_defect = 0.0;
  bool boundary_proximity = false;  // front strayed within 10 units of an end
};

// Driver loop: snapshots every `snapshot_stride` steps (0 keeps only the
// final state). Noise increments come from stream `stream_index` of the
// master seed, so ensemble members are independent and scheduling-free.
SpdeTrajectory simulate_spde(const ModelParams& params, const MagnetizationField& m0,
                             double T, int snapshot_stride, std::uint64_t stream_index = 0);

}  // namespace sllg
