#pragma once
#include <vector>

#include "sllg/field.hpp"
#include "sllg/geometry.hpp"

namespace sllg {

struct FitResult {
  AmplitudeState amp;
  double residual = 0.0;  // RMS misfit over the grid
  bool converged = false;
  int iterations = 0;
  bool flagged = false;  // residual outlier within a fitted series
};

// Nonlinear least squares of m(x) ~ A tanh(xi) + B sech(xi), xi = (x-phi)/w,
// by damped Gauss-Newton over (A, B, w, phi) with A, B projected back to the
// orthonormal constraint after each update.
FitResult fit_snapshot(const MagnetizationField& field, const AmplitudeState& guess,
                       int max_iter = 200);

// Moment-based initial guess for the first snapshot of a series: phi from the
// zero crossing of the largest-variation component, w from the slope there,
// A from far-field averages, B from the profile at phi.
AmplitudeState initial_guess(const MagnetizationField& field);

// Warm-started sequential fits; angle series unwrapped continuously. Fits
// whose residual exceeds 5x the running median are flagged.
std::vector<FitResult> fit_trajectory(const std::vector<MagnetizationField>& snapshots);

}  // namespace sllg
