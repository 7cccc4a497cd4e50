#pragma once
#include "sllg/geometry.hpp"
#include "sllg/vec3.hpp"

namespace sllg {

// Analytic first and second partial derivatives of evaluate_ansatz with
// respect to p = (w, theta, eta, phi, psi), indexed 0..4. Exposed so tests
// can check them against finite differences; the projection oracle is built
// on them.
Vec3 ansatz_partial(const CCState& state, int k, double x);
Vec3 ansatz_second_partial(const CCState& state, int i, int j, double x);

}  // namespace sllg
