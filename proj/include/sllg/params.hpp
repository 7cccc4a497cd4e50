#pragma once
#include <cstdint>
#include <string>

#include "sllg/errors.hpp"
#include "sllg/vec3.hpp"

namespace sllg {

// physical and discretization parameters shared by the solvers
struct ModelParams {
  double lambda = 1.0;        // damping, > 0
  double sigma = 0.3;         // noise amplitude, >= 0
  Vec3 g{1, 1, 1};            // noise direction (not normalized)
  double L = 100.0;           // domain length
  int nx = 1001;              // grid points on [0, L], >= 3
  double dt = 1e-3;           // step size, > 0
  std::uint64_t seed = 1;

  void validate() const {
    if (!(lambda > 0)) throw ValidationError("lambda must be > 0, got " + std::to_string(lambda));
    if (!(sigma >= 0)) throw ValidationError("sigma must be >= 0, got " + std::to_string(sigma));
    if (!(L > 0)) throw ValidationError("L must be > 0, got " + std::to_string(L));
    if (nx < 3) throw ValidationError("nx must be >= 3, got " + std::to_string(nx));
    if (!(dt > 0)) throw ValidationError("dt must be > 0, got " + std::to_string(dt));
    if (norm(g) == 0) throw ValidationError("g must be nonzero");
  }

  double dx() const { return L / (nx - 1); }
};

}  // namespace sllg
