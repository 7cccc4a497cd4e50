#pragma once
#include <cstddef>
#include <vector>

#include "sllg/geometry.hpp"
#include "sllg/vec3.hpp"

namespace sllg {

// Unit 3-vector field on an equally spaced grid over [0, L].
struct MagnetizationField {
  double L = 100.0;
  int nx = 1001;
  std::vector<Vec3> m;

  MagnetizationField() = default;
  MagnetizationField(double L_, int nx_) : L(L_), nx(nx_), m(static_cast<std::size_t>(nx_)) {}

  double dx() const { return L / (nx - 1); }
  double x(int i) const { return dx() * i; }
  Vec3& operator[](int i) { return m[static_cast<std::size_t>(i)]; }
  const Vec3& operator[](int i) const { return m[static_cast<std::size_t>(i)]; }

  // max |  ||m||^2 - 1 | over the grid
  double norm_defect() const {
    double worst = 0.0;
    for (const Vec3& v : m) {
      double d = std::abs(dot(v, v) - 1.0);
      if (d > worst) worst = d;
    }
    return worst;
  }
};

// Front centered at x0 with the given collective coordinates.
inline MagnetizationField make_front_field(double L, int nx, const CCState& s) {
  MagnetizationField f(L, nx);
  for (int i = 0; i < nx; ++i) f[i] = evaluate_ansatz(s, f.x(i));
  return f;
}

}  // namespace sllg
