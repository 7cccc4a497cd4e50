#include <cmath>
#include <string>

#include "sllg/rng.hpp"
#include "sllg/stats.hpp"

namespace sllg {

// Chambers-Mallows-Stuck transform: U uniform on (-pi/2, pi/2), E standard
// exponential. For alpha != 1,
//   X = S sin(alpha (U + B0)) / cos(U)^{1/alpha}
//         * [cos(U - alpha (U + B0)) / E]^{(1-alpha)/alpha},
//   B0 = atan(beta tan(pi alpha / 2)) / alpha,
//   S  = (1 + beta^2 tan^2(pi alpha / 2))^{1/(2 alpha)},
// and for alpha = 1,
//   X = 2/pi [ (pi/2 + beta U) tan U - beta log( (pi/2 E cos U)/(pi/2 + beta U) ) ].
std::vector<double> sample_alpha_stable(double alpha, double beta, double scale,
                                        std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw ValidationError("sample_alpha_stable: alpha must be in (0, 2], got " +
                          std::to_string(alpha));
  if (beta < -1.0 || beta > 1.0)
    throw ValidationError("sample_alpha_stable: beta must be in [-1, 1], got " +
                          std::to_string(beta));
  if (!(scale > 0.0))
    throw ValidationError("sample_alpha_stable: scale must be positive, got " +
                          std::to_string(scale));

  RngStream rng(seed, stream);
  std::vector<double> out(n);
  bool is_one = std::abs(alpha - 1.0) < 1e-12;
  double tan_half = std::tan(0.5 * M_PI * alpha);
  double B0 = is_one ? 0.0 : std::atan(beta * tan_half) / alpha;
  double S = is_one ? 1.0 : std::pow(1.0 + beta * beta * tan_half * tan_half, 0.5 / alpha);

  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t base = 2 * static_cast<std::uint64_t>(i);
    double U = M_PI * (rng.uniform_pos(base) - 0.5);
    double E = -std::log(rng.uniform_pos(base + 1));
    double X;
    if (is_one) {
      double h = 0.5 * M_PI + beta * U;
      X = (2.0 / M_PI) * (h * std::tan(U) - beta * std::log((0.5 * M_PI * E * std::cos(U)) / h));
      X = scale * X + (2.0 / M_PI) * beta * scale * std::log(scale);
    } else {
      double a_up = alpha * (U + B0);
      X = S * std::sin(a_up) / std::pow(std::cos(U), 1.0 / alpha) *
          std::pow(std::cos(U - a_up) / E, (1.0 - alpha) / alpha);
      X *= scale;
    }
    out[i] = X;
  }
  return out;
}

}  // namespace sllg
