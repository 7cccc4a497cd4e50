#include <cmath>
#include <string>

#include "sllg/stats.hpp"

namespace sllg {

// M_q(t) = <|phi_i(t) - phi_i(0)|^q> over the ensemble scales like t^{q/alpha}
// for an alpha-stable flight as long as q < alpha. The exponent gamma(q) is a
// least-squares slope of log M_q against log t over the fit window; alpha is
// the average of q/gamma(q) over the usable moments, capped at the stable
// boundary 2 (diffusive scaling).
StableEstimate moment_scaling_test(const std::vector<std::vector<double>>& phi_series,
                                   double dt_sample, const std::vector<double>& q_grid,
                                   double t_min, double t_max) {
  if (phi_series.size() < 100)
    throw InsufficientEnsemble("moment_scaling_test: need at least 100 trajectories, have " +
                               std::to_string(phi_series.size()));
  if (q_grid.empty()) throw ValidationError("moment_scaling_test: empty q grid");
  std::size_t len = phi_series.front().size();
  for (const auto& s : phi_series)
    if (s.size() != len)
      throw ValidationError("moment_scaling_test: trajectories must share one time grid");
  if (t_max <= t_min) throw ValidationError("moment_scaling_test: empty fit window");

  std::size_t k_min = static_cast<std::size_t>(std::ceil(t_min / dt_sample));
  std::size_t k_max = std::min(len - 1, static_cast<std::size_t>(std::floor(t_max / dt_sample)));
  if (k_min < 1) k_min = 1;
  if (k_max <= k_min + 2)
    throw InsufficientData("moment_scaling_test: fit window covers too few samples");

  StableEstimate est;
  est.method = "moment_scaling";
  est.q_grid = q_grid;
  est.gamma_of_q.resize(q_grid.size());

  std::vector<double> alpha_q(q_grid.size());
  for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
    double q = q_grid[qi];
    // slope of log M_q vs log t
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double npt = 0.0;
    for (std::size_t k = k_min; k <= k_max; ++k) {
      double mq = 0.0;
      for (const auto& s : phi_series) mq += std::pow(std::abs(s[k] - s[0]), q);
      mq /= static_cast<double>(phi_series.size());
      if (mq <= 0.0) continue;
      double lx = std::log(static_cast<double>(k) * dt_sample);
      double ly = std::log(mq);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      npt += 1.0;
    }
    if (npt < 3.0) throw InsufficientData("moment_scaling_test: degenerate moments");
    double gamma = (npt * sxy - sx * sy) / (npt * sxx - sx * sx);
    est.gamma_of_q[qi] = gamma;
    alpha_q[qi] = (gamma > 1e-9) ? q / gamma : 0.0;
  }

  // first pass over all q, then keep q below the provisional alpha (gamma
  // saturates at 1 for q > alpha and would bias the mean)
  double a0 = 0.0;
  int n0 = 0;
  for (double a : alpha_q)
    if (a > 0.0) {
      a0 += a;
      ++n0;
    }
  if (n0 == 0) throw DegenerateTail("moment_scaling_test: no usable scaling exponents");
  a0 /= n0;
  double a1 = 0.0;
  int n1 = 0;
  for (std::size_t qi = 0; qi < q_grid.size(); ++qi)
    if (alpha_q[qi] > 0.0 && q_grid[qi] < a0) {
      a1 += alpha_q[qi];
      ++n1;
    }
  est.alpha_raw = (n1 > 0) ? a1 / n1 : a0;
  est.alpha = std::min(est.alpha_raw, 2.0);
  return est;
}

}  // namespace sllg
