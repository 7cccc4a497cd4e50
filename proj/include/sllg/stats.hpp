#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sllg/errors.hpp"

namespace sllg {

// Result of any of the stability-index estimators.
struct StableEstimate {
  double alpha = 0.0;
  double beta = 0.0;
  double scale = 0.0;
  std::string method;
  double stderr_boot = 0.0;
  // method-specific diagnostics
  double ks_distance = 0.0;
  double xmin = 0.0;
  int n_tail = 0;
  bool tail_ok = true;     // false when the KS diagnostic rejects a power law
  double alpha_raw = 0.0;  // estimator reading before the stable-family cap at 2
  std::vector<double> q_grid;      // moment test: tested moments
  std::vector<double> gamma_of_q;  // moment test: fitted scaling exponents
};

struct PVariationResult {
  std::vector<double> p_grid;
  std::vector<double> ks_distance;  // minimal KS distance per p (over scale)
  std::vector<double> best_scale;   // minimizing scale per p
  double p_star = 0.0;
  double alpha = 0.0;
  double ks_min = 0.0;
};

// Running p-variation V_p^n(t) of a uniformly sampled series: partition mesh
// 1/n in the series' time units (sample spacing dt_sample). Entry k of the
// result is V at time (k+1)/n.
std::vector<double> p_variation(const std::vector<double>& series, double dt_sample,
                                double p, int n);

// CDF of the totally skewed 1/2-stable law with scale c: erfc(sqrt(c/(2x))).
double levy_half_cdf(double x, double c);

// Sup distance between the empirical CDF of the sorted sample and F.
double ks_distance_sorted(const std::vector<double>& sorted_samples,
                          const std::vector<double>& cdf_at_samples);

// Per-segment p-variation sums matched against the 1/2-stable law: for each p
// the KS distance is minimized over the scale (golden section on log c), and
// the best p gives alpha = p/2.
PVariationResult pvariation_ks_test(const std::vector<double>& series,
                                    const std::vector<double>& p_grid, int n_segments,
                                    int segment_len);

// Same test with segments pooled across independent trajectories; each series
// contributes floor((len - 1)/segment_len) whole segments. The number of
// segments actually used is returned in n_segments_used.
PVariationResult pvariation_ks_pooled(const std::vector<std::vector<double>>& series_list,
                                      const std::vector<double>& p_grid, int segment_len,
                                      int* n_segments_used = nullptr);

inline std::vector<double> default_p_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(2.0 + 0.1 * i);
  return g;
}

// Scaling of low-order absolute moments across an ensemble:
// M_q(t) = <|phi_i(t) - phi_i(0)|^q> ~ t^{q/alpha}. Slopes are fitted on
// log M_q vs log t over t in [t_min, t_max].
StableEstimate moment_scaling_test(const std::vector<std::vector<double>>& phi_series,
                                   double dt_sample, const std::vector<double>& q_grid,
                                   double t_min, double t_max);

// Maximum-likelihood tail fit. The Hill estimator (conditional Pareto MLE)
// is evaluated over a log-spaced scan of tail sizes; for a power law with a
// second-order correction (stable tails in particular) its expected reading
// is linear in the tail count, so the weighted least-squares intercept at
// zero count removes the finite-cutoff bias. xmin, n_tail and ks_distance
// describe the scanned cutoff that best matches a Pareto tail at the
// extrapolated index. alpha_raw is the extrapolated exponent; alpha reads it
// as a stable index, so it is capped at 2: a tail thinner than x^-2 has
// finite variance and is consistent only with the Gaussian member.
StableEstimate mle_tail_fit(const std::vector<double>& samples, int n_boot = 200,
                            std::uint64_t seed = 12345);

// Skewness from the sign ratio of f_phi samples: (N+ - N-)/(N+ + N-).
StableEstimate sign_ratio_beta(const std::vector<double>& f_phi_series, int n_boot = 200,
                               std::uint64_t seed = 12345);

// Chambers-Mallows-Stuck sampler; alpha = 2 reduces to a Gaussian with
// variance 2 scale^2. Serves as ground truth for the estimators.
std::vector<double> sample_alpha_stable(double alpha, double beta, double scale,
                                        std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream = 0);

// KS test of waiting times against the exponential law with the sample mean.
struct KsTestResult {
  double ks_distance = 0.0;
  double p_value = 0.0;
};
KsTestResult poisson_interarrival_test(const std::vector<double>& waiting_times);

// excess-free empirical kurtosis (fourth standardized moment)
double kurtosis(const std::vector<double>& x);

}  // namespace sllg
