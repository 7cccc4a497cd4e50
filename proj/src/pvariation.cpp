#include <algorithm>
#include <cmath>
#include <string>

#include "sllg/parallel.hpp"
#include "sllg/stats.hpp"

namespace sllg {

std::vector<double> p_variation(const std::vector<double>& series, double dt_sample,
                                double p, int n) {
  if (p <= 0.0) throw ValidationError("p_variation: p must be positive");
  if (n < 1) throw ValidationError("p_variation: partition level must be >= 1");
  double mesh = 1.0 / n;
  if (mesh < dt_sample * (1.0 - 1e-12))
    throw InsufficientResolution("p_variation: stored spacing " + std::to_string(dt_sample) +
                                 " is coarser than the requested mesh " + std::to_string(mesh));
  std::size_t stride = static_cast<std::size_t>(std::llround(mesh / dt_sample));
  if (stride == 0) stride = 1;
  std::vector<double> v;
  double acc = 0.0;
  for (std::size_t k = stride; k < series.size(); k += stride) {
    acc += std::pow(std::abs(series[k] - series[k - stride]), p);
    v.push_back(acc);
  }
  return v;
}

double levy_half_cdf(double x, double c) {
  if (x <= 0.0) throw ValidationError("levy_half_cdf: x must be positive");
  if (c <= 0.0) throw ValidationError("levy_half_cdf: scale must be positive");
  return std::erfc(std::sqrt(0.5 * c / x));
}

double ks_distance_sorted(const std::vector<double>& sorted_samples,
                          const std::vector<double>& cdf_at_samples) {
  std::size_t n = sorted_samples.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(cdf_at_samples[i] - lo), std::abs(cdf_at_samples[i] - hi)));
  }
  return d;
}

namespace {

// KS distance of per-segment sums against the half-stable law at scale c
double ks_at_scale(const std::vector<double>& sorted_v, double c) {
  std::size_t n = sorted_v.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double F = sorted_v[i] > 0.0 ? std::erfc(std::sqrt(0.5 * c / sorted_v[i])) : 0.0;
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(F - lo), std::abs(F - hi)));
  }
  return d;
}

// golden-section minimization of KS over log c; the search window is
// centered on the scale whose law has the sample median (the median of the
// half-stable law at scale c sits near 2.2 c), so arbitrarily large or small
// segment sums stay inside the bracket
std::pair<double, double> min_ks_over_scale(const std::vector<double>& sorted_v) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double med = sorted_v[sorted_v.size() / 2];
  if (!(med > 0.0)) med = 1.0;
  double center = std::log(med / 2.198);
  double lo = center - 25.0, hi = center + 25.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = ks_at_scale(sorted_v, std::exp(x1));
  double f2 = ks_at_scale(sorted_v, std::exp(x2));
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = ks_at_scale(sorted_v, std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = ks_at_scale(sorted_v, std::exp(x2));
    }
  }
  double xm = 0.5 * (lo + hi);
  return {std::exp(xm), ks_at_scale(sorted_v, std::exp(xm))};
}

}  // namespace

namespace {

PVariationResult ks_over_p_grid(const std::vector<double>& inc,
                                const std::vector<double>& p_grid, int n_segments,
                                int segment_len) {
  PVariationResult out;
  out.p_grid = p_grid;
  out.ks_distance.resize(p_grid.size());
  out.best_scale.resize(p_grid.size());

  parallel_for(static_cast<std::ptrdiff_t>(p_grid.size()), [&](std::ptrdiff_t pi) {
    double p = p_grid[static_cast<std::size_t>(pi)];
    std::vector<double> v(static_cast<std::size_t>(n_segments), 0.0);
    for (int seg = 0; seg < n_segments; ++seg) {
      double acc = 0.0;
      std::size_t base = static_cast<std::size_t>(seg) * segment_len;
      for (int j = 0; j < segment_len; ++j) acc += std::pow(inc[base + j], p);
      v[static_cast<std::size_t>(seg)] = acc;
    }
    std::sort(v.begin(), v.end());
    auto [scale, ks] = min_ks_over_scale(v);
    out.ks_distance[static_cast<std::size_t>(pi)] = ks;
    out.best_scale[static_cast<std::size_t>(pi)] = scale;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (out.ks_distance[i] < out.ks_distance[best]) best = i;
  out.p_star = p_grid[best];
  out.alpha = 0.5 * out.p_star;
  out.ks_min = out.ks_distance[best];
  return out;
}

}  // namespace

PVariationResult pvariation_ks_test(const std::vector<double>& series,
                                    const std::vector<double>& p_grid, int n_segments,
                                    int segment_len) {
  if (p_grid.empty()) throw ValidationError("pvariation_ks_test: empty p grid");
  if (n_segments < 1 || segment_len < 1)
    throw ValidationError("pvariation_ks_test: segment layout must be positive");
  std::size_t needed = static_cast<std::size_t>(n_segments) * segment_len + 1;
  if (series.size() < needed)
    throw InsufficientData("pvariation_ks_test: need " + std::to_string(needed) +
                           " samples, have " + std::to_string(series.size()));

  std::vector<double> inc(static_cast<std::size_t>(n_segments) * segment_len);
  for (std::size_t k = 0; k < inc.size(); ++k)
    inc[k] = std::abs(series[k + 1] - series[k]);
  return ks_over_p_grid(inc, p_grid, n_segments, segment_len);
}

PVariationResult pvariation_ks_pooled(const std::vector<std::vector<double>>& series_list,
                                      const std::vector<double>& p_grid, int segment_len,
                                      int* n_segments_used) {
  if (p_grid.empty()) throw ValidationError("pvariation_ks_pooled: empty p grid");
  if (segment_len < 1) throw ValidationError("pvariation_ks_pooled: segment_len must be >= 1");
  std::vector<double> inc;
  int n_segments = 0;
  for (const auto& series : series_list) {
    if (series.size() < static_cast<std::size_t>(segment_len) + 1) continue;
    int segs = static_cast<int>((series.size() - 1) / static_cast<std::size_t>(segment_len));
    for (std::size_t k = 0; k < static_cast<std::size_t>(segs) * segment_len; ++k)
      inc.push_back(std::abs(series[k + 1] - series[k]));
    n_segments += segs;
  }
  if (n_segments < 10)
    throw InsufficientData("pvariation_ks_pooled: only " + std::to_string(n_segments) +
                           " whole segments of length " + std::to_string(segment_len));
  if (n_segments_used) *n_segments_used = n_segments;
  return ks_over_p_grid(inc, p_grid, n_segments, segment_len);
}

double kurtosis(const std::vector<double>& x) {
  if (x.size() < 4) throw InsufficientData("kurtosis: need at least 4 samples");
  double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  if (m2 <= 0.0) throw DegenerateTail("kurtosis: zero variance");
  return m4 / (m2 * m2);
}

}  // namespace sllg
