#ifndef DTFC_TRANSFORM_HPP
#define DTFC_TRANSFORM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dtfc/codebook.hpp"
#include "dtfc/tensor.hpp"

namespace dtfc {

// Per-restart fit trace. The distortion is normalized per element, so it
// is directly comparable to MSE across tensor sizes.
struct FitReport {
  std::size_t iterations = 0;
  std::vector<double> distortion_trace;
  double final_distortion = 0.0;
  std::size_t reseed_events = 0;
};

struct LloydOptions {
  std::size_t restarts = 10;
  double tol = 1e-6;  // relative change of distortion
  std::size_t max_iters = 200;
};

// Alternates nearest-center assignment and region-mean update until the
// distortion change drops below tol (relative) or max_iters is hit.
// Restart 0 starts from equal-frequency quantile centers; later restarts
// jitter those centers with seeded noise at 1% of the data range. Empty
// regions are repaired by reseeding at the worst-served sample. Returns
// the restart with the lowest final distortion.
std::pair<TransformCodebook, FitReport> fit_lloyd_max(const FeatureTensor& data,
                                                      std::uint32_t levels,
                                                      std::uint64_t seed,
                                                      const LloydOptions& options = {});

// Boundaries at empirical quantiles j/L, centers at region means.
TransformCodebook fit_equal_frequency(const FeatureTensor& data, std::uint32_t levels);

// Evenly spaced centers over [quantile(truncate_pct), quantile(1 - truncate_pct)].
TransformCodebook fit_uniform(const FeatureTensor& data, std::uint32_t levels,
                              double truncate_pct = 0.0);

// Globally optimal contiguous partition of the sorted data (dynamic
// programming over prefix sums). Exact oracle for small instances:
// n <= 4096, levels <= 64. Returns the codebook and its per-element
// distortion.
std::pair<TransformCodebook, double> fit_optimal_dp(const FeatureTensor& data,
                                                    std::uint32_t levels);

// T(f) = index of the nearest center, ties to the lower index.
SymbolPlane forward_transform(const FeatureTensor& data, const TransformCodebook& cb);

// T^-1(k) = c_k.
FeatureTensor inverse_transform(const SymbolPlane& plane, const TransformCodebook& cb);

// Mean over all elements of (f - c_{T(f)})^2.
double transform_distortion(const FeatureTensor& data, const TransformCodebook& cb);

// Empirical quantile, R-6 definition (position p*(n+1) - 1, clamped,
// linear interpolation between order statistics). `sorted` must be
// ascending.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace dtfc

#endif
