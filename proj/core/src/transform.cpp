#include "dtfc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtfc/rng.hpp"

namespace dtfc {

namespace {

// Sorted copy of the data shifted by its mean, with prefix sums of x and
// x^2. Shifting keeps the cancellation in the region-SSE formula at the
// scale of the data spread instead of its magnitude.
struct SortedView {
  std::vector<double> sorted;   // original values, ascending
  std::vector<double> shifted;  // sorted - shift
  std::vector<double> prefix1;  // prefix sums of shifted
  std::vector<double> prefix2;  // prefix sums of shifted^2
  double shift = 0.0;
  std::size_t distinct = 0;

  explicit SortedView(const std::vector<double>& values) {
    sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double mean = 0.0;
    for (double v : sorted) mean += v;
    shift = n > 0 ? mean / static_cast<double>(n) : 0.0;
    shifted.resize(n);
    prefix1.assign(n + 1, 0.0);
    prefix2.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      shifted[i] = sorted[i] - shift;
      prefix1[i + 1] = prefix1[i] + shifted[i];
      prefix2[i + 1] = prefix2[i] + shifted[i] * shifted[i];
    }
    distinct = n > 0 ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (sorted[i] != sorted[i - 1]) ++distinct;
    }
  }

  std::size_t size() const { return sorted.size(); }

  // Mean of sorted[i, j), original space.
  double region_mean(std::size_t i, std::size_t j) const {
    return shift + (prefix1[j] - prefix1[i]) / static_cast<double>(j - i);
  }

  // Sum of (x - c)^2 over sorted[i, j).
  double region_sse(std::size_t i, std::size_t j, double c) const {
    if (j <= i) return 0.0;
    const double cs = c - shift;
    const double s1 = prefix1[j] - prefix1[i];
    const double s2 = prefix2[j] - prefix2[i];
    const double cnt = static_cast<double>(j - i);
    return s2 - 2.0 * cs * s1 + cnt * cs * cs;
  }
};

void check_fit_input(const FeatureTensor& data, std::uint32_t levels,
                     const SortedView& view) {
  if (levels < TransformCodebook::kMinLevels || levels > TransformCodebook::kMaxLevels) {
    fail(ErrorKind::ParamError, "levels must be in [2, 65536]");
  }
  data.validate();
  if (view.distinct < levels) {
    fail(ErrorKind::DegenerateInput, "fewer distinct values than levels");
  }
}

// Region split positions for midpoint boundaries: values <= boundary go
// to the lower region (the forward-transform tie rule). split[k] is the
// end of region k; split[levels-1] == n.
std::vector<std::size_t> split_positions(const SortedView& view,
                                         const std::vector<double>& centers) {
  const std::uint32_t levels = static_cast<std::uint32_t>(centers.size());
  std::vector<std::size_t> split(levels);
  for (std::uint32_t k = 0; k + 1 < levels; ++k) {
    const double b = 0.5 * (centers[k] + centers[k + 1]);
    split[k] = static_cast<std::size_t>(
        std::upper_bound(view.sorted.begin(), view.sorted.end(), b) - view.sorted.begin());
  }
  split[levels - 1] = view.size();
  return split;
}

double total_sse(const SortedView& view, const std::vector<double>& centers,
                 const std::vector<std::size_t>& split) {
  double sse = 0.0;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    sse += view.region_sse(begin, split[k], centers[k]);
    begin = split[k];
  }
  return sse;
}

// Centers at equal-frequency quantiles (k + 0.5) / L, nudged apart if
// quantile ties collapse them.
std::vector<double> quantile_centers(const SortedView& view, std::uint32_t levels) {
  std::vector<double> centers(levels);
  for (std::uint32_t k = 0; k < levels; ++k) {
    centers[k] = quantile_sorted(view.sorted, (static_cast<double>(k) + 0.5) /
                                                  static_cast<double>(levels));
  }
  for (std::uint32_t k = 1; k < levels; ++k) {
    if (!(centers[k] > centers[k - 1])) {
      centers[k] = std::nextafter(centers[k - 1], std::numeric_limits<double>::infinity());
    }
  }
  return centers;
}

struct RestartResult {
  std::vector<double> centers;
  FitReport report;
};

RestartResult run_lloyd_restart(const SortedView& view, std::uint32_t levels,
                                std::vector<double> centers, const LloydOptions& options) {
  RestartResult result;
  const std::size_t n = view.size();
  double prev = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    std::vector<std::size_t> split = split_positions(view, centers);

    // Update step: region means for non-empty regions.
    std::vector<double> updated(levels);
    std::vector<std::uint32_t> empties;
    std::size_t begin = 0;
    for (std::uint32_t k = 0; k < levels; ++k) {
      if (split[k] > begin) {
        updated[k] = view.region_mean(begin, split[k]);
      } else {
        empties.push_back(k);
        updated[k] = centers[k];
      }
      begin = split[k];
    }

    // Reseed each empty region at the sample farthest from its center,
    // stealing only from regions that keep at least one sample.
    if (!empties.empty()) {
      std::vector<std::size_t> begins(levels), ends(levels);
      begin = 0;
      for (std::uint32_t k = 0; k < levels; ++k) {
        begins[k] = begin;
        ends[k] = split[k];
        begin = split[k];
      }
      for (std::uint32_t e : empties) {
        double worst = -1.0;
        std::uint32_t worst_region = 0;
        bool worst_at_front = true;
        for (std::uint32_t k = 0; k < levels; ++k) {
          if (ends[k] - begins[k] < 2) continue;
          const double d_front = std::fabs(view.sorted[begins[k]] - updated[k]);
          const double d_back = std::fabs(view.sorted[ends[k] - 1] - updated[k]);
          if (d_front > worst) {
            worst = d_front;
            worst_region = k;
            worst_at_front = true;
          }
          if (d_back > worst) {
            worst = d_back;
            worst_region = k;
            worst_at_front = false;
          }
        }
        if (worst <= 0.0) break;  // nothing left to steal
        if (worst_at_front) {
          updated[e] = view.sorted[begins[worst_region]];
          ++begins[worst_region];
        } else {
          updated[e] = view.sorted[ends[worst_region] - 1];
          --ends[worst_region];
        }
        ++result.report.reseed_events;
      }
      std::sort(updated.begin(), updated.end());
    }

    // Strictness repair: identical adjacent means can only appear through
    // rounding; nudge by one ulp.
    for (std::uint32_t k = 1; k < levels; ++k) {
      if (!(updated[k] > updated[k - 1])) {
        updated[k] = std::nextafter(updated[k - 1], std::numeric_limits<double>::infinity());
      }
    }

    centers = std::move(updated);
    split = split_positions(view, centers);
    const double distortion = total_sse(view, centers, split) / static_cast<double>(n);
    result.report.distortion_trace.push_back(distortion);

    if (std::fabs(prev - distortion) <= options.tol * std::max(distortion, 1e-30)) {
      break;
    }
    prev = distortion;
  }

  result.centers = std::move(centers);
  result.report.iterations = result.report.distortion_trace.size();
  result.report.final_distortion = result.report.distortion_trace.back();
  return result;
}

}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) fail(ErrorKind::ParamError, "quantile of empty data");
  const std::size_t n = sorted.size();
  double pos = p * static_cast<double>(n + 1) - 1.0;
  if (pos <= 0.0) return sorted.front();
  if (pos >= static_cast<double>(n - 1)) return sorted.back();
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::pair<TransformCodebook, FitReport> fit_lloyd_max(const FeatureTensor& data,
                                                      std::uint32_t levels,
                                                      std::uint64_t seed,
                                                      const LloydOptions& options) {
  const SortedView view(data.values);
  check_fit_input(data, levels, view);
  if (options.restarts < 1) fail(ErrorKind::ParamError, "restarts must be >= 1");
  if (!(options.tol > 0.0)) fail(ErrorKind::ParamError, "tol must be > 0");
  if (options.max_iters < 1) fail(ErrorKind::ParamError, "max_iters must be >= 1");

  const std::vector<double> base = quantile_centers(view, levels);
  const double range = view.sorted.back() - view.sorted.front();

  RestartResult best;
  bool have_best = false;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    std::vector<double> init = base;
    if (r > 0) {
      std::mt19937_64 rng(mix_seed(seed, r));
      const double amp = 0.01 * range;
      for (double& c : init) c += (2.0 * uniform01(rng) - 1.0) * amp;
      std::sort(init.begin(), init.end());
      for (std::uint32_t k = 1; k < levels; ++k) {
        if (!(init[k] > init[k - 1])) {
          init[k] = std::nextafter(init[k - 1], std::numeric_limits<double>::infinity());
        }
      }
    }
    RestartResult result = run_lloyd_restart(view, levels, std::move(init), options);
    if (!have_best || result.report.final_distortion < best.report.final_distortion) {
      best = std::move(result);
      have_best = true;
    }
  }

  TransformCodebook cb;
  cb.levels = levels;
  cb.centers = std::move(best.centers);
  cb.mode = FitMode::LloydMax;
  cb.fit_seed = seed;
  cb.source_tag = data.source_tag;
  cb.validate();
  return {std::move(cb), std::move(best.report)};
}

TransformCodebook fit_equal_frequency(const FeatureTensor& data, std::uint32_t levels) {
  const SortedView view(data.values);
  check_fit_input(data, levels, view);
  const std::size_t n = view.size();

  // Quantile boundaries at j/L; a value equal to a boundary belongs to
  // the lower region.
  std::vector<std::size_t> split(levels);
  for (std::uint32_t j = 1; j < levels; ++j) {
    const double b = quantile_sorted(view.sorted, static_cast<double>(j) /
                                                      static_cast<double>(levels));
    split[j - 1] = static_cast<std::size_t>(
        std::upper_bound(view.sorted.begin(), view.sorted.end(), b) - view.sorted.begin());
  }
  split[levels - 1] = n;

  std::vector<double> centers(levels);
  std::size_t begin = 0;
  for (std::uint32_t k = 0; k < levels; ++k) {
    if (split[k] <= begin) {
      fail(ErrorKind::DegenerateInput, "quantile ties leave an empty region");
    }
    centers[k] = view.region_mean(begin, split[k]);
    begin = split[k];
  }

  // Tie collapse repair: nudge duplicated centers to region medians.
  bool has_dup = false;
  for (std::uint32_t k = 1; k < levels; ++k) {
    if (!(centers[k] > centers[k - 1])) has_dup = true;
  }
  if (has_dup) {
    begin = 0;
    for (std::uint32_t k = 0; k < levels; ++k) {
      const std::size_t cnt = split[k] - begin;
      centers[k] = view.sorted[begin + cnt / 2];
      begin = split[k];
    }
    for (std::uint32_t k = 1; k < levels; ++k) {
      if (!(centers[k] > centers[k - 1])) {
        fail(ErrorKind::DegenerateInput, "equal-frequency centers remain degenerate");
      }
    }
  }

  TransformCodebook cb;
  cb.levels = levels;
  cb.centers = std::move(centers);
  cb.mode = FitMode::EqualFreq;
  cb.fit_seed = 0;
  cb.source_tag = data.source_tag;
  cb.validate();
  return cb;
}

TransformCodebook fit_uniform(const FeatureTensor& data, std::uint32_t levels,
                              double truncate_pct) {
  if (levels < TransformCodebook::kMinLevels || levels > TransformCodebook::kMaxLevels) {
    fail(ErrorKind::ParamError, "levels must be in [2, 65536]");
  }
  if (!(truncate_pct >= 0.0 && truncate_pct < 0.5)) {
    fail(ErrorKind::ParamError, "truncate_pct must be in [0, 0.5)");
  }
  data.validate();
  std::vector<double> sorted = data.values;
  std::sort(sorted.begin(), sorted.end());

  const double lo = quantile_sorted(sorted, truncate_pct);
  const double hi = quantile_sorted(sorted, 1.0 - truncate_pct);
  if (!(lo < hi)) fail(ErrorKind::DegenerateInput, "truncated range is empty");

  std::vector<double> centers(levels);
  const double step = (hi - lo) / static_cast<double>(levels);
  for (std::uint32_t k = 0; k < levels; ++k) {
    centers[k] = lo + (static_cast<double>(k) + 0.5) * step;
  }

  TransformCodebook cb;
  cb.levels = levels;
  cb.centers = std::move(centers);
  cb.mode = FitMode::Uniform;
  cb.fit_seed = 0;
  cb.source_tag = data.source_tag;
  cb.validate();
  return cb;
}

std::pair<TransformCodebook, double> fit_optimal_dp(const FeatureTensor& data,
                                                    std::uint32_t levels) {
  constexpr std::size_t kMaxElements = 4096;
  constexpr std::uint32_t kMaxLevels = 64;
  data.validate();
  if (data.values.size() > kMaxElements) {
    fail(ErrorKind::SizeError, "fit_optimal_dp: more than 4096 elements");
  }
  if (levels > kMaxLevels) fail(ErrorKind::SizeError, "fit_optimal_dp: more than 64 levels");
  const SortedView view(data.values);
  check_fit_input(data, levels, view);
  const std::size_t n = view.size();

  auto cost = [&view](std::size_t i, std::size_t j) {  // sorted[i, j)
    return view.region_sse(i, j, view.region_mean(i, j));
  };

  // layer[m] = optimal SSE of the first m elements with the current
  // cluster count; opt[k][m] = last split position achieving it.
  std::vector<double> layer(n + 1), next(n + 1);
  std::vector<std::vector<std::uint32_t>> opt(levels, std::vector<std::uint32_t>(n + 1, 0));
  for (std::size_t m = 1; m <= n; ++m) layer[m] = cost(0, m);

  for (std::uint32_t k = 1; k < levels; ++k) {
    // Divide and conquer over m: the optimal split is monotone in m.
    auto solve = [&](auto&& self, std::size_t m_lo, std::size_t m_hi, std::size_t j_lo,
                     std::size_t j_hi) -> void {
      if (m_lo > m_hi) return;
      const std::size_t m = (m_lo + m_hi) / 2;
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = j_lo;
      const std::size_t j_max = std::min(j_hi, m - 1);
      for (std::size_t j = std::max<std::size_t>(j_lo, k); j <= j_max; ++j) {
        const double c = layer[j] + cost(j, m);
        if (c < best) {
          best = c;
          best_j = j;
        }
      }
      next[m] = best;
      opt[k][m] = static_cast<std::uint32_t>(best_j);
      if (m > m_lo) self(self, m_lo, m - 1, j_lo, best_j);
      if (m < m_hi) self(self, m + 1, m_hi, best_j, j_hi);
    };
    solve(solve, k + 1, n, k, n - 1);
    std::swap(layer, next);
  }

  // Backtrack: split[k] is the end of region k.
  std::vector<std::size_t> split(levels);
  std::size_t m = n;
  for (std::uint32_t k = levels; k-- > 1;) {
    split[k] = m;
    m = opt[k][m];
  }
  split[0] = m;
  std::vector<double> centers(levels);
  std::size_t begin = 0;
  for (std::uint32_t k = 0; k < levels; ++k) {
    centers[k] = view.region_mean(begin, split[k]);
    begin = split[k];
  }

  TransformCodebook cb;
  cb.levels = levels;
  cb.centers = std::move(centers);
  cb.mode = FitMode::LloydMax;
  cb.fit_seed = 0;
  cb.source_tag = data.source_tag;
  cb.validate();
  return {std::move(cb), layer[n] / static_cast<double>(n)};
}

SymbolPlane forward_transform(const FeatureTensor& data, const TransformCodebook& cb) {
  cb.validate();
  data.validate();
  const std::vector<double> bounds = cb.boundaries();
  SymbolPlane plane;
  plane.shape = data.shape;
  plane.levels = cb.levels;
  plane.symbols.reserve(data.values.size());
  for (double v : data.values) {
    const std::size_t k = static_cast<std::size_t>(
        std::lower_bound(bounds.begin(), bounds.end(), v) - bounds.begin());
    plane.symbols.push_back(static_cast<std::uint32_t>(k));
  }
  return plane;
}

FeatureTensor inverse_transform(const SymbolPlane& plane, const TransformCodebook& cb) {
  cb.validate();
  plane.validate();
  if (plane.levels != cb.levels) {
    fail(ErrorKind::LevelMismatch, "plane levels != codebook levels");
  }
  FeatureTensor t;
  t.shape = plane.shape;
  t.values.reserve(plane.symbols.size());
  for (std::uint32_t s : plane.symbols) t.values.push_back(cb.centers[s]);
  t.source_tag = cb.source_tag;
  return t;
}

double transform_distortion(const FeatureTensor& data, const TransformCodebook& cb) {
  cb.validate();
  data.validate();
  const std::vector<double> bounds = cb.boundaries();
  double acc = 0.0;
  for (double v : data.values) {
    const std::size_t k = static_cast<std::size_t>(
        std::lower_bound(bounds.begin(), bounds.end(), v) - bounds.begin());
    const double d = v - cb.centers[k];
    acc += d * d;
  }
  return acc / static_cast<double>(data.values.size());
}

}  // namespace dtfc
