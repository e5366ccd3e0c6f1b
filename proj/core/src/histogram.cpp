#include "dtfc/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtfc {

void Histogram::validate() const {
  if (edges.size() != counts.size() + 1) {
    fail(ErrorKind::DataError, "histogram edge/count size mismatch");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i - 1] < edges[i])) fail(ErrorKind::DataError, "edges not strictly increasing");
  }
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  if (sum != total) fail(ErrorKind::DataError, "histogram total mismatch");
}

Histogram histogram(const FeatureTensor& data, std::uint32_t bins,
                    std::optional<std::pair<double, double>> range) {
  data.validate();
  if (bins < 2) fail(ErrorKind::ParamError, "histogram needs >= 2 bins");

  double lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
    if (!(lo < hi)) fail(ErrorKind::ParamError, "histogram range: need lo < hi");
  } else {
    lo = *std::min_element(data.values.begin(), data.values.end());
    hi = *std::max_element(data.values.begin(), data.values.end());
    if (!(lo < hi)) {
      fail(ErrorKind::DegenerateInput, "all values equal and no explicit range");
    }
    const double pad = 1e-9 * (hi - lo);
    lo -= pad;
    hi += pad;
  }

  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::uint32_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + static_cast<double>(b) * width;
  }
  h.edges[bins] = hi;  // exact upper edge
  h.counts.assign(bins, 0);

  for (double v : data.values) {
    if (v < lo || v > hi) continue;
    // Bin by edge search so the [e_b, e_{b+1}) semantics hold exactly.
    std::size_t b = static_cast<std::size_t>(
        std::upper_bound(h.edges.begin(), h.edges.end(), v) - h.edges.begin());
    if (b > 0) --b;
    if (b >= bins) b = bins - 1;  // v == hi, right-closed last bin
    ++h.counts[b];
  }
  for (std::uint64_t c : h.counts) h.total += c;
  return h;
}

Histogram symbol_histogram(const SymbolPlane& plane) {
  plane.validate();
  if (plane.levels < 2) fail(ErrorKind::ParamError, "symbol histogram needs >= 2 levels");
  Histogram h;
  h.edges.resize(plane.levels + 1);
  for (std::uint32_t k = 0; k <= plane.levels; ++k) h.edges[k] = static_cast<double>(k);
  h.counts.assign(plane.levels, 0);
  for (std::uint32_t s : plane.symbols) ++h.counts[s];
  h.total = plane.symbols.size();
  return h;
}

std::vector<Histogram> shared_range_histograms(const std::vector<FeatureTensor>& tensors,
                                               std::uint32_t bins) {
  if (tensors.empty()) fail(ErrorKind::ParamError, "no tensors");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& t : tensors) {
    t.validate();
    lo = std::min(lo, *std::min_element(t.values.begin(), t.values.end()));
    hi = std::max(hi, *std::max_element(t.values.begin(), t.values.end()));
  }
  if (!(lo < hi)) fail(ErrorKind::DegenerateInput, "shared range is empty");
  const double pad = 1e-9 * (hi - lo);
  std::vector<Histogram> out;
  out.reserve(tensors.size());
  for (const auto& t : tensors) {
    out.push_back(histogram(t, bins, std::make_pair(lo - pad, hi + pad)));
  }
  return out;
}

std::vector<double> empirical_cdf(const Histogram& hist) {
  hist.validate();
  if (hist.total == 0) fail(ErrorKind::EmptyHistogram, "cdf of empty histogram");
  std::vector<double> cdf(hist.counts.size());
  std::uint64_t acc = 0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    acc += hist.counts[b];
    cdf[b] = static_cast<double>(acc) / static_cast<double>(hist.total);
  }
  return cdf;
}

double shannon_entropy(const Histogram& hist) {
  hist.validate();
  if (hist.total == 0) fail(ErrorKind::EmptyHistogram, "entropy of empty histogram");
  double h = 0.0;
  const double total = static_cast<double>(hist.total);
  for (std::uint64_t c : hist.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double kl_divergence(const Histogram& p, const Histogram& q, double epsilon) {
  p.validate();
  q.validate();
  if (!(epsilon > 0.0)) fail(ErrorKind::ParamError, "epsilon must be > 0");
  if (p.edges != q.edges) fail(ErrorKind::EdgeMismatch, "histograms have different edges");
  if (p.total == 0 || q.total == 0) fail(ErrorKind::EmptyHistogram, "kl of empty histogram");

  const std::size_t bins = p.counts.size();
  const double pt = static_cast<double>(p.total) + epsilon * static_cast<double>(bins);
  const double qt = static_cast<double>(q.total) + epsilon * static_cast<double>(bins);
  double d = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    const double ph = (static_cast<double>(p.counts[b]) + epsilon) / pt;
    const double qh = (static_cast<double>(q.counts[b]) + epsilon) / qt;
    d += ph * std::log(ph / qh);
  }
  return d < 0.0 ? 0.0 : d;
}

IntervalWidthReport interval_width_report(const TransformCodebook& cb) {
  cb.validate();
  if (cb.levels < 3) fail(ErrorKind::TooFewLevels, "interval report needs >= 3 levels");
  const std::vector<double> bounds = cb.boundaries();
  IntervalWidthReport report;
  report.rows.reserve(cb.levels - 2);
  double sum = 0.0;
  for (std::uint32_t k = 1; k + 1 < cb.levels; ++k) {
    IntervalWidthRow row;
    row.region = k;
    row.width = bounds[k] - bounds[k - 1];
    row.log10_width = std::log10(row.width);
    sum += row.width;
    report.rows.push_back(row);
  }
  report.mean_width = sum / static_cast<double>(report.rows.size());
  return report;
}

AlignmentMatrix alignment_matrix(const std::vector<std::pair<std::string, Histogram>>& sources,
                                 double epsilon) {
  if (sources.size() < 2) fail(ErrorKind::ParamError, "alignment needs >= 2 sources");
  AlignmentMatrix m;
  m.labels.reserve(sources.size());
  for (const auto& [tag, hist] : sources) {
    hist.validate();
    if (hist.edges != sources.front().second.edges) {
      fail(ErrorKind::EdgeMismatch, "alignment sources must share edges");
    }
    m.labels.push_back(tag);
  }
  m.kl.assign(sources.size(), std::vector<double>(sources.size(), 0.0));
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = 0; j < sources.size(); ++j) {
      if (i == j) continue;
      m.kl[i][j] = kl_divergence(sources[i].second, sources[j].second, epsilon);
    }
  }
  return m;
}

}  // namespace dtfc
