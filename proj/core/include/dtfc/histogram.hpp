#ifndef DTFC_HISTOGRAM_HPP
#define DTFC_HISTOGRAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtfc/codebook.hpp"
#include "dtfc/tensor.hpp"

namespace dtfc {

struct Histogram {
  std::vector<double> edges;        // B + 1, strictly increasing
  std::vector<std::uint64_t> counts;  // B
  std::uint64_t total = 0;

  std::size_t bins() const { return counts.size(); }
  void validate() const;
};

struct AlignmentMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> kl;  // kl[i][j] = D(p_i || q_j), zero diagonal
};

// Fixed-bin histogram; bins are [edge_b, edge_{b+1}) with the last bin
// right-closed. Default range is [min, max] widened by 1e-9 of the span
// on both sides. Values outside an explicit range are not counted.
Histogram histogram(const FeatureTensor& data, std::uint32_t bins,
                    std::optional<std::pair<double, double>> range = std::nullopt);

// One bin per symbol, integer edges 0..L.
Histogram symbol_histogram(const SymbolPlane& plane);

// Histograms over the union of the tensors' value ranges, shared edges.
std::vector<Histogram> shared_range_histograms(const std::vector<FeatureTensor>& tensors,
                                               std::uint32_t bins);

// Prefix sums of counts / total; ends at 1.
std::vector<double> empirical_cdf(const Histogram& hist);

// Base-2 entropy over non-zero bins; in [0, log2(B)].
double shannon_entropy(const Histogram& hist);

// D(p || q) in nats, with additive epsilon smoothing of every bin count
// before renormalizing. Requires identical edges.
double kl_divergence(const Histogram& p, const Histogram& q, double epsilon = 1e-10);

struct IntervalWidthRow {
  std::uint32_t region = 0;
  double width = 0.0;
  double log10_width = 0.0;
};

struct IntervalWidthReport {
  std::vector<IntervalWidthRow> rows;  // interior regions 1..L-2
  double mean_width = 0.0;
};

// Widths of the interior (bounded) regions of a codebook.
IntervalWidthReport interval_width_report(const TransformCodebook& cb);

// Pairwise KL grid between tagged histograms sharing edges.
AlignmentMatrix alignment_matrix(const std::vector<std::pair<std::string, Histogram>>& sources,
                                 double epsilon = 1e-10);

}  // namespace dtfc

#endif
