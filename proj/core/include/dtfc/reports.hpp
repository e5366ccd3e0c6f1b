#ifndef DTFC_REPORTS_HPP
#define DTFC_REPORTS_HPP

#include <string>
#include <vector>

#include "dtfc/harness.hpp"
#include "dtfc/histogram.hpp"

namespace dtfc {

enum class ReportFormat { Csv, Svg };

// Rate-distortion tables and curves. CSV columns:
//   mode,levels,fit_tag,eval_tag,bpfp,mse,header_bits_share
// Reals carry 17 significant digits so a reload reproduces the doubles
// exactly. The SVG draws one polyline per (mode, fit/eval) pairing with
// bpfp on the x axis and mse on y, points sorted by bpfp.
void emit_report(const std::vector<RDPoint>& points, const std::string& path,
                 ReportFormat format);
void write_rd_csv(const std::vector<RDPoint>& points, const std::string& path);
void write_rd_svg(const std::vector<RDPoint>& points, const std::string& path);
std::vector<RDPoint> load_rd_csv(const std::string& path);

// Distribution diagnostics.
void write_histogram_csv(const Histogram& hist, const std::string& path);
void write_histogram_svg(const Histogram& hist, const std::string& title,
                         const std::string& path);
void write_alignment_csv(const AlignmentMatrix& matrix, const std::string& path);
void write_interval_csv(const IntervalWidthReport& report, const std::string& path);

// Shortest text that round-trips a double (17 significant digits).
std::string format_real(double v);

}  // namespace dtfc

#endif
