#include "dtfc/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dtfc {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

// Groups RD points by (mode, fit tag, eval tag) and sorts each group by
// bpfp; the iteration order of the map keeps output deterministic.
std::map<std::string, std::vector<RDPoint>> group_points(const std::vector<RDPoint>& points) {
  std::map<std::string, std::vector<RDPoint>> groups;
  for (const RDPoint& p : points) {
    groups[std::string(mode_name(p.mode)) + " " + p.source_tag + ":" + p.eval_tag].push_back(p);
  }
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const RDPoint& a, const RDPoint& b) { return a.bpfp < b.bpfp; });
  }
  return groups;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void write_rd_csv(const std::vector<RDPoint>& points, const std::string& path) {
  if (points.empty()) fail(ErrorKind::ParamError, "no points to report");
  auto out = open_out(path);
  out << "mode,levels,fit_tag,eval_tag,bpfp,mse,header_bits_share\n";
  for (const RDPoint& p : points) {
    out << mode_name(p.mode) << ',' << p.levels << ',' << p.source_tag << ',' << p.eval_tag
        << ',' << format_real(p.bpfp) << ',' << format_real(p.mse) << ','
        << format_real(p.header_bits_share) << '\n';
  }
}

std::vector<RDPoint> load_rd_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "mode,levels,fit_tag,eval_tag,bpfp,mse,header_bits_share") {
    fail(ErrorKind::FormatError, "unexpected CSV header");
  }
  std::vector<RDPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) fail(ErrorKind::FormatError, "bad CSV row");
    RDPoint p;
    p.mode = parse_fit_mode(fields[0]);
    p.levels = static_cast<std::uint32_t>(std::stoul(fields[1]));
    p.source_tag = fields[2];
    p.eval_tag = fields[3];
    p.bpfp = std::stod(fields[4]);
    p.mse = std::stod(fields[5]);
    p.header_bits_share = std::stod(fields[6]);
    points.push_back(std::move(p));
  }
  return points;
}

void write_rd_svg(const std::vector<RDPoint>& points, const std::string& path) {
  if (points.empty()) fail(ErrorKind::ParamError, "no points to report");
  const double width = 720, height = 480;
  const double ml = 70, mr = 20, mt = 30, mb = 50;

  double x_lo = points[0].bpfp, x_hi = points[0].bpfp;
  double y_lo = points[0].mse, y_hi = points[0].mse;
  for (const RDPoint& p : points) {
    x_lo = std::min(x_lo, p.bpfp);
    x_hi = std::max(x_hi, p.bpfp);
    y_lo = std::min(y_lo, p.mse);
    y_hi = std::max(y_hi, p.mse);
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;

  auto sx = [&](double v) { return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  auto sy = [&](double v) { return height - mb - (v - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (width / 2) << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">bpfp (bits per feature point)</text>\n";
  out << "<text x=\"16\" y=\"" << (height / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << (height / 2) << ")\">mse</text>\n";

  std::size_t color = 0;
  double legend_y = mt + 6;
  for (const auto& [key, group] : group_points(points)) {
    const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const RDPoint& p : group) out << sx(p.bpfp) << ',' << sy(p.mse) << ' ';
    out << "\"/>\n";
    for (const RDPoint& p : group) {
      out << "<circle cx=\"" << sx(p.bpfp) << "\" cy=\"" << sy(p.mse)
          << "\" r=\"2.5\" fill=\"" << stroke << "\"/>\n";
    }
    out << "<text x=\"" << width - mr - 6 << "\" y=\"" << legend_y
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << stroke << "\">" << key
        << "</text>\n";
    legend_y += 14;
    ++color;
  }
  out << "</svg>\n";
}

void emit_report(const std::vector<RDPoint>& points, const std::string& path,
                 ReportFormat format) {
  if (format == ReportFormat::Csv) {
    write_rd_csv(points, path);
  } else {
    write_rd_svg(points, path);
  }
}

void write_histogram_csv(const Histogram& hist, const std::string& path) {
  hist.validate();
  auto out = open_out(path);
  out << "bin,lo,hi,count,cdf\n";
  std::uint64_t acc = 0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    acc += hist.counts[b];
    const double cdf =
        hist.total == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(hist.total);
    out << b << ',' << format_real(hist.edges[b]) << ',' << format_real(hist.edges[b + 1])
        << ',' << hist.counts[b] << ',' << format_real(cdf) << '\n';
  }
}

void write_histogram_svg(const Histogram& hist, const std::string& title,
                         const std::string& path) {
  hist.validate();
  if (hist.total == 0) fail(ErrorKind::EmptyHistogram, "cannot plot empty histogram");
  const double width = 720, height = 480;
  const double ml = 60, mr = 20, mt = 36, mb = 40;
  const std::size_t bins = hist.counts.size();

  std::uint64_t cmax = 1;
  for (std::uint64_t c : hist.counts) cmax = std::max(cmax, c);
  const double log_max = std::log10(static_cast<double>(cmax) + 1.0);

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";

  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;
  const double bar_w = plot_w / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    if (hist.counts[b] == 0) continue;
    const double h =
        std::log10(static_cast<double>(hist.counts[b]) + 1.0) / log_max * plot_h;
    out << "<rect x=\"" << ml + static_cast<double>(b) * bar_w << "\" y=\""
        << height - mb - h << "\" width=\"" << bar_w << "\" height=\"" << h
        << "\" fill=\"#2ca02c\"/>\n";
  }

  // Overlaid empirical CDF.
  const std::vector<double> cdf = empirical_cdf(hist);
  out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  for (std::size_t b = 0; b < bins; ++b) {
    out << ml + (static_cast<double>(b) + 1.0) * bar_w << ',' << height - mb - cdf[b] * plot_h
        << ' ';
  }
  out << "\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">value (log-scaled frequency, red: CDF)"
      << "</text>\n";
  out << "</svg>\n";
}

void write_alignment_csv(const AlignmentMatrix& matrix, const std::string& path) {
  if (matrix.labels.empty()) fail(ErrorKind::ParamError, "empty alignment matrix");
  auto out = open_out(path);
  out << "p_tag,q_tag,kl\n";
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    for (std::size_t j = 0; j < matrix.labels.size(); ++j) {
      out << matrix.labels[i] << ',' << matrix.labels[j] << ','
          << format_real(matrix.kl[i][j]) << '\n';
    }
  }
}

void write_interval_csv(const IntervalWidthReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "region,width,log10_width\n";
  for (const auto& row : report.rows) {
    out << row.region << ',' << format_real(row.width) << ','
        << format_real(row.log10_width) << '\n';
  }
}

}  // namespace dtfc
