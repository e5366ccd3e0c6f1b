#include "dtfc/harness.hpp"

#include "dtfc/codec.hpp"

namespace dtfc {

void SweepSpec::validate() const {
  if (levels_list.empty()) fail(ErrorKind::ParamError, "sweep: empty levels list");
  for (std::size_t i = 0; i < levels_list.size(); ++i) {
    if (levels_list[i] < 2) fail(ErrorKind::ParamError, "sweep: levels must be >= 2");
    if (i > 0 && levels_list[i] <= levels_list[i - 1]) {
      fail(ErrorKind::ParamError, "sweep: levels list must be strictly increasing");
    }
  }
}

TransformCodebook fit_codebook(const FeatureTensor& fit_data, FitMode mode,
                               std::uint32_t levels, std::uint64_t seed,
                               const FitParams& params) {
  switch (mode) {
    case FitMode::LloydMax:
      return fit_lloyd_max(fit_data, levels, seed, params.lloyd).first;
    case FitMode::EqualFreq:
      return fit_equal_frequency(fit_data, levels);
    case FitMode::Uniform:
      return fit_uniform(fit_data, levels, params.truncate_pct);
  }
  fail(ErrorKind::ParamError, "unknown fit mode");
}

RDPoint run_point(const FeatureTensor& fit_data, const FeatureTensor& eval_data,
                  FitMode mode, std::uint32_t levels, std::uint64_t seed,
                  const FitParams& params) {
  const TransformCodebook cb = fit_codebook(fit_data, mode, levels, seed, params);
  const SymbolPlane plane = forward_transform(eval_data, cb);
  const Bitstream stream = encode(plane, cb);

  auto [decoded_plane, decoded_cb] = decode(stream);
  if (!(decoded_plane == plane) || !(decoded_cb == cb)) {
    fail(ErrorKind::CorruptPayload, "decode does not round-trip");
  }

  const FeatureTensor recon = inverse_transform(decoded_plane, decoded_cb);

  RDPoint point;
  point.mode = mode;
  point.levels = levels;
  point.bpfp = bpfp(stream, eval_data.element_count());
  point.mse = mse(eval_data, recon);
  point.source_tag = fit_data.source_tag;
  point.eval_tag = eval_data.source_tag;
  point.header_bits_share =
      static_cast<double>(stream.header_bits()) / static_cast<double>(stream.total_bits());
  return point;
}

std::vector<RDPoint> run_sweep(const SweepSpec& spec, const FitParams& params) {
  spec.validate();
  std::vector<RDPoint> points;
  points.reserve(spec.levels_list.size());
  for (std::uint32_t levels : spec.levels_list) {
    points.push_back(
        run_point(spec.fit_source, spec.eval_source, spec.fit_mode, levels, spec.seed, params));
  }
  return points;
}

std::vector<std::vector<RDPoint>> run_cross_matrix(const std::vector<FeatureTensor>& sources,
                                                   FitMode mode, std::uint32_t levels,
                                                   std::uint64_t seed,
                                                   const FitParams& params) {
  if (sources.size() < 2) fail(ErrorKind::ParamError, "cross matrix needs >= 2 sources");
  std::vector<std::vector<RDPoint>> matrix(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    matrix[i].reserve(sources.size());
    for (std::size_t j = 0; j < sources.size(); ++j) {
      matrix[i].push_back(run_point(sources[i], sources[j], mode, levels, seed, params));
    }
  }
  return matrix;
}

std::vector<RDPoint> flatten(const std::vector<std::vector<RDPoint>>& matrix) {
  std::vector<RDPoint> out;
  for (const auto& row : matrix) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace dtfc
