#ifndef DTFC_HARNESS_HPP
#define DTFC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dtfc/codebook.hpp"
#include "dtfc/tensor.hpp"
#include "dtfc/transform.hpp"

namespace dtfc {

// One operating point of the rate-distortion pipeline.
struct RDPoint {
  FitMode mode = FitMode::LloydMax;
  std::uint32_t levels = 0;
  double bpfp = 0.0;
  double mse = 0.0;
  std::string source_tag;  // fit data label
  std::string eval_tag;
  double header_bits_share = 0.0;
};

struct SweepSpec {
  std::vector<std::uint32_t> levels_list;
  FitMode fit_mode = FitMode::LloydMax;
  FeatureTensor fit_source;
  FeatureTensor eval_source;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FitParams {
  LloydOptions lloyd;
  double truncate_pct = 0.0;  // uniform mode
};

// Fits a codebook on fit_data with the given mode.
TransformCodebook fit_codebook(const FeatureTensor& fit_data, FitMode mode,
                               std::uint32_t levels, std::uint64_t seed,
                               const FitParams& params = {});

// Full pipeline: fit, forward-transform the evaluation data, encode,
// decode (verified bit-equal), inverse-transform, and measure. The codec
// is lossless, so mse is pure transformation distortion.
RDPoint run_point(const FeatureTensor& fit_data, const FeatureTensor& eval_data,
                  FitMode mode, std::uint32_t levels, std::uint64_t seed,
                  const FitParams& params = {});

// One RDPoint per level count, in spec order.
std::vector<RDPoint> run_sweep(const SweepSpec& spec, const FitParams& params = {});

// point[i][j] = run_point(fit = sources[i], eval = sources[j]).
std::vector<std::vector<RDPoint>> run_cross_matrix(const std::vector<FeatureTensor>& sources,
                                                   FitMode mode, std::uint32_t levels,
                                                   std::uint64_t seed,
                                                   const FitParams& params = {});

std::vector<RDPoint> flatten(const std::vector<std::vector<RDPoint>>& matrix);

}  // namespace dtfc

#endif
