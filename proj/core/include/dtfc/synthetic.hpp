#ifndef DTFC_SYNTHETIC_HPP
#define DTFC_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "dtfc/tensor.hpp"

namespace dtfc {

enum class SourceKind { PeakyMixture, HeavyTail, NearUniform };

const char* kind_name(SourceKind kind);
SourceKind parse_source_kind(const std::string& name);

// Desk-scale stand-ins for the distribution shapes seen in large-model
// feature dumps: a sharply concentrated mixture, a heavy-tailed source,
// and a flat one.
struct SyntheticSourceSpec {
  SourceKind kind = SourceKind::PeakyMixture;
  // peaky-mixture
  std::vector<double> weights{0.92, 0.05, 0.03};
  std::vector<double> means{0.0, 1.5, -2.0};
  std::vector<double> scales{0.08, 0.6, 1.2};
  // heavy-tail
  double scale = 1.0;
  // near-uniform
  double low = 0.0;
  double high = 1.0;

  std::uint64_t seed = 0;

  void validate() const;

  static SyntheticSourceSpec peaky(std::uint64_t seed);
  static SyntheticSourceSpec heavy(std::uint64_t seed, double scale = 1.0);
  static SyntheticSourceSpec uniform(std::uint64_t seed, double low = 0.0, double high = 1.0);
};

// Deterministic under (spec, count); output is quantized to float32 so
// generated tensors live in the NPY value domain.
FeatureTensor generate(const SyntheticSourceSpec& spec, std::size_t count);

// Picks k distinct tensors uniformly without replacement.
std::vector<FeatureTensor> sample_fit_set(const std::vector<FeatureTensor>& tensors,
                                          std::size_t k, std::uint64_t seed);

// Concatenates all scalar values into one flat tensor (the pooled fit set).
FeatureTensor pool_values(const std::vector<FeatureTensor>& tensors, const std::string& tag);

}  // namespace dtfc

#endif
