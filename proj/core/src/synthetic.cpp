#include "dtfc/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dtfc/rng.hpp"

namespace dtfc {

const char* kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::PeakyMixture: return "peaky-mixture";
    case SourceKind::HeavyTail: return "heavy-tail";
    case SourceKind::NearUniform: return "near-uniform";
  }
  return "unknown";
}

SourceKind parse_source_kind(const std::string& name) {
  if (name == "peaky-mixture") return SourceKind::PeakyMixture;
  if (name == "heavy-tail") return SourceKind::HeavyTail;
  if (name == "near-uniform") return SourceKind::NearUniform;
  fail(ErrorKind::ParamError, "unknown source kind '" + name + "'");
}

void SyntheticSourceSpec::validate() const {
  switch (kind) {
    case SourceKind::PeakyMixture: {
      if (weights.empty() || weights.size() != means.size() || weights.size() != scales.size()) {
        fail(ErrorKind::ParamError, "peaky-mixture: weights/means/scales sizes differ");
      }
      double sum = 0.0;
      for (double w : weights) {
        if (!(w > 0.0)) fail(ErrorKind::ParamError, "peaky-mixture: non-positive weight");
        sum += w;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        fail(ErrorKind::ParamError, "peaky-mixture: weights must sum to 1");
      }
      for (double s : scales) {
        if (!(s > 0.0)) fail(ErrorKind::ParamError, "peaky-mixture: non-positive scale");
      }
      break;
    }
    case SourceKind::HeavyTail:
      if (!(scale > 0.0)) fail(ErrorKind::ParamError, "heavy-tail: scale must be positive");
      break;
    case SourceKind::NearUniform:
      if (!(low < high)) fail(ErrorKind::ParamError, "near-uniform: need low < high");
      break;
  }
}

SyntheticSourceSpec SyntheticSourceSpec::peaky(std::uint64_t seed) {
  SyntheticSourceSpec s;
  s.kind = SourceKind::PeakyMixture;
  s.seed = seed;
  return s;
}

SyntheticSourceSpec SyntheticSourceSpec::heavy(std::uint64_t seed, double scale) {
  SyntheticSourceSpec s;
  s.kind = SourceKind::HeavyTail;
  s.scale = scale;
  s.seed = seed;
  return s;
}

SyntheticSourceSpec SyntheticSourceSpec::uniform(std::uint64_t seed, double low, double high) {
  SyntheticSourceSpec s;
  s.kind = SourceKind::NearUniform;
  s.low = low;
  s.high = high;
  s.seed = seed;
  return s;
}

FeatureTensor generate(const SyntheticSourceSpec& spec, std::size_t count) {
  spec.validate();
  if (count == 0) fail(ErrorKind::ParamError, "generate: count must be >= 1");

  std::mt19937_64 rng(spec.seed);
  FeatureTensor t;
  t.shape = {count};
  t.values.reserve(count);
  t.source_tag = std::string("synthetic-") + kind_name(spec.kind);

  switch (spec.kind) {
    case SourceKind::PeakyMixture: {
      std::vector<double> cum(spec.weights.size());
      std::partial_sum(spec.weights.begin(), spec.weights.end(), cum.begin());
      for (std::size_t i = 0; i < count; ++i) {
        const double u = uniform01(rng);
        std::size_t c = 0;
        while (c + 1 < cum.size() && u >= cum[c]) ++c;
        const double x = spec.means[c] + spec.scales[c] * bell01(rng);
        t.values.push_back(static_cast<double>(static_cast<float>(x)));
      }
      break;
    }
    case SourceKind::HeavyTail: {
      // Scale mixture z / u^(1/4): finite variance, unbounded kurtosis.
      for (std::size_t i = 0; i < count; ++i) {
        const double z = bell01(rng);
        const double u = uniform01_open_low(rng);
        const double x = spec.scale * z / std::sqrt(std::sqrt(u));
        t.values.push_back(static_cast<double>(static_cast<float>(x)));
      }
      break;
    }
    case SourceKind::NearUniform: {
      for (std::size_t i = 0; i < count; ++i) {
        const double x = spec.low + uniform01(rng) * (spec.high - spec.low);
        t.values.push_back(static_cast<double>(static_cast<float>(x)));
      }
      break;
    }
  }
  return t;
}

std::vector<FeatureTensor> sample_fit_set(const std::vector<FeatureTensor>& tensors,
                                          std::size_t k, std::uint64_t seed) {
  if (tensors.empty()) fail(ErrorKind::ParamError, "sample_fit_set: empty tensor list");
  if (k == 0 || k > tensors.size()) {
    fail(ErrorKind::ParamError, "sample_fit_set: k out of range");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(tensors.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: first k slots are the sample.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<FeatureTensor> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(tensors[idx[i]]);
  return out;
}

FeatureTensor pool_values(const std::vector<FeatureTensor>& tensors, const std::string& tag) {
  if (tensors.empty()) fail(ErrorKind::ParamError, "pool_values: empty tensor list");
  FeatureTensor t;
  std::size_t total = 0;
  for (const auto& x : tensors) total += x.values.size();
  t.values.reserve(total);
  for (const auto& x : tensors) {
    t.values.insert(t.values.end(), x.values.begin(), x.values.end());
  }
  t.shape = {t.values.size()};
  t.source_tag = tag;
  return t;
}

}  // namespace dtfc
