#ifndef DTFC_CODEBOOK_HPP
#define DTFC_CODEBOOK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dtfc/error.hpp"

namespace dtfc {

enum class FitMode : std::uint8_t { LloydMax = 0, EqualFreq = 1, Uniform = 2 };

const char* mode_name(FitMode mode);
FitMode parse_fit_mode(const std::string& name);

// A fitted scalar transform: L strictly increasing reconstruction values.
// Region boundaries are not stored; they derive as midpoints between
// adjacent centers. A value on a boundary belongs to the lower region
// (nearest-center ties break toward the lower index).
struct TransformCodebook {
  std::uint32_t levels = 0;
  std::vector<double> centers;
  FitMode mode = FitMode::LloydMax;
  std::uint64_t fit_seed = 0;
  std::string source_tag;

  static constexpr std::uint32_t kMinLevels = 2;
  static constexpr std::uint32_t kMaxLevels = 65536;

  void validate() const;

  // b_k = (c_k + c_{k+1}) / 2 for k in [0, L-2].
  std::vector<double> boundaries() const;
};

// Identity excludes source_tag; it is a label, not part of the fitted
// transform (and the serialized form does not carry it).
bool operator==(const TransformCodebook& a, const TransformCodebook& b);

// Integer symbols produced by the forward transform.
struct SymbolPlane {
  std::vector<std::size_t> shape;
  std::vector<std::uint32_t> symbols;
  std::uint32_t levels = 0;

  std::size_t element_count() const {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
  }

  void validate() const;
};

bool operator==(const SymbolPlane& a, const SymbolPlane& b);

// DTCB container: magic, version, mode, level count, fit seed, centers
// as 64-bit little-endian reals, CRC32 trailer.
std::vector<std::uint8_t> serialize_codebook(const TransformCodebook& cb);
TransformCodebook deserialize_codebook(const std::vector<std::uint8_t>& bytes);
TransformCodebook deserialize_codebook(const std::uint8_t* data, std::size_t size);

}  // namespace dtfc

#endif
