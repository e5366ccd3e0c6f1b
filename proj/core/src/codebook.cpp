#include "dtfc/codebook.hpp"

#include <cmath>
#include <cstring>

#include "dtfc/crc32.hpp"

namespace dtfc {

const char* mode_name(FitMode mode) {
  switch (mode) {
    case FitMode::LloydMax: return "lloyd-max";
    case FitMode::EqualFreq: return "equal-freq";
    case FitMode::Uniform: return "uniform";
  }
  return "unknown";
}

FitMode parse_fit_mode(const std::string& name) {
  if (name == "lloyd-max") return FitMode::LloydMax;
  if (name == "equal-freq") return FitMode::EqualFreq;
  if (name == "uniform") return FitMode::Uniform;
  fail(ErrorKind::ParamError, "unknown fit mode '" + name + "'");
}

void TransformCodebook::validate() const {
  if (levels < kMinLevels || levels > kMaxLevels) {
    fail(ErrorKind::ParamError, "codebook levels out of [2, 65536]");
  }
  if (centers.size() != levels) {
    fail(ErrorKind::ParamError, "codebook center count != levels");
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!std::isfinite(centers[i])) fail(ErrorKind::ParamError, "non-finite center");
    if (i > 0 && !(centers[i - 1] < centers[i])) {
      fail(ErrorKind::ParamError, "centers not strictly increasing");
    }
  }
}

std::vector<double> TransformCodebook::boundaries() const {
  std::vector<double> b(levels - 1);
  for (std::uint32_t k = 0; k + 1 < levels; ++k) {
    b[k] = 0.5 * (centers[k] + centers[k + 1]);
  }
  return b;
}

bool operator==(const TransformCodebook& a, const TransformCodebook& b) {
  return a.levels == b.levels && a.mode == b.mode && a.fit_seed == b.fit_seed &&
         a.centers == b.centers;
}

void SymbolPlane::validate() const {
  if (element_count() != symbols.size()) {
    fail(ErrorKind::DataError, "plane shape/symbol count mismatch");
  }
  for (std::uint32_t s : symbols) {
    if (s >= levels) fail(ErrorKind::DataError, "symbol out of range");
  }
}

bool operator==(const SymbolPlane& a, const SymbolPlane& b) {
  return a.shape == b.shape && a.levels == b.levels && a.symbols == b.symbols;
}

namespace {

constexpr char kMagic[4] = {'D', 'T', 'C', 'B'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> serialize_codebook(const TransformCodebook& cb) {
  cb.validate();
  std::vector<std::uint8_t> out;
  out.reserve(4 + 1 + 1 + 4 + 8 + 8 * cb.levels + 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(1);  // version
  out.push_back(static_cast<std::uint8_t>(cb.mode));
  put_u32(out, cb.levels);
  put_u64(out, cb.fit_seed);
  for (double c : cb.centers) {
    std::uint64_t bits;
    std::memcpy(&bits, &c, 8);
    put_u64(out, bits);
  }
  put_u32(out, crc32(out.data(), out.size()));
  return out;
}

TransformCodebook deserialize_codebook(const std::uint8_t* data, std::size_t size) {
  constexpr std::size_t kFixed = 4 + 1 + 1 + 4 + 8 + 4;
  if (size < kFixed) fail(ErrorKind::FormatError, "codebook block too short");
  if (std::memcmp(data, kMagic, 4) != 0) fail(ErrorKind::FormatError, "bad codebook magic");
  if (data[4] != 1) fail(ErrorKind::FormatError, "unsupported codebook version");
  if (data[5] > 2) fail(ErrorKind::FormatError, "unknown codebook mode");

  TransformCodebook cb;
  cb.mode = static_cast<FitMode>(data[5]);
  cb.levels = get_u32(data + 6);
  if (cb.levels < TransformCodebook::kMinLevels || cb.levels > TransformCodebook::kMaxLevels) {
    fail(ErrorKind::FormatError, "codebook level count out of range");
  }
  if (size != kFixed + 8 * static_cast<std::size_t>(cb.levels)) {
    fail(ErrorKind::FormatError, "codebook block length mismatch");
  }
  cb.fit_seed = get_u64(data + 10);

  const std::uint32_t stored_crc = get_u32(data + size - 4);
  if (crc32(data, size - 4) != stored_crc) {
    fail(ErrorKind::FormatError, "codebook CRC mismatch");
  }

  cb.centers.resize(cb.levels);
  for (std::uint32_t k = 0; k < cb.levels; ++k) {
    const std::uint64_t bits = get_u64(data + 18 + 8 * static_cast<std::size_t>(k));
    double c;
    std::memcpy(&c, &bits, 8);
    cb.centers[k] = c;
  }
  for (std::uint32_t k = 0; k < cb.levels; ++k) {
    if (!std::isfinite(cb.centers[k]) || (k > 0 && !(cb.centers[k - 1] < cb.centers[k]))) {
      fail(ErrorKind::FormatError, "codebook centers not strictly increasing");
    }
  }
  return cb;
}

TransformCodebook deserialize_codebook(const std::vector<std::uint8_t>& bytes) {
  return deserialize_codebook(bytes.data(), bytes.size());
}

}  // namespace dtfc
