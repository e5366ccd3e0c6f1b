#include "dtfc/codec.hpp"

#include <cstring>

#include "dtfc/crc32.hpp"
#include "dtfc/range_coder.hpp"

namespace dtfc {

namespace {

constexpr char kMagic[4] = {'D', 'T', 'F', 'C'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kCoderId = 0;  // order-0 adaptive range coder
constexpr std::uint8_t kMaxRank = 4;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

Bitstream encode(const SymbolPlane& plane, const TransformCodebook& cb) {
  plane.validate();
  cb.validate();
  if (plane.levels != cb.levels) {
    fail(ErrorKind::LevelMismatch, "plane levels != codebook levels");
  }
  if (plane.shape.empty() || plane.shape.size() > kMaxRank) {
    fail(ErrorKind::ParamError, "plane rank must be 1-4");
  }
  for (std::size_t d : plane.shape) {
    if (d > 0xFFFFFFFFull) fail(ErrorKind::ParamError, "dimension exceeds u32");
  }

  Bitstream stream;
  stream.shape = plane.shape;
  stream.levels = plane.levels;

  auto& out = stream.bytes;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(kCoderId);
  out.push_back(static_cast<std::uint8_t>(plane.shape.size()));
  for (std::size_t d : plane.shape) put_u32(out, static_cast<std::uint32_t>(d));
  put_u32(out, plane.levels);

  const std::vector<std::uint8_t> cb_block = serialize_codebook(cb);
  put_u32(out, static_cast<std::uint32_t>(cb_block.size()));
  out.insert(out.end(), cb_block.begin(), cb_block.end());

  std::vector<std::uint8_t> payload;
  if (!plane.symbols.empty()) {
    AdaptiveModel model(plane.levels);
    RangeEncoder coder(payload);
    for (std::uint32_t s : plane.symbols) {
      coder.encode(model.cum(s), model.freq(s), model.total());
      model.update(s);
    }
    const std::uint32_t end = model.sentinel();
    coder.encode(model.cum(end), model.freq(end), model.total());
    coder.finish();
  }

  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  stream.payload_bytes = payload.size();

  put_u32(out, crc32(out.data(), out.size()));
  return stream;
}

Bitstream parse_bitstream(std::vector<std::uint8_t> bytes) {
  // Fixed fields before the shape: magic, version, coder id, rank.
  if (bytes.size() < 7) fail(ErrorKind::FormatError, "stream too short");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) fail(ErrorKind::FormatError, "bad magic");
  if (bytes[4] != kVersion) fail(ErrorKind::FormatError, "unsupported version");
  if (bytes[5] != kCoderId) fail(ErrorKind::FormatError, "unknown coder id");
  const std::uint8_t rank = bytes[6];
  if (rank == 0 || rank > kMaxRank) fail(ErrorKind::FormatError, "bad rank");

  std::size_t pos = 7;
  auto need = [&](std::size_t n, const char* what) {
    if (bytes.size() - pos < n) fail(ErrorKind::FormatError, what);
  };

  Bitstream stream;
  need(4 * static_cast<std::size_t>(rank), "truncated shape");
  for (std::uint8_t i = 0; i < rank; ++i) {
    stream.shape.push_back(get_u32(bytes.data() + pos));
    pos += 4;
  }
  need(4, "truncated level field");
  stream.levels = get_u32(bytes.data() + pos);
  pos += 4;

  need(4, "truncated codebook length");
  const std::uint32_t cb_len = get_u32(bytes.data() + pos);
  pos += 4;
  need(cb_len, "truncated codebook block");
  pos += cb_len;

  need(4, "truncated payload length");
  const std::uint32_t payload_len = get_u32(bytes.data() + pos);
  pos += 4;

  // Header parsed; missing payload or CRC bytes mean the stream was cut.
  const std::size_t remaining = bytes.size() - pos;
  if (remaining < static_cast<std::size_t>(payload_len) + 4) {
    fail(ErrorKind::CorruptPayload, "stream truncated mid-payload");
  }
  if (remaining > static_cast<std::size_t>(payload_len) + 4) {
    fail(ErrorKind::FormatError, "trailing bytes after stream");
  }
  stream.payload_bytes = payload_len;

  const std::uint32_t stored = get_u32(bytes.data() + bytes.size() - 4);
  if (crc32(bytes.data(), bytes.size() - 4) != stored) {
    fail(ErrorKind::FormatError, "stream CRC mismatch");
  }
  stream.bytes = std::move(bytes);
  return stream;
}

std::pair<SymbolPlane, TransformCodebook> decode(const Bitstream& stream) {
  // Re-validate structure so hand-built Bitstream values cannot bypass
  // the checks.
  Bitstream parsed = parse_bitstream(stream.bytes);

  const std::uint8_t rank = parsed.bytes[6];
  std::size_t pos = 7 + 4 * static_cast<std::size_t>(rank) + 4;
  const std::uint32_t cb_len = get_u32(parsed.bytes.data() + pos);
  pos += 4;
  TransformCodebook cb;
  try {
    cb = deserialize_codebook(parsed.bytes.data() + pos, cb_len);
  } catch (const Error& e) {
    fail(ErrorKind::FormatError, std::string("embedded codebook: ") + e.what());
  }
  pos += cb_len;
  if (cb.levels != parsed.levels) {
    fail(ErrorKind::FormatError, "header levels disagree with codebook");
  }
  const std::uint32_t payload_len = get_u32(parsed.bytes.data() + pos);
  pos += 4;

  SymbolPlane plane;
  plane.shape = parsed.shape;
  plane.levels = parsed.levels;
  const std::size_t n = plane.element_count();
  plane.symbols.reserve(n);

  if (n == 0) {
    if (payload_len != 0) fail(ErrorKind::CorruptPayload, "payload on empty plane");
    return {std::move(plane), std::move(cb)};
  }
  if (payload_len == 0) fail(ErrorKind::CorruptPayload, "missing payload");

  AdaptiveModel model(parsed.levels);
  RangeDecoder coder(parsed.bytes.data() + pos, payload_len);
  for (std::size_t i = 0; i <= n; ++i) {
    const std::uint32_t v = coder.decode_freq(model.total());
    const std::uint32_t s = model.find(v);
    coder.decode_update(model.cum(s), model.freq(s));
    model.update(s);
    if (i == n) {
      if (s != model.sentinel()) {
        fail(ErrorKind::CorruptPayload, "missing end-of-stream sentinel");
      }
    } else {
      if (s >= parsed.levels) {
        fail(ErrorKind::CorruptPayload, "sentinel before expected end");
      }
      plane.symbols.push_back(s);
    }
  }
  return {std::move(plane), std::move(cb)};
}

std::pair<SymbolPlane, TransformCodebook> decode_bytes(const std::vector<std::uint8_t>& bytes) {
  return decode(parse_bitstream(bytes));
}

double bpfp(const Bitstream& stream, std::size_t element_count) {
  if (element_count == 0) fail(ErrorKind::ParamError, "element count must be positive");
  if (element_count != stream.element_count()) {
    fail(ErrorKind::ParamError, "element count does not match encoded shape");
  }
  return static_cast<double>(stream.total_bits()) / static_cast<double>(element_count);
}

}  // namespace dtfc
