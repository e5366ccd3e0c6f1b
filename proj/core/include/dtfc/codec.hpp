#ifndef DTFC_CODEC_HPP
#define DTFC_CODEC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dtfc/codebook.hpp"

namespace dtfc {

// Self-describing coded container. The header embeds the shape, level
// count, and serialized codebook, so a stream decodes without any
// fit-time state; a CRC32 trailer covers the whole stream.
struct Bitstream {
  std::vector<std::uint8_t> bytes;
  std::vector<std::size_t> shape;
  std::uint32_t levels = 0;
  std::size_t payload_bytes = 0;

  std::uint64_t total_bits() const { return 8 * static_cast<std::uint64_t>(bytes.size()); }
  std::uint64_t payload_bits() const { return 8 * static_cast<std::uint64_t>(payload_bytes); }
  std::uint64_t header_bits() const { return total_bits() - payload_bits(); }

  std::size_t element_count() const {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
  }
};

// Range-codes the plane under an order-0 adaptive model; a sentinel
// symbol terminates the payload. Empty planes produce a header-only
// stream.
Bitstream encode(const SymbolPlane& plane, const TransformCodebook& cb);

// Exact inverse of encode. format-error for structural damage (magic,
// version, CRC), corrupt-payload for truncation or coder desync.
std::pair<SymbolPlane, TransformCodebook> decode(const Bitstream& stream);
std::pair<SymbolPlane, TransformCodebook> decode_bytes(const std::vector<std::uint8_t>& bytes);

// Parses and validates a raw byte vector into a Bitstream.
Bitstream parse_bitstream(std::vector<std::uint8_t> bytes);

// Bits per feature point: total stream bits over the element count,
// which must match the encoded shape.
double bpfp(const Bitstream& stream, std::size_t element_count);

}  // namespace dtfc

#endif
