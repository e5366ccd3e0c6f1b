#ifndef DTFC_CRC32_HPP
#define DTFC_CRC32_HPP

#include <cstddef>
#include <cstdint>

namespace dtfc {

// CRC-32/ISO-HDLC (the zlib polynomial, reflected, init/xorout 0xFFFFFFFF).
std::uint32_t crc32(const std::uint8_t* data, std::size_t size);

}  // namespace dtfc

#endif
