#ifndef DTFC_RANGE_CODER_HPP
#define DTFC_RANGE_CODER_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dtfc/error.hpp"

namespace dtfc {

// Byte-renormalizing range coder with a 32-bit range register and 64-bit
// low for carry propagation. Integer-only, so identical inputs give
// byte-identical streams on every platform. Total frequency must stay
// below 2^24.
class RangeEncoder {
 public:
  explicit RangeEncoder(std::vector<std::uint8_t>& out) : out_(out) {}

  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
    const std::uint32_t r = range_ / total;
    low_ += static_cast<std::uint64_t>(r) * cum;
    range_ = r * freq;
    while (range_ < kTop) {
      shift_low();
      range_ <<= 8;
    }
  }

  // Emits the 5 pending bytes; the stream always starts with a 0 byte.
  void finish() {
    for (int i = 0; i < 5; ++i) shift_low();
  }

 private:
  static constexpr std::uint32_t kTop = 1u << 24;

  void shift_low() {
    const std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
    if (static_cast<std::uint32_t>(low_) < 0xFF000000u || carry != 0) {
      out_.push_back(static_cast<std::uint8_t>(cache_ + carry));
      for (; pending_ > 0; --pending_) {
        out_.push_back(static_cast<std::uint8_t>(0xFF + carry));
      }
      cache_ = static_cast<std::uint8_t>(low_ >> 24);
    } else {
      ++pending_;
    }
    low_ = (low_ & 0x00FFFFFFull) << 8;
  }

  std::vector<std::uint8_t>& out_;
  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t pending_ = 0;
};

class RangeDecoder {
 public:
  RangeDecoder(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {
    next_byte();  // leading 0 byte from the encoder cache
    for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
  }

  // Scaled value of the current code point; the clamp keeps corrupt
  // streams inside the alphabet.
  std::uint32_t decode_freq(std::uint32_t total) {
    r_ = range_ / total;
    const std::uint32_t v = code_ / r_;
    return v >= total ? total - 1 : v;
  }

  void decode_update(std::uint32_t cum, std::uint32_t freq) {
    code_ -= r_ * cum;
    range_ = r_ * freq;
    while (range_ < kTop) {
      code_ = (code_ << 8) | next_byte();
      range_ <<= 8;
    }
  }

 private:
  static constexpr std::uint32_t kTop = 1u << 24;

  std::uint8_t next_byte() {
    if (pos_ >= size_) fail(ErrorKind::CorruptPayload, "payload exhausted mid-decode");
    return data_[pos_++];
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t r_ = 1;
};

// Order-0 adaptive frequency model over `levels + 1` symbols (the extra
// symbol is the end-of-stream sentinel). Counts start at 1, grow by a
// fixed increment, and halve (floored at 1) once the total exceeds 2^16.
// Cumulative frequencies live in a Fenwick tree, so update and lookup
// stay O(log L) for any alphabet size.
class AdaptiveModel {
 public:
  static constexpr std::uint32_t kIncrement = 16;
  static constexpr std::uint64_t kRescaleThreshold = 1u << 16;

  explicit AdaptiveModel(std::uint32_t levels)
      : levels_(levels), alphabet_(levels + 1), counts_(alphabet_, 1) {
    rebuild();
  }

  std::uint32_t sentinel() const { return levels_; }
  std::uint32_t total() const { return static_cast<std::uint32_t>(total_); }
  std::uint32_t freq(std::uint32_t symbol) const { return counts_[symbol]; }

  // Sum of counts of symbols below `symbol`.
  std::uint32_t cum(std::uint32_t symbol) const {
    std::uint64_t sum = 0;
    for (std::uint32_t i = symbol; i > 0; i -= i & (0u - i)) sum += tree_[i];
    return static_cast<std::uint32_t>(sum);
  }

  // Symbol s with cum(s) <= target < cum(s) + freq(s).
  std::uint32_t find(std::uint32_t target) const {
    std::uint32_t pos = 0;
    std::uint64_t remaining = target;
    for (std::uint32_t mask = top_bit_; mask != 0; mask >>= 1) {
      const std::uint32_t next = pos + mask;
      if (next <= alphabet_ && tree_[next] <= remaining) {
        pos = next;
        remaining -= tree_[next];
      }
    }
    return pos < alphabet_ ? pos : alphabet_ - 1;
  }

  void update(std::uint32_t symbol) {
    counts_[symbol] += kIncrement;
    total_ += kIncrement;
    if (total_ > kRescaleThreshold) {
      for (auto& c : counts_) c = std::max(c >> 1, 1u);
      rebuild();
    } else {
      for (std::uint32_t i = symbol + 1; i <= alphabet_; i += i & (0u - i)) {
        tree_[i] += kIncrement;
      }
    }
  }

 private:
  void rebuild() {
    total_ = 0;
    for (std::uint32_t c : counts_) total_ += c;
    tree_.assign(alphabet_ + 1, 0);
    for (std::uint32_t i = 1; i <= alphabet_; ++i) {
      tree_[i] += counts_[i - 1];
      const std::uint32_t parent = i + (i & (0u - i));
      if (parent <= alphabet_) tree_[parent] += tree_[i];
    }
    top_bit_ = 1;
    while ((top_bit_ << 1) <= alphabet_) top_bit_ <<= 1;
  }

  std::uint32_t levels_;
  std::uint32_t alphabet_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> tree_;  // 1-based Fenwick over counts_
  std::uint64_t total_ = 0;
  std::uint32_t top_bit_ = 1;
};

}  // namespace dtfc

#endif
