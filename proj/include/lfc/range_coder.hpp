#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lfc::entropy {

/// Adaptive probability that the next bit is 0, in 1/4096 units.
struct BitModel {
  static constexpr int kBits = 12;
  static constexpr std::uint16_t kHalf = 1U << (kBits - 1);
  static constexpr int kAdaptShift = 5;

  std::uint16_t p0{kHalf};
};

/// Carry-propagating binary range encoder producing a byte stream.
class RangeEncoder {
public:
  void encode(BitModel &model, int bit);

  /// Equiprobable bits, most significant first.
  void encode_direct(std::uint32_t value, int bit_count);

  /// Flushes pending state and returns the stream. The encoder is left empty.
  std::vector<std::uint8_t> finish();

private:
  void shift_low();

  std::uint64_t low_{0};
  std::uint32_t range_{0xFFFFFFFFU};
  std::uint8_t cache_{0};
  std::uint64_t cache_size_{1};
  std::vector<std::uint8_t> out_;
};

/// Decoder matching RangeEncoder. Reading past the end of the input throws
/// lfc::FormatError.
class RangeDecoder {
public:
  explicit RangeDecoder(std::span<const std::uint8_t> data);

  int decode(BitModel &model);
  std::uint32_t decode_direct(int bit_count);

private:
  std::uint8_t next_byte();
  void normalize();

  std::span<const std::uint8_t> data_;
  std::size_t pos_{0};
  std::uint32_t range_{0xFFFFFFFFU};
  std::uint32_t code_{0};
};

/// Adaptive binarisation of unsigned integers: Exp-Golomb order 0 where each
/// prefix bit has its own context and suffix bits are sent direct.
class UIntModel {
public:
  static constexpr int kMaxPrefix = 24;

  void encode(RangeEncoder &enc, std::uint32_t value);
  std::uint32_t decode(RangeDecoder &dec);

private:
  BitModel prefix_[kMaxPrefix + 1]{};
};

/// Signed integer: zero flag, sign, then |v| - 1 through a UIntModel.
class SIntModel {
public:
  void encode(RangeEncoder &enc, std::int32_t value);
  std::int32_t decode(RangeDecoder &dec);

private:
  BitModel zero_{};
  BitModel sign_{};
  UIntModel magnitude_{};
};

/// 8-bit symbol coded through a 255-node binary tree of contexts.
class ByteModel {
public:
  void encode(RangeEncoder &enc, std::uint8_t symbol);
  std::uint8_t decode(RangeDecoder &dec);

private:
  BitModel tree_[256]{};
};

} // namespace lfc::entropy
