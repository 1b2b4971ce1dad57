#include <lfc/range_coder.hpp>

#include <lfc/error.hpp>

namespace lfc::entropy {

namespace {
constexpr std::uint32_t kTop = 1U << 24;
} // namespace

void RangeEncoder::encode(BitModel &model, int bit) {
  const std::uint32_t bound = (range_ >> BitModel::kBits) * model.p0;
  if (bit == 0) {
    range_ = bound;
    model.p0 += ((1U << BitModel::kBits) - model.p0) >> BitModel::kAdaptShift;
  } else {
    low_ += bound;
    range_ -= bound;
    model.p0 -= model.p0 >> BitModel::kAdaptShift;
  }
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::encode_direct(std::uint32_t value, int bit_count) {
  for (int i = bit_count - 1; i >= 0; --i) {
    range_ >>= 1;
    if (((value >> i) & 1U) != 0) {
      low_ += range_;
    }
    while (range_ < kTop) {
      range_ <<= 8;
      shift_low();
    }
  }
}

void RangeEncoder::shift_low() {
  if (low_ < 0xFF000000ULL || low_ >= (1ULL << 32)) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t pending = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(pending + carry));
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFULL) << 8;
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) {
    shift_low();
  }
  auto out = std::move(out_);
  *this = RangeEncoder{};
  return out;
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> data) : data_{data} {
  for (int i = 0; i < 5; ++i) {
    code_ = (code_ << 8) | next_byte();
  }
}

std::uint8_t RangeDecoder::next_byte() {
  if (pos_ >= data_.size()) {
    throw FormatError("entropy stream truncated");
  }
  return data_[pos_++];
}

void RangeDecoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
}

int RangeDecoder::decode(BitModel &model) {
  const std::uint32_t bound = (range_ >> BitModel::kBits) * model.p0;
  int bit = 0;
  if (code_ < bound) {
    range_ = bound;
    model.p0 += ((1U << BitModel::kBits) - model.p0) >> BitModel::kAdaptShift;
  } else {
    code_ -= bound;
    range_ -= bound;
    model.p0 -= model.p0 >> BitModel::kAdaptShift;
    bit = 1;
  }
  normalize();
  return bit;
}

std::uint32_t RangeDecoder::decode_direct(int bit_count) {
  std::uint32_t value = 0;
  for (int i = 0; i < bit_count; ++i) {
    range_ >>= 1;
    std::uint32_t bit = 0;
    if (code_ >= range_) {
      code_ -= range_;
      bit = 1;
    }
    value = (value << 1) | bit;
    normalize();
  }
  return value;
}

void UIntModel::encode(RangeEncoder &enc, std::uint32_t value) {
  // value + 1 = 1 xxxx (prefix ones count = number of suffix bits)
  const std::uint64_t shifted = static_cast<std::uint64_t>(value) + 1;
  int bits = 0;
  while ((shifted >> (bits + 1)) != 0) {
    ++bits;
  }
  if (bits > kMaxPrefix) {
    throw Error("value too large for entropy coder");
  }
  for (int i = 0; i < bits; ++i) {
    enc.encode(prefix_[i], 1);
  }
  if (bits < kMaxPrefix) {
    enc.encode(prefix_[bits], 0);
  }
  enc.encode_direct(static_cast<std::uint32_t>(shifted & ((1ULL << bits) - 1)), bits);
}

std::uint32_t UIntModel::decode(RangeDecoder &dec) {
  int bits = 0;
  while (bits < kMaxPrefix && dec.decode(prefix_[bits]) == 1) {
    ++bits;
  }
  const std::uint64_t suffix = dec.decode_direct(bits);
  return static_cast<std::uint32_t>(((1ULL << bits) | suffix) - 1);
}

void SIntModel::encode(RangeEncoder &enc, std::int32_t value) {
  enc.encode(zero_, value == 0 ? 0 : 1);
  if (value == 0) {
    return;
  }
  enc.encode(sign_, value < 0 ? 1 : 0);
  const auto magnitude = value < 0 ? -static_cast<std::int64_t>(value) : value;
  magnitude_.encode(enc, static_cast<std::uint32_t>(magnitude - 1));
}

std::int32_t SIntModel::decode(RangeDecoder &dec) {
  if (dec.decode(zero_) == 0) {
    return 0;
  }
  const bool negative = dec.decode(sign_) == 1;
  const auto magnitude = static_cast<std::int64_t>(magnitude_.decode(dec)) + 1;
  return static_cast<std::int32_t>(negative ? -magnitude : magnitude);
}

void ByteModel::encode(RangeEncoder &enc, std::uint8_t symbol) {
  unsigned node = 1;
  for (int i = 7; i >= 0; --i) {
    const int bit = (symbol >> i) & 1;
    enc.encode(tree_[node], bit);
    node = (node << 1) | static_cast<unsigned>(bit);
  }
}

std::uint8_t ByteModel::decode(RangeDecoder &dec) {
  unsigned node = 1;
  for (int i = 0; i < 8; ++i) {
    node = (node << 1) | static_cast<unsigned>(dec.decode(tree_[node]));
  }
  return static_cast<std::uint8_t>(node & 0xFF);
}

} // namespace lfc::entropy
