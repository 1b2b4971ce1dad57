#include <doctest.h>

#include <lfc/error.hpp>
#include <lfc/range_coder.hpp>

#include <random>

using namespace lfc;
using namespace lfc::entropy;

TEST_CASE("mixed symbol stream round trips") {
  std::mt19937 rng(11);
  std::vector<int> bits;
  std::vector<std::uint32_t> direct, unsigned_values;
  std::vector<std::int32_t> signed_values;
  std::vector<std::uint8_t> bytes;
  for (int i = 0; i < 5000; ++i) {
    bits.push_back(rng() % 10 == 0 ? 1 : 0);
    direct.push_back(rng() & 0x3FF);
    unsigned_values.push_back(i % 50 == 0 ? rng() % 100000 : rng() % 4);
    signed_values.push_back(static_cast<std::int32_t>(rng() % 201) - 100);
    bytes.push_back(static_cast<std::uint8_t>(rng() % 7 == 0 ? rng() : 3));
  }

  RangeEncoder enc;
  BitModel bit_model;
  UIntModel u;
  SIntModel s;
  ByteModel b;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    enc.encode(bit_model, bits[i]);
    enc.encode_direct(direct[i], 10);
    u.encode(enc, unsigned_values[i]);
    s.encode(enc, signed_values[i]);
    b.encode(enc, bytes[i]);
  }
  const auto stream = enc.finish();

  RangeDecoder dec(stream);
  BitModel bit_model2;
  UIntModel u2;
  SIntModel s2;
  ByteModel b2;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    REQUIRE(dec.decode(bit_model2) == bits[i]);
    REQUIRE(dec.decode_direct(10) == direct[i]);
    REQUIRE(u2.decode(dec) == unsigned_values[i]);
    REQUIRE(s2.decode(dec) == signed_values[i]);
    REQUIRE(b2.decode(dec) == bytes[i]);
  }
}

TEST_CASE("skewed bits compress") {
  RangeEncoder enc;
  BitModel m;
  for (int i = 0; i < 80000; ++i) {
    enc.encode(m, i % 100 == 0 ? 1 : 0);
  }
  // entropy of p = 0.01 is about 0.081 bit per symbol
  CHECK(enc.finish().size() < 80000 / 8 / 8);
}

TEST_CASE("extreme unsigned values") {
  RangeEncoder enc;
  UIntModel u;
  const std::vector<std::uint32_t> values{0, 1, 2, (1U << 24) - 2, 12345678};
  for (auto v : values) {
    u.encode(enc, v);
  }
  const auto stream = enc.finish();
  RangeDecoder dec(stream);
  UIntModel u2;
  for (auto v : values) {
    CHECK(u2.decode(dec) == v);
  }
}

TEST_CASE("reading past the end throws") {
  RangeEncoder enc;
  BitModel m;
  for (int i = 0; i < 100; ++i) {
    enc.encode(m, i & 1);
  }
  auto stream = enc.finish();
  stream.resize(stream.size() / 2);
  RangeDecoder dec(stream);
  BitModel m2;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 100000; ++i) {
          (void)dec.decode(m2);
        }
      }(),
      FormatError);
}
