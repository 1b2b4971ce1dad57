#pragma once

#include <lfc/lightfield.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace lfc {

inline constexpr int kMaxQp = 51;
inline constexpr std::uint8_t kFrameFormatVersion = 1;

/// Quantizer step for a QP: 2^((qp - 4) / 6), doubling every 6 QP.
[[nodiscard]] double quantizer_step(int qp);

/// DC coefficients use min(step, 8) so flat areas stay within one code value.
[[nodiscard]] double dc_quantizer_step(int qp);

/// Intra-only transform coder for one YUV 4:2:0 frame.
///
/// Stream layout (little-endian): "LFIF", u8 version, u32 width, u32 height,
/// u8 qp, u32 payload size, payload. The payload is a single range-coded
/// stream covering Y, U and V in that order.
///
/// qp > 0: each plane is padded to a multiple of 8 by edge replication and
/// split into 8x8 blocks (raster order). Blocks go through an orthonormal
/// DCT-II and uniform rounding quantization. DC is coded as the difference to
/// the previous block's DC; AC levels are zigzag scanned and sent as
/// (zero run, level, sign, last) tuples.
///
/// qp == 0 is lossless: samples are predicted with the median edge detector
/// and the residual (mod 256) is coded directly, no transform.
std::vector<std::uint8_t> encode_internal_frame(const YuvFrame &frame, int qp);

/// Inverse of encode_internal_frame. Throws lfc::FormatError on a corrupt,
/// truncated or wrong-version stream; never returns a partial frame.
YuvFrame decode_internal_frame(std::span<const std::uint8_t> stream);

namespace dct {

using Block = std::array<double, 64>;

/// Orthonormal 8x8 DCT-II, row-major block in and out.
void forward(Block &block);
void inverse(Block &block);

/// Zigzag position -> raster index.
const std::array<int, 64> &zigzag();

} // namespace dct

} // namespace lfc
