#pragma once

#include <lfc/lightfield.hpp>
#include <lfc/sampling.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lfc {

enum class Backend : std::uint8_t { Internal = 0, External = 1 };

Backend parse_backend(std::string_view name);
std::string_view to_string(Backend backend);

/// Encoder selection and quality.
///
/// The external backend drives a command-line encoder/decoder pair. Both
/// templates may use {input}, {output}, {width}, {height}, {frames} and {qp}.
/// The encoder reads {input} (I420, frame-sequential, snake order) and writes
/// its bitstream to {output}; the decoder reads that bitstream as {input} and
/// writes I420 frames to {output}.
struct CodecConfig {
  Backend backend{Backend::Internal};
  int qp{30};
  std::string external_encode_command;
  std::string external_decode_command;
  std::filesystem::path work_root{std::filesystem::temp_directory_path()};

  /// Throws lfc::Error for qp outside [0, 51] or a missing external template.
  void validate() const;
};

struct EncodedChunk {
  ViewIndex view;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const EncodedChunk &, const EncodedChunk &) = default;
};

inline constexpr std::uint16_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 25;
inline constexpr std::size_t kChunkHeaderSize = 8;

/// Encoded sub-sampled light field. Chunks follow snake_order of the mask.
///
/// For the external backend the whole encoder output sits in the first
/// chunk and the remaining chunks are empty, because a video encoder
/// produces one stream for the frame sequence.
struct EncodedLightField {
  SamplingPattern pattern;
  int grid_rows{};
  int grid_cols{};
  int view_width{};
  int view_height{};
  int qp{};
  Backend backend{Backend::Internal};
  std::vector<EncodedChunk> chunks;

  /// Header plus every chunk header and payload.
  [[nodiscard]] std::size_t total_bytes() const noexcept;

  /// Bits charged for rate: container size for the internal backend, raw
  /// encoder output for the external one.
  [[nodiscard]] std::uint64_t coded_bits() const noexcept;

  friend bool operator==(const EncodedLightField &, const EncodedLightField &) = default;
};

/// Container layout (little-endian): "LFSS", u16 version, u8 pattern id,
/// u16 grid rows, u16 grid cols, u32 view width, u32 view height, u8 qp,
/// u8 backend id, u32 chunk count, then per chunk u16 row, u16 col,
/// u32 length, payload.
std::vector<std::uint8_t> serialize(const EncodedLightField &enc);

/// Strict parser: rejects truncation, trailing bytes, unknown ids and chunks
/// that are not in snake order. Throws lfc::FormatError.
EncodedLightField parse_container(std::span<const std::uint8_t> bytes);

void write_container(const std::filesystem::path &path, const EncodedLightField &enc);
EncodedLightField read_container(const std::filesystem::path &path);

EncodedLightField encode_lightfield(const SampledLightField &slf, const CodecConfig &cfg);

/// Throws lfc::Error when cfg.backend differs from the container's backend.
SampledLightField decode_lightfield(const EncodedLightField &enc, const CodecConfig &cfg);

namespace external {

/// Writes frames to an I420 file, runs the encoder once and returns its output.
std::vector<std::uint8_t> encode(std::span<const YuvFrame> frames, const CodecConfig &cfg);

/// Runs the decoder on `bitstream` and splits its I420 output into frames.
std::vector<YuvFrame> decode(std::span<const std::uint8_t> bitstream, int width, int height,
                             int frame_count, const CodecConfig &cfg);

void write_i420(const std::filesystem::path &path, std::span<const YuvFrame> frames);
std::vector<YuvFrame> read_i420(const std::filesystem::path &path, int width, int height,
                                int frame_count);

} // namespace external

} // namespace lfc
