#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "prwalk/grid.hpp"

namespace prwalk {

/// Raised for malformed or unsupported raster payloads. `offset` is the byte
/// position where decoding failed.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

using Bytes = std::vector<std::uint8_t>;

/// Raw samples as stored in the file, before interpretation.
struct RasterSamples {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> samples;
};

enum class RasterKind { mask, probability };
enum class RasterFormat { pgm, png };

/// Accepts PGM (P2 or P5, maxval up to 65535) and 8-bit grayscale PNG.
RasterSamples decode_samples(std::span<const std::uint8_t> bytes);

std::variant<BinaryMask, ProbabilityMap> decode_raster(std::span<const std::uint8_t> bytes,
                                                       RasterKind kind);
BinaryMask decode_mask(std::span<const std::uint8_t> bytes);
ProbabilityMap decode_probability(std::span<const std::uint8_t> bytes);

/// Masks are written with maxval 255 (0 / 255).
Bytes encode_raster(const BinaryMask& mask, RasterFormat format = RasterFormat::pgm);
/// Probability maps are quantized to round(v * maxval). PGM defaults to 16-bit;
/// PNG output is always 8-bit.
Bytes encode_raster(const ProbabilityMap& prob, RasterFormat format = RasterFormat::pgm,
                    int maxval = 65535);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// .png selects PNG, anything else PGM.
RasterFormat format_for_path(const std::filesystem::path& path);

BinaryMask load_mask(const std::filesystem::path& path);
ProbabilityMap load_probability(const std::filesystem::path& path);
void save_mask(const std::filesystem::path& path, const BinaryMask& mask);
void save_probability(const std::filesystem::path& path, const ProbabilityMap& prob);

}  // namespace prwalk
