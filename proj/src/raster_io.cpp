#include "prwalk/raster_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace prwalk {

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    if (pos_ >= bytes_.size()) throw DecodeError(std::string("truncated header reading ") + what, pos_);
    if (!std::isdigit(bytes_[pos_]))
      throw DecodeError(std::string("expected decimal ") + what, pos_);
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) throw DecodeError(std::string(what) + " is too large", start);
      ++pos_;
    }
    return value;
  }

  /// The single whitespace byte that separates a P5 header from its payload.
  void consume_raster_separator() {
    if (pos_ >= bytes_.size()) throw DecodeError("truncated header before raster data", pos_);
    if (!std::isspace(bytes_[pos_]))
      throw DecodeError("expected whitespace before raster data", pos_);
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

RasterSamples decode_pgm(std::span<const std::uint8_t> bytes) {
  const bool binary = bytes[1] == '5';
  PgmHeaderReader header(bytes);
  const std::size_t width_at = header.pos();
  const long width = header.read_uint("width");
  const long height = header.read_uint("height");
  if (width <= 0 || height <= 0) throw DecodeError("degenerate raster dimensions", width_at);
  const std::size_t maxval_at = header.pos();
  const long maxval = header.read_uint("maxval");
  if (maxval < 1 || maxval > 65535)
    throw DecodeError("unsupported maxval " + std::to_string(maxval), maxval_at);

  RasterSamples out;
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);
  out.maxval = static_cast<int>(maxval);
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  out.samples.reserve(count);

  auto check_range = [&](long v, std::size_t at) {
    if (v > maxval) throw DecodeError("sample exceeds maxval", at);
    out.samples.push_back(static_cast<std::uint16_t>(v));
  };

  if (binary) {
    header.consume_raster_separator();
    std::size_t pos = header.pos();
    const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
    if (bytes.size() - pos < count * sample_bytes)
      throw DecodeError("truncated raster payload", bytes.size());
    for (std::size_t i = 0; i < count; ++i) {
      long v = bytes[pos];
      if (sample_bytes == 2) v = (v << 8) | bytes[pos + 1];
      check_range(v, pos);
      pos += sample_bytes;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      header.skip_space_and_comments();
      const std::size_t at = header.pos();
      if (at >= bytes.size()) throw DecodeError("truncated raster payload", at);
      check_range(header.read_uint("sample"), at);
    }
  }
  return out;
}

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
         (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
}

RasterSamples decode_png(std::span<const std::uint8_t> bytes) {
  // Signature (8) + IHDR length (4) + type (4) + width, height, depth, color type.
  constexpr std::size_t kIhdrEnd = 8 + 8 + 13;
  if (bytes.size() < kIhdrEnd) throw DecodeError("truncated PNG header", bytes.size());
  if (std::memcmp(bytes.data() + 12, "IHDR", 4) != 0)
    throw DecodeError("PNG does not start with IHDR", 12);
  const std::uint32_t width = read_be32(bytes, 16);
  const std::uint32_t height = read_be32(bytes, 20);
  if (width == 0 || height == 0 || width > 0x7fffffff || height > 0x7fffffff)
    throw DecodeError("degenerate raster dimensions", 16);
  if (bytes[24] != 8)
    throw DecodeError("unsupported PNG bit depth " + std::to_string(bytes[24]), 24);
  if (bytes[25] != 0)
    throw DecodeError("unsupported PNG color type " + std::to_string(bytes[25]) +
                          " (grayscale required)",
                      25);

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw DecodeError(std::string("PNG decode failed: ") + image.message, kIhdrEnd);
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw DecodeError("PNG decode failed: " + message, kIhdrEnd);
  }

  RasterSamples out;
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);
  out.maxval = 255;
  out.samples.assign(buffer.begin(), buffer.end());
  return out;
}

Bytes encode_pgm(int width, int height, int maxval, std::span<const std::uint16_t> samples) {
  const std::string header =
      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n" + std::to_string(maxval) + "\n";
  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + samples.size() * (maxval > 255 ? 2 : 1));
  for (const auto s : samples) {
    if (maxval > 255) out.push_back(static_cast<std::uint8_t>(s >> 8));
    out.push_back(static_cast<std::uint8_t>(s & 0xff));
  }
  return out;
}

Bytes encode_png(int width, int height, std::span<const std::uint8_t> samples) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, samples.data(), 0, nullptr))
    throw std::runtime_error(std::string("PNG encode failed: ") + image.message);
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, samples.data(), 0, nullptr))
    throw std::runtime_error(std::string("PNG encode failed: ") + image.message);
  out.resize(size);
  return out;
}

void require_nondegenerate(int width, int height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("cannot encode a raster with degenerate dimensions " +
                                std::to_string(width) + "x" + std::to_string(height));
}

}  // namespace

RasterSamples decode_samples(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin()))
    return decode_png(bytes);
  if (bytes.size() < 2) throw DecodeError("truncated magic number", bytes.size());
  if (bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) return decode_pgm(bytes);
  throw DecodeError("unrecognized raster magic number", 0);
}

BinaryMask decode_mask(std::span<const std::uint8_t> bytes) {
  const auto raw = decode_samples(bytes);
  std::vector<std::uint8_t> bits(raw.samples.size());
  std::transform(raw.samples.begin(), raw.samples.end(), bits.begin(),
                 [](std::uint16_t s) { return static_cast<std::uint8_t>(s > 0); });
  return BinaryMask(raw.width, raw.height, std::move(bits));
}

ProbabilityMap decode_probability(std::span<const std::uint8_t> bytes) {
  const auto raw = decode_samples(bytes);
  std::vector<double> values(raw.samples.size());
  const double scale = static_cast<double>(raw.maxval);
  std::transform(raw.samples.begin(), raw.samples.end(), values.begin(),
                 [scale](std::uint16_t s) { return static_cast<double>(s) / scale; });
  return ProbabilityMap(raw.width, raw.height, std::move(values));
}

std::variant<BinaryMask, ProbabilityMap> decode_raster(std::span<const std::uint8_t> bytes,
                                                       RasterKind kind) {
  if (kind == RasterKind::mask) return decode_mask(bytes);
  return decode_probability(bytes);
}

Bytes encode_raster(const BinaryMask& mask, RasterFormat format) {
  require_nondegenerate(mask.width(), mask.height());
  if (format == RasterFormat::png) {
    std::vector<std::uint8_t> samples(mask.size());
    std::transform(mask.values().begin(), mask.values().end(), samples.begin(),
                   [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
    return encode_png(mask.width(), mask.height(), samples);
  }
  std::vector<std::uint16_t> samples(mask.size());
  std::transform(mask.values().begin(), mask.values().end(), samples.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint16_t>(b ? 255 : 0); });
  return encode_pgm(mask.width(), mask.height(), 255, samples);
}

Bytes encode_raster(const ProbabilityMap& prob, RasterFormat format, int maxval) {
  require_nondegenerate(prob.width(), prob.height());
  if (format == RasterFormat::png) maxval = 255;
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("maxval must be in [1, 65535]");
  const double scale = static_cast<double>(maxval);
  if (format == RasterFormat::png) {
    std::vector<std::uint8_t> samples(prob.size());
    std::transform(prob.values().begin(), prob.values().end(), samples.begin(),
                   [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255.0)); });
    return encode_png(prob.width(), prob.height(), samples);
  }
  std::vector<std::uint16_t> samples(prob.size());
  std::transform(prob.values().begin(), prob.values().end(), samples.begin(),
                 [scale](double v) { return static_cast<std::uint16_t>(std::lround(v * scale)); });
  return encode_pgm(prob.width(), prob.height(), maxval, samples);
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

RasterFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" ? RasterFormat::png : RasterFormat::pgm;
}

BinaryMask load_mask(const std::filesystem::path& path) { return decode_mask(read_file(path)); }

ProbabilityMap load_probability(const std::filesystem::path& path) {
  return decode_probability(read_file(path));
}

void save_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  write_file(path, encode_raster(mask, format_for_path(path)));
}

void save_probability(const std::filesystem::path& path, const ProbabilityMap& prob) {
  write_file(path, encode_raster(prob, format_for_path(path)));
}

}  // namespace prwalk
