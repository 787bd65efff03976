#include "prwalk/grid.hpp"

#include <algorithm>

namespace prwalk {

namespace {

std::vector<double> checked_probabilities(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("probability at index " + std::to_string(i) +
                                  " is outside [0,1]");
    }
  }
  return values;
}

std::vector<std::uint8_t> normalized_bits(std::vector<std::uint8_t> values) {
  for (auto& v : values) v = v ? 1 : 0;
  return values;
}

}  // namespace

ProbabilityMap::ProbabilityMap(int width, int height, std::vector<double> values)
    : Grid<double>(width, height, checked_probabilities(std::move(values))) {}

ProbabilityMap::ProbabilityMap(int width, int height, double fill)
    : ProbabilityMap(width, height,
                     std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                             static_cast<std::size_t>(std::max(height, 0)),
                                         fill)) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> values)
    : Grid<std::uint8_t>(width, height, normalized_bits(std::move(values))) {}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : Grid<std::uint8_t>(width, height, static_cast<std::uint8_t>(fill ? 1 : 0)) {}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(values().begin(), values().end(), std::uint8_t{1}));
}

std::vector<Pixel> BinaryMask::foreground() const {
  std::vector<Pixel> out;
  for (int y = 0; y < height(); ++y)
    for (int x = 0; x < width(); ++x)
      if (test(x, y)) out.push_back({x, y});
  return out;
}

BinaryMask BinaryMask::complement() const {
  std::vector<std::uint8_t> bits(values().begin(), values().end());
  for (auto& b : bits) b = b ? 0 : 1;
  return BinaryMask(width(), height(), std::move(bits));
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
  if (!same_shape(other)) return false;
  const auto a = values();
  const auto b = other.values();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

Roi Roi::centered(const Pixel& center, int side, int image_width, int image_height) {
  Roi roi;
  roi.center = center;
  roi.side = side;
  const int half = side / 2;
  roi.min_x = std::max(0, center.x - half);
  roi.max_x = std::min(image_width - 1, center.x + half);
  roi.min_y = std::max(0, center.y - half);
  roi.max_y = std::min(image_height - 1, center.y + half);
  return roi;
}

}  // namespace prwalk
