#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prwalk {

/// Integer pixel coordinate. x is the column, y the row; origin top-left.
struct Pixel {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Pixel&, const Pixel&) = default;
};

/// Raster order: row first, then column.
constexpr bool raster_less(const Pixel& a, const Pixel& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

inline double euclidean_distance(const Pixel& a, const Pixel& b) {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

/// Row-major dense grid. Immutable once constructed; build a new grid to change it.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int width, int height, std::vector<T> values)
      : width_(width), height_(height), values_(std::move(values)) {
    if (width < 0 || height < 0) {
      throw std::invalid_argument("grid dimensions must be nonnegative");
    }
    if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw std::invalid_argument("grid value count " + std::to_string(values_.size()) +
                                  " does not match " + std::to_string(width) + "x" +
                                  std::to_string(height));
    }
  }

  Grid(int width, int height, const T& fill)
      : Grid(width, height,
             std::vector<T>(static_cast<std::size_t>(std::max(width, 0)) *
                                static_cast<std::size_t>(std::max(height, 0)),
                            fill)) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool contains(const Pixel& p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
  }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  const T& operator()(int x, int y) const { return values_[index(x, y)]; }
  const T& operator[](const Pixel& p) const { return values_[index(p.x, p.y)]; }

  std::span<const T> values() const { return values_; }

  bool same_shape(int width, int height) const { return width_ == width && height_ == height; }
  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> values_;
};

/// Per-pixel confidence in [0,1]. Construction rejects NaN and out-of-range values.
class ProbabilityMap : public Grid<double> {
 public:
  ProbabilityMap() = default;
  ProbabilityMap(int width, int height, std::vector<double> values);
  ProbabilityMap(int width, int height, double fill);
};

/// Foreground/background raster; stored as bytes holding 0 or 1.
class BinaryMask : public Grid<std::uint8_t> {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, std::vector<std::uint8_t> values);
  BinaryMask(int width, int height, bool fill = false);

  bool test(int x, int y) const { return (*this)(x, y) != 0; }
  bool test(const Pixel& p) const { return (*this)[p] != 0; }
  /// false outside the grid
  bool test_safe(const Pixel& p) const { return contains(p) && test(p); }

  std::size_t count() const;
  std::vector<Pixel> foreground() const;
  BinaryMask complement() const;
  /// Pixel-wise a ⊆ b.
  bool subset_of(const BinaryMask& other) const;
};

using RealGrid = Grid<double>;

/// Square region of interest of side `side` centred at `center`, clipped to the image.
struct Roi {
  Pixel center;
  int side = 0;
  int min_x = 0;
  int max_x = -1;
  int min_y = 0;
  int max_y = -1;

  static Roi centered(const Pixel& center, int side, int image_width, int image_height);

  bool contains(const Pixel& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  int width() const { return max_x - min_x + 1; }
  int height() const { return max_y - min_y + 1; }
  std::size_t area() const {
    return width() > 0 && height() > 0
               ? static_cast<std::size_t>(width()) * static_cast<std::size_t>(height())
               : 0;
  }

  friend bool operator==(const Roi&, const Roi&) = default;
};

}  // namespace prwalk
