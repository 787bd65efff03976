#pragma once

#include <optional>
#include <vector>

#include "prwalk/grid.hpp"

namespace prwalk {

enum class Connectivity { four = 4, eight = 8 };

/// Component labels, 0 for background and 1..count for foreground components.
class LabelMap : public Grid<int> {
 public:
  LabelMap() = default;
  LabelMap(int width, int height, std::vector<int> labels, int count)
      : Grid<int>(width, height, std::move(labels)), count_(count) {}

  int count() const { return count_; }
  BinaryMask mask_of(int label) const;

 private:
  int count_ = 0;
};

struct ComponentIndex {
  /// pixels[k - 1] holds the pixels of label k in raster order.
  std::vector<std::vector<Pixel>> pixels;
  std::vector<std::size_t> sizes;
  /// Label of the largest component (smallest id on ties); empty for an empty mask.
  std::optional<int> largest;

  int count() const { return static_cast<int>(sizes.size()); }
  const std::vector<Pixel>& pixels_of(int label) const { return pixels.at(label - 1); }
};

/// Labels are assigned in raster order of each component's first pixel.
LabelMap label_components(const BinaryMask& mask, Connectivity connectivity = Connectivity::eight);

ComponentIndex component_index(const LabelMap& labels);

/// Zhang-Suen thinning. Each deletion is re-validated against the partially
/// thinned image, so components (8-connectivity) are never split or erased.
BinaryMask skeletonize(const BinaryMask& mask);

}  // namespace prwalk
