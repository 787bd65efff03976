#include "prwalk/ddb_shape.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace prwalk {

namespace {

using Plane = std::vector<double>;

// Zero-padded "same" convolution with an all-ones kernel.
Plane dilated_ones_conv(const Plane& in, int side, const ConvSpec& spec) {
  Plane out(in.size(), 0.0);
  const int r = spec.kernel / 2;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      double acc = 0.0;
      for (int ky = -r; ky <= r; ++ky) {
        const int sy = y + ky * spec.dilation;
        if (sy < 0 || sy >= side) continue;
        for (int kx = -r; kx <= r; ++kx) {
          const int sx = x + kx * spec.dilation;
          if (sx < 0 || sx >= side) continue;
          acc += in[static_cast<std::size_t>(sy) * side + sx];
        }
      }
      out[static_cast<std::size_t>(y) * side + x] = acc;
    }
  }
  return out;
}

void accumulate(Plane& into, const Plane& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

// Channels are collapsed by summation: with all-ones kernels a concatenation
// feeding the next layer has the support of the union of its parts.
Plane apply_block(const Plane& in, int side, const BlockTopology& t) {
  switch (t.mode) {
    case BlockMode::cascade: {
      Plane x = in;
      for (const auto& layer : t.layers) x = dilated_ones_conv(x, side, layer);
      return x;
    }
    case BlockMode::parallel: {
      Plane out(in.size(), 0.0);
      for (const auto& layer : t.layers) accumulate(out, dilated_ones_conv(in, side, layer));
      return out;
    }
    case BlockMode::dense: {
      Plane concat = in;
      for (const auto& layer : t.layers) accumulate(concat, dilated_ones_conv(concat, side, layer));
      return concat;
    }
  }
  return in;
}

int reach(const ConvSpec& c) { return (c.kernel - 1) * c.dilation; }

}  // namespace

void BlockTopology::validate() const {
  if (layers.empty()) throw std::invalid_argument("block topology needs at least one layer");
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  for (const auto& l : layers) {
    if (l.kernel < 1 || l.kernel % 2 == 0) throw std::invalid_argument("kernel size must be odd and positive");
    if (l.dilation < 1) throw std::invalid_argument("dilation must be at least 1");
  }
}

int receptive_field(const BlockTopology& topology) {
  topology.validate();
  int per_block = 0;
  if (topology.mode == BlockMode::parallel) {
    for (const auto& l : topology.layers) per_block = std::max(per_block, reach(l));
  } else {
    for (const auto& l : topology.layers) per_block += reach(l);
  }
  return 1 + topology.repeats * per_block;
}

int impulse_response_support(const BlockTopology& topology, int grid_side) {
  topology.validate();
  const int rf = receptive_field(topology);
  if (grid_side <= rf)
    throw std::invalid_argument("grid side " + std::to_string(grid_side) +
                                " must exceed the receptive field " + std::to_string(rf));
  Plane plane(static_cast<std::size_t>(grid_side) * grid_side, 0.0);
  const int c = grid_side / 2;
  plane[static_cast<std::size_t>(c) * grid_side + c] = 1.0;
  for (int r = 0; r < topology.repeats; ++r) plane = apply_block(plane, grid_side, topology);

  int min_x = grid_side, max_x = -1, min_y = grid_side, max_y = -1;
  for (int y = 0; y < grid_side; ++y) {
    for (int x = 0; x < grid_side; ++x) {
      if (plane[static_cast<std::size_t>(y) * grid_side + x] == 0.0) continue;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  return std::max(max_x - min_x, max_y - min_y) + 1;
}

std::vector<int> dense_concat_channels(int input_channels, int per_layer_out, int layers) {
  if (input_channels < 1 || per_layer_out < 1 || layers < 1)
    throw std::invalid_argument("channel counts and layer count must be positive");
  std::vector<int> out(static_cast<std::size_t>(layers));
  for (int j = 0; j < layers; ++j) out[static_cast<std::size_t>(j)] = input_channels + j * per_layer_out;
  return out;
}

ShapeReport shape_report(const BlockTopology& topology, int input_channels, int per_layer_out) {
  ShapeReport report;
  report.receptive_field = receptive_field(topology);
  if (topology.mode == BlockMode::dense)
    report.concat_channel_growth =
        dense_concat_channels(input_channels, per_layer_out, static_cast<int>(topology.layers.size()));
  return report;
}

BlockTopology standard_ddb(BlockMode mode, int repeats) {
  return BlockTopology{mode, {{3, 1}, {3, 2}, {3, 5}}, repeats};
}

}  // namespace prwalk
