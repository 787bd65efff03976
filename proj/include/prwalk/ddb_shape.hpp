#pragma once

#include <vector>

namespace prwalk {

struct ConvSpec {
  int kernel = 3;
  int dilation = 1;
};

enum class BlockMode { cascade, parallel, dense };

/// `repeats` copies of one block of `layers`, composed in series.
struct BlockTopology {
  BlockMode mode = BlockMode::dense;
  std::vector<ConvSpec> layers;
  int repeats = 4;

  void validate() const;
};

struct ShapeReport {
  int receptive_field = 1;
  std::vector<int> concat_channel_growth;
};

/// Side of the square input support that influences one output position.
int receptive_field(const BlockTopology& topology);

/// Runs all-ones dilated convolutions over a centred unit impulse on a
/// grid_side × grid_side grid and returns the side of the nonzero support.
/// Requires grid_side > receptive_field(topology).
int impulse_response_support(const BlockTopology& topology, int grid_side);

/// Input channel count seen by each layer of a dense block.
std::vector<int> dense_concat_channels(int input_channels, int per_layer_out, int layers);

ShapeReport shape_report(const BlockTopology& topology, int input_channels, int per_layer_out);

/// Three 3×3 convolutions with rates 1, 2, 5.
BlockTopology standard_ddb(BlockMode mode, int repeats = 4);

}  // namespace prwalk
