#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prwalk/grid.hpp"

namespace prwalk {

class SynthConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SynthConfig {
  std::uint64_t rng_seed = 1;
  int image_side = 256;
  /// Number of strokes, the first one being the trunk.
  int branch_count = 4;
  int vessel_width = 5;
  int gap_count = 3;
  /// Centreline pixels removed per gap.
  int gap_length = 20;
  /// Confidence assigned to removed vessel pixels.
  double ridge_prob = 0.35;
  /// Confidence assigned to surviving vessel pixels.
  double vessel_prob = 0.9;
  double noise_amplitude = 0.0;
  int blur_radius = 2;
  /// Bend of each stroke: control-point offset as a fraction of the chord.
  double curvature = 0.25;

  void validate() const;
};

struct GapRecord {
  int id = 0;
  int stroke = 0;
  /// Ground-truth pixels deleted from the mask, raster order.
  std::vector<Pixel> removed;
  /// Removed centreline run.
  std::vector<Pixel> centerline;
  /// Surviving centreline pixels on either side of the run.
  Pixel endpoint_a;
  Pixel endpoint_b;
};

struct BrokenVessels {
  BinaryMask broken;
  std::vector<GapRecord> gaps;
};

struct Stroke {
  std::vector<Pixel> centerline;
  int parent = -1;
};

/// The 8-connected stroke centrelines behind gen_ground_truth.
std::vector<Stroke> trace_strokes(const SynthConfig& cfg);

/// Strokes dilated by a vessel_width square brush; one 8-connected tree.
BinaryMask gen_ground_truth(const SynthConfig& cfg);

/// Cuts gap_count runs of gap_length centreline pixels out of the tree. Every
/// gap splits one component in two. Throws SynthConfigError when the gaps do not fit.
BrokenVessels inject_gaps(const BinaryMask& truth, const SynthConfig& cfg);

ProbabilityMap simulate_probability(const BinaryMask& truth, const BinaryMask& broken,
                                    const SynthConfig& cfg);

struct SynthFixture {
  SynthConfig config;
  BinaryMask truth;
  BinaryMask broken;
  ProbabilityMap probability;
  std::vector<GapRecord> gaps;
};

SynthFixture make_fixture(const SynthConfig& cfg);

/// Counter-based generator: output k of stream s is a hash of (seed, s, k).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace prwalk
