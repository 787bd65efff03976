#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prwalk/components.hpp"
#include "prwalk/grid.hpp"

namespace prwalk {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WalkConfig {
  /// Weight of the directional term against the probability map.
  double alpha = 0.2;
  /// Side l of the square ROI; fragments farther than l from the trunk are skipped.
  int roi_side = 100;
  /// A walker stops when every admissible neighbour has confidence below this.
  double eps_nn = 0.1;
  /// Per-walker step budget; roi_side² when unset.
  std::optional<int> max_steps;
  /// Unused: the walk is deterministic.
  std::uint64_t rng_seed = 0;
  /// When every forward walker fails, also walk from the target on the trunk
  /// back toward the fragment.
  bool reverse_walkers = false;

  int step_budget() const;
  void validate() const;
};

struct FracturePair {
  int fragment_label = 0;
  Pixel a;  ///< on the fragment centreline
  Pixel b;  ///< on the trunk centreline
  double d_ab = 0.0;
  Pixel midpoint;
};

enum class FitAxis { y_of_x, x_of_y };

/// Quadratic guidance curve: y = a x² + b x + c, or x = a y² + b y + c.
struct Parabola {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  FitAxis axis = FitAxis::y_of_x;

  double operator()(double t) const { return (a * t + b) * t + c; }
  /// Distance along the dependent axis (vertical for y_of_x).
  double axis_distance(const Pixel& p) const;
  /// True when the curve enters the unit square of pixel p.
  bool passes_through(const Pixel& p) const;
};

enum class WalkStatus {
  connected,
  aborted_low_probability,
  aborted_step_budget,
  aborted_left_roi,
  no_escape,
};

struct WalkOutcome {
  WalkStatus status = WalkStatus::no_escape;
  /// Pixels entered after the seed, ending on the target or a goal pixel when connected.
  std::vector<Pixel> path;
  Pixel target;
};

enum class RoiStatus {
  connected,
  skipped,
  aborted_low_probability,
  aborted_step_budget,
  aborted_left_roi,
  no_escape,
};

const char* to_string(WalkStatus status);
const char* to_string(RoiStatus status);
RoiStatus roi_status_from_string(const std::string& name);

/// One fragment's reconnection attempt.
struct RoiRecord {
  int fragment_label = 0;
  std::size_t fragment_size = 0;
  FracturePair pair;
  RoiStatus status = RoiStatus::skipped;
  std::optional<Roi> roi;
  std::optional<Pixel> target;
  /// True when the target came from the straight-line fallback toward B.
  bool fallback_guidance = false;
  std::optional<Parabola> curve;
  int walkers = 0;
  int connected_walkers = 0;
  /// Total length of all connected walker paths.
  std::size_t path_length = 0;
  /// Pixels switched from background to foreground, raster order.
  std::vector<Pixel> stamped;

  std::size_t stamped_pixel_count() const { return stamped.size(); }
};

struct ReconnectReport {
  WalkConfig config;
  bool baseline = false;
  int components_before = 0;
  int components_after = 0;
  std::vector<RoiRecord> rois;

  std::size_t rois_connected() const;
  std::size_t rois_skipped() const;
  std::size_t stamped_total() const;
};

struct ReconnectResult {
  BinaryMask mask;
  ReconnectReport report;
};

struct FragmentResult {
  BinaryMask mask;
  RoiRecord record;
};

/// Closest (fragment, trunk) pixel pair over the full cross product; ties keep
/// the lexicographically smallest (A.y, A.x, B.y, B.x).
FracturePair nearest_pair(std::span<const Pixel> fragment_centerline,
                          std::span<const Pixel> trunk_centerline, int fragment_label = 0);

/// l×l square centred at the pair midpoint, or nothing when d_AB > l.
std::optional<Roi> roi_of(const FracturePair& pair, int roi_side, int image_width,
                          int image_height);

/// Least-squares quadratic. Fits y(x) when the x-extent is at least the
/// y-extent, x(y) otherwise. Throws FitError for fewer than 3 points or a
/// singular normal system.
Parabola fit_parabola(std::span<const Pixel> points);

/// Where the curve meets the trunk. Trunk pixels the curve passes through are
/// intersections and the one nearest `anchor` wins. If the curve misses the trunk, the pixel with the
/// smallest axis distance is taken. Remaining ties go to raster order.
Pixel target_point(const Parabola& curve, std::span<const Pixel> trunk, const Pixel& anchor);

/// 1 / |candidate - target|. Throws std::domain_error when candidate == target.
double direction_prob(const Pixel& candidate, const Pixel& target);

double step_prob(const Pixel& candidate, const Pixel& target, double pnn, double alpha);

/// Greedy walk from `seed` toward `target`. Each step enters the unvisited
/// in-ROI 8-neighbour with the largest step probability. Reaching the target
/// or any pixel set in `goal` connects. Pixels set in `source` are never
/// entered, so a walker seeded on a fragment has to leave it.
WalkOutcome walk(const Pixel& seed, const Pixel& target, const ProbabilityMap& prob,
                 const Roi& roi, const WalkConfig& cfg, const BinaryMask* goal = nullptr,
                 const BinaryMask* source = nullptr);

FragmentResult reconnect_fragment(int fragment_label, const LabelMap& labels,
                                  const ComponentIndex& index, const ProbabilityMap& prob,
                                  const BinaryMask& mask, const WalkConfig& cfg);

/// Reconnects every fragment to the largest component. Fragments are taken in
/// decreasing size; the trunk absorbs each fragment it connects to.
ReconnectResult prw(const BinaryMask& mask, const ProbabilityMap& prob, const WalkConfig& cfg = {});

/// Same pipeline steered by the directional term alone (alpha = 1, no
/// confidence floor).
ReconnectResult directional_walk_baseline(const BinaryMask& mask, const ProbabilityMap& prob,
                                          const WalkConfig& cfg = {});

}  // namespace prwalk
