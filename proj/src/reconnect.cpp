#include "prwalk/reconnect.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <tuple>

namespace prwalk {

namespace {

// Neighbour order used for argmax ties.
constexpr std::array<std::array<int, 2>, 8> kOmega = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

// Mask plus component bookkeeping that is updated in place as fragments
// merge. Components are tracked with a union-find over the initial labels;
// the centreline of a merged component is the union of its parts' skeleton
// pixels and the walker paths that joined them.
class State {
 public:
  State(const BinaryMask& mask, const LabelMap& labels, const ComponentIndex& index,
        const BinaryMask& skeleton)
      : width_(mask.width()),
        height_(mask.height()),
        bits_(mask.values().begin(), mask.values().end()),
        labels_(labels.values().begin(), labels.values().end()),
        parent_(static_cast<std::size_t>(labels.count()) + 1),
        pixels_(index.pixels),
        centerline_(static_cast<std::size_t>(labels.count())) {
    for (std::size_t k = 0; k < parent_.size(); ++k) parent_[k] = static_cast<int>(k);
    for (int k = 1; k <= labels.count(); ++k) {
      auto& line = centerline_[k - 1];
      for (const auto& p : pixels_[k - 1])
        if (skeleton.test(p)) line.push_back(p);
      if (line.empty()) line = pixels_[k - 1];
    }
    groups_ = labels.count();
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int groups() const { return groups_; }

  int group(int label) {
    while (parent_[label] != label) {
      parent_[label] = parent_[parent_[label]];
      label = parent_[label];
    }
    return label;
  }
  /// Group of a foreground pixel, 0 for background.
  int group_at(const Pixel& p) {
    const int label = labels_[index(p)];
    return label == 0 ? 0 : group(label);
  }

  bool test(const Pixel& p) const { return bits_[index(p)] != 0; }
  const std::vector<Pixel>& pixels(int g) const { return pixels_[g - 1]; }
  const std::vector<Pixel>& centerline(int g) const { return centerline_[g - 1]; }

  /// Adds newly stamped pixels and merges every group they touch.
  void merge(const std::vector<Pixel>& stamped, const std::vector<Pixel>& bridges) {
    if (stamped.empty()) return;
    for (const auto& p : stamped) bits_[index(p)] = 1;
    std::vector<int> touched;
    for (const auto& p : stamped) {
      for (const auto& [dx, dy] : kOmega) {
        const Pixel q{p.x + dx, p.y + dy};
        if (q.x < 0 || q.y < 0 || q.x >= width_ || q.y >= height_) continue;
        const int label = labels_[index(q)];
        if (label != 0) touched.push_back(group(label));
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    if (touched.empty()) throw std::logic_error("stamp touches no component");

    const int root = touched.front();
    auto& px = pixels_[root - 1];
    auto& line = centerline_[root - 1];
    for (std::size_t i = 1; i < touched.size(); ++i) {
      const int g = touched[i];
      parent_[g] = root;
      px.insert(px.end(), pixels_[g - 1].begin(), pixels_[g - 1].end());
      line.insert(line.end(), centerline_[g - 1].begin(), centerline_[g - 1].end());
      pixels_[g - 1].clear();
      centerline_[g - 1].clear();
      --groups_;
    }
    for (const auto& p : stamped) labels_[index(p)] = root;
    px.insert(px.end(), stamped.begin(), stamped.end());
    std::vector<Pixel> fresh(bridges.begin(), bridges.end());
    std::sort(fresh.begin(), fresh.end(), raster_less);
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    line.insert(line.end(), fresh.begin(), fresh.end());
  }

  BinaryMask mask() const { return BinaryMask(width_, height_, bits_); }

 private:
  std::size_t index(const Pixel& p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(p.x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
  std::vector<int> labels_;
  std::vector<int> parent_;
  std::vector<std::vector<Pixel>> pixels_;
  std::vector<std::vector<Pixel>> centerline_;
  int groups_ = 0;
};

// ROI-local pixel classes for the walker.
constexpr std::uint8_t kSource = 1;
constexpr std::uint8_t kGoal = 2;

// Failure statuses in order of how much they say about the ROI.
int failure_rank(WalkStatus s) {
  switch (s) {
    case WalkStatus::aborted_low_probability: return 0;
    case WalkStatus::aborted_left_roi: return 1;
    case WalkStatus::aborted_step_budget: return 2;
    case WalkStatus::no_escape: return 3;
    case WalkStatus::connected: break;
  }
  return 4;
}

RoiStatus roi_status(WalkStatus s) {
  switch (s) {
    case WalkStatus::connected: return RoiStatus::connected;
    case WalkStatus::aborted_low_probability: return RoiStatus::aborted_low_probability;
    case WalkStatus::aborted_step_budget: return RoiStatus::aborted_step_budget;
    case WalkStatus::aborted_left_roi: return RoiStatus::aborted_left_roi;
    case WalkStatus::no_escape: return RoiStatus::no_escape;
  }
  return RoiStatus::no_escape;
}

// Walker over an ROI-local class grid (kSource / kGoal bits per ROI pixel).
WalkOutcome walk_local(const Pixel& seed, const Pixel& target, const ProbabilityMap& prob,
                       const Roi& roi, const WalkConfig& cfg,
                       const std::vector<std::uint8_t>& classes) {
  const int roi_w = roi.width();
  auto local = [&](const Pixel& p) {
    return static_cast<std::size_t>(p.y - roi.min_y) * roi_w + (p.x - roi.min_x);
  };

  WalkOutcome out;
  out.target = target;
  if (seed == target || (classes[local(seed)] & kGoal)) {
    out.status = WalkStatus::connected;
    return out;
  }
  // With no directional term nothing pulls the walker out of the confidence
  // basin it starts in.
  if (cfg.alpha <= 0.0) {
    out.status = WalkStatus::no_escape;
    return out;
  }

  std::vector<std::uint8_t> visited(roi.area(), 0);
  visited[local(seed)] = 1;

  const int budget = cfg.step_budget();
  Pixel current = seed;
  for (int steps = 0;; ++steps) {
    if (steps >= budget) {
      out.status = WalkStatus::aborted_step_budget;
      return out;
    }

    std::array<Pixel, 8> admissible{};
    int count = 0;
    bool blocked_by_roi = false;
    for (const auto& [dx, dy] : kOmega) {
      const Pixel q{current.x + dx, current.y + dy};
      if (!roi.contains(q) || !prob.contains(q)) {
        blocked_by_roi = true;
        continue;
      }
      const std::size_t i = local(q);
      if (visited[i] || (classes[i] & kSource)) continue;
      admissible[count++] = q;
    }
    if (count == 0) {
      out.status = blocked_by_roi ? WalkStatus::aborted_left_roi : WalkStatus::no_escape;
      return out;
    }

    std::optional<Pixel> next;
    for (int i = 0; i < count; ++i)
      if (admissible[i] == target) next = target;

    if (!next) {
      bool any_confident = false;
      for (int i = 0; i < count; ++i) any_confident |= prob[admissible[i]] >= cfg.eps_nn;
      if (!any_confident) {
        out.status = WalkStatus::aborted_low_probability;
        return out;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < count; ++i) {
        const double score = step_prob(admissible[i], target, prob[admissible[i]], cfg.alpha);
        if (score > best) {
          best = score;
          next = admissible[i];
        }
      }
    }

    current = *next;
    visited[local(current)] = 1;
    out.path.push_back(current);
    if (current == target || (classes[local(current)] & kGoal)) {
      out.status = WalkStatus::connected;
      return out;
    }
  }
}

struct Attempt {
  RoiRecord record;
  std::vector<Pixel> bridges;
};

Attempt reconnect_in(int fragment, int trunk, State& state, const ProbabilityMap& prob,
                     const WalkConfig& cfg) {
  Attempt attempt;
  RoiRecord& record = attempt.record;
  record.fragment_label = fragment;
  record.fragment_size = state.pixels(fragment).size();
  record.pair = nearest_pair(state.centerline(fragment), state.centerline(trunk), fragment);

  const auto roi = roi_of(record.pair, cfg.roi_side, state.width(), state.height());
  if (!roi) {
    record.status = RoiStatus::skipped;
    return attempt;
  }
  record.roi = roi;

  Pixel target = record.pair.b;
  try {
    const Parabola curve = fit_parabola(state.pixels(fragment));
    record.curve = curve;
    target = target_point(curve, state.pixels(trunk), record.pair.a);
  } catch (const FitError&) {
    record.fallback_guidance = true;
  } catch (const TargetError&) {
    record.fallback_guidance = true;
  }
  record.target = target;

  // Everything below works on the l x l window only.
  std::vector<std::uint8_t> classes(roi->area(), 0);
  std::vector<std::uint8_t> stamp_bits(roi->area(), 0);
  std::vector<Pixel> seeds;
  for (int y = roi->min_y, i = 0; y <= roi->max_y; ++y) {
    for (int x = roi->min_x; x <= roi->max_x; ++x, ++i) {
      const Pixel p{x, y};
      const int g = state.group_at(p);
      if (g == fragment) {
        classes[i] = kSource;
        seeds.push_back(p);
      } else if (g == trunk) {
        classes[i] = kGoal;
      }
      if (state.test(p)) stamp_bits[i] = 1;
    }
  }
  const int roi_w = roi->width();
  auto local = [&](const Pixel& p) {
    return static_cast<std::size_t>(p.y - roi->min_y) * roi_w + (p.x - roi->min_x);
  };

  // Only the bridge is stamped: the part of the path after the walker last
  // stood on its source component.
  std::vector<Pixel> stamped;
  auto stamp = [&](const std::vector<Pixel>& path, std::uint8_t source) {
    std::size_t from = 0;
    for (std::size_t i = 0; i < path.size(); ++i)
      if (classes[local(path[i])] & source) from = i + 1;
    for (std::size_t i = from; i < path.size(); ++i) {
      const Pixel& p = path[i];
      attempt.bridges.push_back(p);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const Pixel q{p.x + dx, p.y + dy};
          if (!roi->contains(q)) continue;
          auto& bit = stamp_bits[local(q)];
          if (!bit) {
            bit = 1;
            stamped.push_back(q);
          }
        }
      }
    }
    record.path_length += path.size() - from;
  };

  std::optional<WalkStatus> worst_failure;
  auto note_failure = [&](WalkStatus s) {
    if (!worst_failure || failure_rank(s) < failure_rank(*worst_failure)) worst_failure = s;
  };

  for (const auto& seed : seeds) {
    ++record.walkers;
    const WalkOutcome outcome = walk_local(seed, target, prob, *roi, cfg, classes);
    if (outcome.status == WalkStatus::connected) {
      ++record.connected_walkers;
      stamp(outcome.path, kSource);
    } else {
      note_failure(outcome.status);
    }
  }

  if (cfg.reverse_walkers && record.connected_walkers == 0 && roi->contains(target)) {
    // Walking back from C: the fragment becomes the goal and the trunk the source.
    std::vector<std::uint8_t> swapped(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
      swapped[i] = static_cast<std::uint8_t>(((classes[i] & kSource) ? kGoal : 0) |
                                             ((classes[i] & kGoal) ? kSource : 0));
    ++record.walkers;
    const WalkOutcome outcome = walk_local(target, record.pair.a, prob, *roi, cfg, swapped);
    if (outcome.status == WalkStatus::connected) {
      ++record.connected_walkers;
      stamp(outcome.path, kGoal);
    } else {
      note_failure(outcome.status);
    }
  }

  if (record.connected_walkers > 0) {
    record.status = RoiStatus::connected;
  } else {
    record.status = roi_status(worst_failure.value_or(WalkStatus::no_escape));
  }

  std::sort(stamped.begin(), stamped.end(), raster_less);
  record.stamped = std::move(stamped);
  return attempt;
}

ReconnectResult run_pipeline(const BinaryMask& mask, const ProbabilityMap& prob,
                             const WalkConfig& cfg, bool baseline) {
  if (!mask.same_shape(prob))
    throw std::invalid_argument("mask is " + std::to_string(mask.width()) + "x" +
                                std::to_string(mask.height()) + " but probability map is " +
                                std::to_string(prob.width()) + "x" + std::to_string(prob.height()));
  cfg.validate();

  ReconnectResult result{mask, {}};
  result.report.config = cfg;
  result.report.baseline = baseline;

  const LabelMap labels = label_components(mask, Connectivity::eight);
  const ComponentIndex index = component_index(labels);
  result.report.components_before = labels.count();
  result.report.components_after = labels.count();
  if (labels.count() <= 1) return result;

  State state(mask, labels, index, skeletonize(mask));
  const int trunk0 = *index.largest;

  std::vector<int> order;
  for (int k = 1; k <= labels.count(); ++k)
    if (k != trunk0) order.push_back(k);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return index.sizes[a - 1] > index.sizes[b - 1]; });

  // A fragment that fails may succeed once the trunk has grown toward it, so
  // passes repeat until one adds nothing.
  bool changed = false;
  for (bool pass_changed = true; pass_changed;) {
    pass_changed = false;
    for (const int label : order) {
      const int fragment = state.group(label);
      const int trunk = state.group(trunk0);
      if (fragment == trunk || fragment != label) continue;

      Attempt attempt = reconnect_in(fragment, trunk, state, prob, cfg);
      attempt.record.fragment_label = label;
      attempt.record.pair.fragment_label = label;
      state.merge(attempt.record.stamped, attempt.bridges);
      pass_changed |= state.group(label) == state.group(trunk0);
      changed |= !attempt.record.stamped.empty();
      result.report.rois.push_back(std::move(attempt.record));
    }
  }

  result.report.components_after = state.groups();
  if (changed) result.mask = state.mask();
  return result;
}

}  // namespace

int WalkConfig::step_budget() const {
  if (max_steps) return *max_steps;
  const long long l2 = static_cast<long long>(roi_side) * roi_side;
  return static_cast<int>(std::clamp<long long>(l2, 1, std::numeric_limits<int>::max()));
}

void WalkConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (roi_side < 0) throw std::invalid_argument("roi_side must be nonnegative");
  if (!(eps_nn >= 0.0 && eps_nn <= 1.0)) throw std::invalid_argument("eps_nn must lie in [0,1]");
  if (max_steps && *max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
}

const char* to_string(WalkStatus status) {
  switch (status) {
    case WalkStatus::connected: return "connected";
    case WalkStatus::aborted_low_probability: return "aborted_low_probability";
    case WalkStatus::aborted_step_budget: return "aborted_step_budget";
    case WalkStatus::aborted_left_roi: return "aborted_left_roi";
    case WalkStatus::no_escape: return "no_escape";
  }
  return "unknown";
}

const char* to_string(RoiStatus status) {
  switch (status) {
    case RoiStatus::connected: return "connected";
    case RoiStatus::skipped: return "skipped";
    case RoiStatus::aborted_low_probability: return "aborted_low_probability";
    case RoiStatus::aborted_step_budget: return "aborted_step_budget";
    case RoiStatus::aborted_left_roi: return "aborted_left_roi";
    case RoiStatus::no_escape: return "no_escape";
  }
  return "unknown";
}

RoiStatus roi_status_from_string(const std::string& name) {
  for (auto s : {RoiStatus::connected, RoiStatus::skipped, RoiStatus::aborted_low_probability,
                 RoiStatus::aborted_step_budget, RoiStatus::aborted_left_roi, RoiStatus::no_escape})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown ROI status '" + name + "'");
}

std::size_t ReconnectReport::rois_connected() const {
  return static_cast<std::size_t>(std::count_if(rois.begin(), rois.end(), [](const RoiRecord& r) {
    return r.status == RoiStatus::connected;
  }));
}

std::size_t ReconnectReport::rois_skipped() const {
  return static_cast<std::size_t>(std::count_if(rois.begin(), rois.end(), [](const RoiRecord& r) {
    return r.status == RoiStatus::skipped;
  }));
}

std::size_t ReconnectReport::stamped_total() const {
  std::size_t total = 0;
  for (const auto& r : rois) total += r.stamped.size();
  return total;
}

double Parabola::axis_distance(const Pixel& p) const {
  if (axis == FitAxis::y_of_x) return std::abs(static_cast<double>(p.y) - (*this)(p.x));
  return std::abs(static_cast<double>(p.x) - (*this)(p.y));
}

bool Parabola::passes_through(const Pixel& p) const {
  const double t = axis == FitAxis::y_of_x ? p.x : p.y;
  const double v = axis == FitAxis::y_of_x ? p.y : p.x;
  double lo = std::min((*this)(t - 0.5), (*this)(t + 0.5));
  double hi = std::max((*this)(t - 0.5), (*this)(t + 0.5));
  if (a != 0.0) {
    const double vertex = -b / (2.0 * a);
    if (vertex > t - 0.5 && vertex < t + 0.5) {
      lo = std::min(lo, (*this)(vertex));
      hi = std::max(hi, (*this)(vertex));
    }
  }
  return lo < v + 0.5 && hi > v - 0.5;
}

FracturePair nearest_pair(std::span<const Pixel> fragment_centerline,
                          std::span<const Pixel> trunk_centerline, int fragment_label) {
  if (fragment_centerline.empty() || trunk_centerline.empty())
    throw std::invalid_argument("nearest_pair needs two nonempty pixel lists");
  auto key = [](const Pixel& a, const Pixel& b) { return std::tuple(a.y, a.x, b.y, b.x); };

  long long best_sq = std::numeric_limits<long long>::max();
  Pixel best_a{}, best_b{};
  for (const auto& a : fragment_centerline) {
    for (const auto& b : trunk_centerline) {
      const long long dx = a.x - b.x;
      const long long dy = a.y - b.y;
      const long long sq = dx * dx + dy * dy;
      if (sq < best_sq || (sq == best_sq && key(a, b) < key(best_a, best_b))) {
        best_sq = sq;
        best_a = a;
        best_b = b;
      }
    }
  }
  FracturePair pair;
  pair.fragment_label = fragment_label;
  pair.a = best_a;
  pair.b = best_b;
  pair.d_ab = std::sqrt(static_cast<double>(best_sq));
  pair.midpoint = {static_cast<int>(std::lround((best_a.x + best_b.x) / 2.0)),
                   static_cast<int>(std::lround((best_a.y + best_b.y) / 2.0))};
  return pair;
}

std::optional<Roi> roi_of(const FracturePair& pair, int roi_side, int image_width,
                          int image_height) {
  if (pair.d_ab > roi_side) return std::nullopt;
  return Roi::centered(pair.midpoint, roi_side, image_width, image_height);
}

Parabola fit_parabola(std::span<const Pixel> points) {
  if (points.size() < 3) throw FitError("parabola fit needs at least 3 points");
  auto [xmin, xmax] = std::minmax_element(points.begin(), points.end(),
                                          [](const Pixel& a, const Pixel& b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(points.begin(), points.end(),
                                          [](const Pixel& a, const Pixel& b) { return a.y < b.y; });
  Parabola curve;
  curve.axis = (xmax->x - xmin->x) >= (ymax->y - ymin->y) ? FitAxis::y_of_x : FitAxis::x_of_y;
  const bool y_of_x = curve.axis == FitAxis::y_of_x;

  // Centre the independent coordinate so the design matrix stays well conditioned.
  double mean = 0.0;
  for (const auto& p : points) mean += y_of_x ? p.x : p.y;
  mean /= static_cast<double>(points.size());

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    const double u = (y_of_x ? p.x : p.y) - mean;
    design(i, 0) = u * u;
    design(i, 1) = u;
    design(i, 2) = 1.0;
    rhs(i) = y_of_x ? p.y : p.x;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw FitError("parabola fit is rank deficient");
  const Eigen::Vector3d centred = qr.solve(rhs);
  if (!centred.allFinite()) throw FitError("parabola fit produced non-finite coefficients");

  // a u² + b u + c with u = t - mean, expanded in t.
  const double a = centred(0), b = centred(1), c = centred(2);
  curve.a = a;
  curve.b = b - 2.0 * a * mean;
  curve.c = a * mean * mean - b * mean + c;
  return curve;
}

Pixel target_point(const Parabola& curve, std::span<const Pixel> trunk, const Pixel& anchor) {
  // Axis distance only matters when the curve misses the trunk entirely.
  auto key = [&](const Pixel& p) {
    const double d = curve.passes_through(p) ? 0.0 : curve.axis_distance(p);
    return std::pair{d, euclidean_distance(p, anchor)};
  };
  std::optional<Pixel> best;
  std::pair<double, double> best_key;
  for (const auto& p : trunk) {
    const auto k = key(p);
    if (!best || k < best_key || (k == best_key && raster_less(p, *best))) {
      best = p;
      best_key = k;
    }
  }
  if (!best) throw TargetError("trunk is empty");
  return *best;
}

double direction_prob(const Pixel& candidate, const Pixel& target) {
  if (candidate == target) throw std::domain_error("direction probability is undefined at the target");
  return 1.0 / euclidean_distance(candidate, target);
}

double step_prob(const Pixel& candidate, const Pixel& target, double pnn, double alpha) {
  return alpha * direction_prob(candidate, target) + (1.0 - alpha) * pnn;
}

WalkOutcome walk(const Pixel& seed, const Pixel& target, const ProbabilityMap& prob,
                 const Roi& roi, const WalkConfig& cfg, const BinaryMask* goal,
                 const BinaryMask* source) {
  if (!roi.contains(seed) || !prob.contains(seed))
    throw std::invalid_argument("walker seed lies outside the ROI");
  std::vector<std::uint8_t> classes(roi.area(), 0);
  for (int y = roi.min_y, i = 0; y <= roi.max_y; ++y) {
    for (int x = roi.min_x; x <= roi.max_x; ++x, ++i) {
      const Pixel p{x, y};
      if (goal && goal->test_safe(p)) classes[i] |= kGoal;
      if (source && source->test_safe(p)) classes[i] |= kSource;
    }
  }
  return walk_local(seed, target, prob, roi, cfg, classes);
}

FragmentResult reconnect_fragment(int fragment_label, const LabelMap& labels,
                                  const ComponentIndex& index, const ProbabilityMap& prob,
                                  const BinaryMask& mask, const WalkConfig& cfg) {
  if (!mask.same_shape(prob) || !mask.same_shape(labels))
    throw std::invalid_argument("mask, labels and probability map must share dimensions");
  cfg.validate();
  if (!index.largest) throw std::invalid_argument("label map has no components");
  if (fragment_label == *index.largest)
    throw std::invalid_argument("fragment label is the trunk itself");
  if (fragment_label < 1 || fragment_label > index.count())
    throw std::invalid_argument("fragment label out of range");
  State state(mask, labels, index, skeletonize(mask));
  Attempt attempt = reconnect_in(fragment_label, *index.largest, state, prob, cfg);
  state.merge(attempt.record.stamped, attempt.bridges);
  return {state.mask(), std::move(attempt.record)};
}

ReconnectResult prw(const BinaryMask& mask, const ProbabilityMap& prob, const WalkConfig& cfg) {
  return run_pipeline(mask, prob, cfg, false);
}

ReconnectResult directional_walk_baseline(const BinaryMask& mask, const ProbabilityMap& prob,
                                          const WalkConfig& cfg) {
  WalkConfig geometric = cfg;
  geometric.alpha = 1.0;
  geometric.eps_nn = 0.0;
  return run_pipeline(mask, prob, geometric, true);
}

}  // namespace prwalk
