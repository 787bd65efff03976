#include "prwalk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prwalk/components.hpp"

namespace prwalk {

namespace {

enum Stream : std::uint64_t { kStrokes = 1, kGaps = 2, kNoise = 3 };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

void append_line(std::vector<Pixel>& out, Pixel from, Pixel to) {
  int dx = std::abs(to.x - from.x), sx = from.x < to.x ? 1 : -1;
  int dy = -std::abs(to.y - from.y), sy = from.y < to.y ? 1 : -1;
  int err = dx + dy;
  Pixel p = from;
  while (true) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
    if (p == to) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      p.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      p.y += sy;
    }
  }
}

std::vector<Pixel> rasterize_bezier(Vec2 p0, Vec2 control, Vec2 p2, int lo, int hi) {
  const double chord = norm(p2 - p0) + norm(control - p0) + norm(p2 - control);
  const int samples = static_cast<int>(std::ceil(chord)) + 8;
  std::vector<Pixel> out;
  Pixel prev{-1, -1};
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double u = 1.0 - t;
    const Vec2 q = (u * u) * p0 + (2.0 * u * t) * control + (t * t) * p2;
    const Pixel p{std::clamp(static_cast<int>(std::lround(q.x)), lo, hi),
                  std::clamp(static_cast<int>(std::lround(q.y)), lo, hi)};
    if (i == 0) out.push_back(p);
    else if (!(p == prev)) append_line(out, prev, p);
    prev = p;
  }
  // A clamped curve can fold back onto itself; keep first visits only.
  std::vector<Pixel> unique;
  for (const auto& p : out)
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(p);
  return unique;
}

int chebyshev(const Pixel& a, const Pixel& b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

bool clear_of(const std::vector<Pixel>& pixels, std::size_t from, const std::vector<Stroke>& strokes,
              int skip, int clearance) {
  for (std::size_t i = from; i < pixels.size(); ++i)
    for (int s = 0; s < static_cast<int>(strokes.size()); ++s) {
      if (s == skip) continue;
      for (const auto& q : strokes[s].centerline)
        if (chebyshev(pixels[i], q) < clearance) return false;
    }
  return true;
}

struct Brush {
  int lo;
  int hi;
  explicit Brush(int width) : lo(-(width - 1) / 2), hi(width / 2) {}
};

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& what) { throw SynthConfigError(what); };
  if (image_side < 16) fail("image_side must be at least 16");
  if (branch_count < 1) fail("branch_count must be at least 1");
  if (vessel_width < 1 || vessel_width * 8 > image_side) fail("vessel_width out of range");
  if (gap_count < 0) fail("gap_count must be nonnegative");
  if (gap_length < 1 || gap_length >= image_side) fail("gap_length must lie in [1, image_side)");
  if (!(ridge_prob >= 0.0 && ridge_prob <= 1.0)) fail("ridge_prob must lie in [0,1]");
  if (!(vessel_prob >= 0.8 && vessel_prob <= 1.0)) fail("vessel_prob must lie in [0.8,1]");
  if (!(noise_amplitude >= 0.0 && noise_amplitude <= 1.0)) fail("noise_amplitude must lie in [0,1]");
  if (blur_radius < 0) fail("blur_radius must be nonnegative");
  if (!(curvature >= 0.0 && curvature <= 1.0)) fail("curvature must lie in [0,1]");
}

std::vector<Stroke> trace_strokes(const SynthConfig& cfg) {
  cfg.validate();
  CounterRng rng(cfg.rng_seed, kStrokes);
  const double side = cfg.image_side;
  const int lo = std::max(4, cfg.vessel_width + 2);
  const int hi = cfg.image_side - 1 - lo;

  std::vector<Stroke> strokes;
  {
    const Vec2 p0{static_cast<double>(lo), rng.uniform(0.3, 0.7) * side};
    const Vec2 p2{static_cast<double>(hi), rng.uniform(0.3, 0.7) * side};
    const Vec2 chord = p2 - p0;
    const Vec2 normal{-chord.y / norm(chord), chord.x / norm(chord)};
    const Vec2 control = 0.5 * (p0 + p2) + (cfg.curvature * norm(chord) * rng.uniform(-0.5, 0.5)) * normal;
    strokes.push_back({rasterize_bezier(p0, control, p2, lo, hi), -1});
  }

  const int clearance = 2 * cfg.vessel_width + 6;
  for (int k = 1; k < cfg.branch_count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < 256 && !placed; ++attempt) {
      const int parent = rng.uniform_int(0, static_cast<int>(strokes.size()) - 1);
      const auto& pc = strokes[parent].centerline;
      const int n = static_cast<int>(pc.size());
      if (n < 20) continue;
      const int idx = rng.uniform_int(n / 5, n - 1 - n / 5);
      const Pixel anchor = pc[idx];
      const Pixel before = pc[std::max(0, idx - 4)];
      const Pixel after = pc[std::min(n - 1, idx + 4)];
      Vec2 tangent{static_cast<double>(after.x - before.x), static_cast<double>(after.y - before.y)};
      if (norm(tangent) == 0.0) continue;
      tangent = (1.0 / norm(tangent)) * tangent;
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      const double turn = rng.uniform(-0.6, 0.6);
      const Vec2 normal{-tangent.y * sign, tangent.x * sign};
      const Vec2 dir{normal.x * std::cos(turn) - normal.y * std::sin(turn),
                     normal.x * std::sin(turn) + normal.y * std::cos(turn)};
      const double length = rng.uniform(0.25, 0.45) * side;
      const Vec2 p0{static_cast<double>(anchor.x), static_cast<double>(anchor.y)};
      const Vec2 p2 = p0 + length * dir;
      if (p2.x < lo || p2.y < lo || p2.x > hi || p2.y > hi) continue;
      const Vec2 bend{-dir.y, dir.x};
      const Vec2 control = 0.5 * (p0 + p2) + (cfg.curvature * length * rng.uniform(-0.5, 0.5)) * bend;
      auto centerline = rasterize_bezier(p0, control, p2, lo, hi);
      if (static_cast<int>(centerline.size()) <= 2 * clearance) continue;
      if (!clear_of(centerline, static_cast<std::size_t>(2 * clearance), strokes, -1, clearance)) continue;
      strokes.push_back({std::move(centerline), parent});
      placed = true;
    }
    if (!placed)
      throw SynthConfigError("could not place branch " + std::to_string(k) + " in a " +
                             std::to_string(cfg.image_side) + " pixel image");
  }
  return strokes;
}

BinaryMask gen_ground_truth(const SynthConfig& cfg) {
  const auto strokes = trace_strokes(cfg);
  const Brush brush(cfg.vessel_width);
  const int n = cfg.image_side;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * n, 0);
  for (const auto& s : strokes)
    for (const auto& c : s.centerline)
      for (int dy = brush.lo; dy <= brush.hi; ++dy)
        for (int dx = brush.lo; dx <= brush.hi; ++dx) {
          const int x = c.x + dx, y = c.y + dy;
          if (x >= 0 && y >= 0 && x < n && y < n) bits[static_cast<std::size_t>(y) * n + x] = 1;
        }
  return BinaryMask(n, n, std::move(bits));
}

BrokenVessels inject_gaps(const BinaryMask& truth, const SynthConfig& cfg) {
  cfg.validate();
  if (truth.count() == 0) throw SynthConfigError("cannot inject gaps into an empty mask");
  BrokenVessels out{truth, {}};
  if (cfg.gap_count == 0) return out;

  const auto strokes = trace_strokes(cfg);
  CounterRng rng(cfg.rng_seed, kGaps);
  const Brush brush(cfg.vessel_width);
  const int length = cfg.gap_length;
  const int end_margin = 2 * cfg.vessel_width + 6;
  const int clearance = 2 * cfg.vessel_width + 3;
  const int base_components = label_components(truth).count();

  std::size_t total = 0;
  for (const auto& s : strokes) total += s.centerline.size();

  std::vector<std::uint8_t> bits(truth.values().begin(), truth.values().end());
  struct Run {
    int stroke;
    int start;
  };
  std::vector<Run> runs;

  for (int g = 0; g < cfg.gap_count; ++g) {
    bool placed = false;
    for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
      // Pick a centreline pixel uniformly over all strokes.
      auto pick = static_cast<std::size_t>(rng.next() % total);
      int s = 0;
      while (pick >= strokes[s].centerline.size()) pick -= strokes[s++].centerline.size();
      const auto& cl = strokes[s].centerline;
      const int n = static_cast<int>(cl.size());
      if (n < length + 2 * end_margin) continue;
      const int start = std::clamp(static_cast<int>(pick), end_margin, n - end_margin - length);

      bool overlaps = false;
      for (const auto& r : runs)
        if (r.stroke == s && std::abs(r.start - start) < length + 2 * end_margin) overlaps = true;
      if (overlaps) continue;

      const std::vector<Pixel> run(cl.begin() + start, cl.begin() + start + length);
      if (!clear_of(run, 0, strokes, s, clearance)) continue;

      std::vector<Pixel> removed;
      for (const auto& c : run)
        for (int dy = brush.lo; dy <= brush.hi; ++dy)
          for (int dx = brush.lo; dx <= brush.hi; ++dx) {
            const Pixel q{c.x + dx, c.y + dy};
            if (!truth.contains(q)) continue;
            auto& bit = bits[truth.index(q.x, q.y)];
            if (bit) {
              bit = 0;
              removed.push_back(q);
            }
          }
      const BinaryMask candidate(truth.width(), truth.height(), bits);
      if (label_components(candidate).count() != base_components + g + 1) {
        for (const auto& q : removed) bits[truth.index(q.x, q.y)] = 1;
        continue;
      }
      std::sort(removed.begin(), removed.end(), raster_less);
      GapRecord record;
      record.id = g;
      record.stroke = s;
      record.removed = std::move(removed);
      record.centerline = run;
      record.endpoint_a = cl[start - 1];
      record.endpoint_b = cl[start + length];
      out.gaps.push_back(std::move(record));
      runs.push_back({s, start});
      placed = true;
    }
    if (!placed)
      throw SynthConfigError("could not place gap " + std::to_string(g) + " of length " +
                             std::to_string(length));
  }
  out.broken = BinaryMask(truth.width(), truth.height(), std::move(bits));
  return out;
}

ProbabilityMap simulate_probability(const BinaryMask& truth, const BinaryMask& broken, const SynthConfig& cfg) {
  cfg.validate();
  if (!truth.same_shape(broken)) throw std::invalid_argument("truth and broken masks differ in size");
  const int w = truth.width();
  const int h = truth.height();
  CounterRng rng(cfg.rng_seed, kNoise);
  std::vector<double> raw(truth.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double noise = rng.uniform() * cfg.noise_amplitude;
    if (broken.values()[i]) raw[i] = cfg.vessel_prob;
    else if (truth.values()[i]) raw[i] = cfg.ridge_prob;
    else raw[i] = noise;
  }

  // The blur softens vessel cross-sections toward their edges; background
  // pixels keep their noise so no confidence halo surrounds a vessel.
  std::vector<double> out(raw.size());
  const int r = cfg.blur_radius;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!truth.values()[i]) {
        out[i] = std::clamp(raw[i], 0.0, 1.0);
        continue;
      }
      double sum = 0.0;
      int count = 0;
      for (int yy = std::max(0, y - r); yy <= std::min(h - 1, y + r); ++yy)
        for (int xx = std::max(0, x - r); xx <= std::min(w - 1, x + r); ++xx) {
          sum += raw[static_cast<std::size_t>(yy) * w + xx];
          ++count;
        }
      out[i] = std::clamp(sum / count, 0.0, 1.0);
    }
  }
  return ProbabilityMap(w, h, std::move(out));
}

SynthFixture make_fixture(const SynthConfig& cfg) {
  SynthFixture f;
  f.config = cfg;
  f.truth = gen_ground_truth(cfg);
  auto broken = inject_gaps(f.truth, cfg);
  f.broken = std::move(broken.broken);
  f.gaps = std::move(broken.gaps);
  f.probability = simulate_probability(f.truth, f.broken, cfg);
  return f;
}

}  // namespace prwalk
