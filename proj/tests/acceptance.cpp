// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "prwalk/components.hpp"
#include "prwalk/ddb_shape.hpp"
#include "prwalk/dice.hpp"
#include "prwalk/metrics.hpp"
#include "prwalk/reconnect.hpp"
#include "prwalk/report.hpp"
#include "prwalk/sweep.hpp"
#include "prwalk/synth.hpp"

using namespace prwalk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

Verdict gradient_fidelity() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto p = oracle::random_prob(rng, 16, 16);
    const auto g = oracle::random_mask(rng, 16, 16, 0.3);
    const auto grad = dice_grad(p, g);
    std::vector<long double> pv(p.values().begin(), p.values().end());
    const std::vector<int> gv(g.values().begin(), g.values().end());
    const long double h = 1e-5L;
    for (std::size_t i = 0; i < pv.size(); ++i) {
      const long double keep = pv[i];
      pv[i] = keep + h;
      const long double up = oracle::dice_loss(pv, gv, 1.0L);
      pv[i] = keep - h;
      const long double down = oracle::dice_loss(pv, gv, 1.0L);
      pv[i] = keep;
      const double numeric = static_cast<double>((up - down) / (2 * h));
      const double analytic = grad.values()[i];
      worst = std::max(worst, std::abs(analytic - numeric) /
                                  std::max({std::abs(analytic), std::abs(numeric), 1e-300}));
    }
  }
  const double secs = seconds_since(t0);
  v.require(worst < 1e-6, "max relative error " + std::to_string(worst));
  v.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "max rel err %.3g over 50 grids, %.2f s", worst, secs);
  if (v.pass) v.detail = buf;
  return v;
}

Verdict loss_exactness() {
  Verdict v;
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto g = oracle::random_mask(rng, 16, 16, 0.4);
    const ProbabilityMap p(16, 16, std::vector<double>(g.values().begin(), g.values().end()));
    worst = std::max(worst, std::abs(dice_loss(p, g)));
  }
  v.require(worst <= 1e-12, "dice_loss(p=g) = " + std::to_string(worst));
  const BinaryMask one(1, 1, true);
  v.require(dice_loss(ProbabilityMap(1, 1, 1.0), one) == 0.0, "p=g=1 single pixel is not 0");
  v.require(dice_loss(ProbabilityMap(1, 1, 1.0), BinaryMask(1, 1, false)) == 0.5,
            "K=1 p=1 g=0 is not 0.5");
  v.require(dice_loss(ProbabilityMap(2, 1, 0.5), BinaryMask(2, 1, std::vector<std::uint8_t>{1, 0})) == 0.2,
            "K=2 example is not 0.2");
  if (v.pass) v.detail = "p=g gives 0 on 20 grids; 0, 0.5 and 0.2 examples exact";
  return v;
}

Verdict receptive_fields() {
  Verdict v;
  const auto t0 = Clock::now();
  struct Case {
    const char* name;
    BlockTopology topology;
    int expected;
  };
  const Case cases[] = {{"(1,2,5)", standard_ddb(BlockMode::cascade, 1), 17},
                        {"four blocks", standard_ddb(BlockMode::cascade, 4), 65},
                        {"dense x4", standard_ddb(BlockMode::dense, 4), 65},
                        {"parallel", standard_ddb(BlockMode::parallel, 1), 11}};
  std::string got;
  for (const auto& c : cases) {
    const int rf = receptive_field(c.topology);
    const int support = impulse_response_support(c.topology, rf + 6);
    v.require(rf == c.expected && support == c.expected,
              std::string(c.name) + ": rf " + std::to_string(rf) + ", impulse " + std::to_string(support));
    got += std::string(got.empty() ? "" : ", ") + c.name + "=" + std::to_string(rf);
  }
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "took " + std::to_string(secs) + " s");
  if (v.pass) v.detail = got;
  return v;
}

Verdict metric_oracles() {
  Verdict v;
  std::mt19937_64 rng(1004);
  double worst_auc = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto truth = oracle::random_mask(rng, 16, 16, 0.35);
    const auto prob = k % 2 ? oracle::random_prob(rng, 16, 16) : oracle::random_levels(rng, 16, 16, 8);
    const auto a = auc(prob, truth);
    v.require(a.has_value(), "auc absent on a two-class instance");
    if (a) worst_auc = std::max(worst_auc, std::abs(*a - oracle::pairwise_auc(prob, truth)));
  }
  v.require(worst_auc <= 1e-9, "auc differs from pairwise oracle by " + std::to_string(worst_auc));
  for (int k = 0; k < 20; ++k) {
    const auto prob = k % 2 ? oracle::random_prob(rng, 32, 32) : oracle::random_levels(rng, 32, 32, 3 + k);
    const int t = oracle::otsu_bin_scan(prob);
    const double threshold = otsu_threshold(prob);
    v.require(otsu_bin(threshold - 0.25 / 255) == t && otsu_bin(threshold + 0.25 / 255) == t + 1,
              "otsu bin differs from exhaustive scan on map " + std::to_string(k));
  }
  for (int k = 0; k < 20; ++k) {
    const auto m = oracle::random_mask(rng, 64, 64, 0.3 + 0.02 * k);
    const auto got = label_components(m);
    const auto want = oracle::flood_fill(m, 8);
    v.require(got.count() == want.count &&
                  std::equal(got.values().begin(), got.values().end(), want.label.begin()),
              "labels differ from flood fill on mask " + std::to_string(k));
  }
  if (v.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "auc max diff %.2g; otsu 20/20 exact; labels 20/20 exact", worst_auc);
    v.detail = buf;
  }
  return v;
}

Verdict alpha_zero() {
  Verdict v;
  WalkConfig cfg;
  cfg.alpha = 0.0;
  std::size_t fixtures = 0, rois = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig s;
    s.rng_seed = seed;
    s.noise_amplitude = seed % 2 ? 0.0 : 0.2;
    SynthFixture f;
    try {
      f = make_fixture(s);
    } catch (const SynthConfigError&) {
      continue;
    }
    ++fixtures;
    const auto r = prw(f.broken, f.probability, cfg);
    rois += r.report.rois.size();
    const double err = err_metric(roi_error_records(r.report.rois, f.truth));
    v.require(r.report.stamped_total() == 0 && r.mask == f.broken && err == 0.0,
              "seed " + std::to_string(seed) + " stamped " + std::to_string(r.report.stamped_total()));
  }
  v.require(fixtures >= 15 && rois > 0, "too few fixtures exercised");
  if (v.pass) v.detail = std::to_string(fixtures) + " fixtures, " + std::to_string(rois) + " ROIs, 0 stamped, Err 0";
  return v;
}

Verdict monotonicity() {
  Verdict v;
  std::size_t fixtures = 0, walkers = 0;
  for (std::uint64_t seed = 1; fixtures < 100 && seed < 200; ++seed) {
    SynthConfig s;
    s.rng_seed = 5000 + seed;
    s.noise_amplitude = (seed % 3) * 0.15;
    s.gap_length = 8 + static_cast<int>(seed % 5) * 8;
    s.curvature = 0.1 + 0.1 * static_cast<double>(seed % 6);
    SynthFixture f;
    try {
      f = make_fixture(s);
    } catch (const SynthConfigError&) {
      continue;
    }
    ++fixtures;
    WalkConfig cfg;
    cfg.roi_side = 40 + static_cast<int>(seed % 4) * 30;
    cfg.reverse_walkers = seed % 7 == 0;
    const auto a = prw(f.broken, f.probability, cfg);
    const auto b = prw(f.broken, f.probability, cfg);
    const std::string id = "seed " + std::to_string(s.rng_seed);
    v.require(f.broken.subset_of(a.mask), id + ": output is not a superset");
    v.require(oracle::component_count(a.mask) <= oracle::component_count(f.broken),
              id + ": component count increased");
    v.require(a.mask == b.mask && to_json(a.report) == to_json(b.report), id + ": runs differ");
    for (const auto& rec : a.report.rois) {
      walkers += rec.walkers;
      const std::size_t area = rec.roi ? rec.roi->area() : 0;
      v.require(rec.path_length <= static_cast<std::size_t>(rec.walkers) *
                                       std::min<std::size_t>(cfg.step_budget(), area),
                id + ": walker path exceeds its bound");
    }
  }
  v.require(fixtures == 100, "only " + std::to_string(fixtures) + " fixtures generated");
  if (v.pass)
    v.detail = "100 fixtures, " + std::to_string(walkers) + " walkers; superset, non-increasing, bounded, bit-identical";
  return v;
}

Verdict beats_baseline() {
  Verdict v;
  const auto t0 = Clock::now();
  std::vector<RoiErrorRecord> prw_recs, base_recs;
  int fixtures = 0;
  for (std::uint64_t seed = 1; fixtures < 20 && seed < 60; ++seed) {
    SynthConfig s;
    s.rng_seed = seed;
    s.curvature = 0.6;
    s.gap_length = 20;
    s.noise_amplitude = 0.0;
    SynthFixture f;
    try {
      f = make_fixture(s);
    } catch (const SynthConfigError&) {
      continue;
    }
    ++fixtures;
    const auto a = prw(f.broken, f.probability);
    const auto b = directional_walk_baseline(f.broken, f.probability);
    for (auto r : roi_error_records(a.report.rois, f.truth)) prw_recs.push_back(r);
    for (auto r : roi_error_records(b.report.rois, f.truth)) base_recs.push_back(r);
  }
  const double e_prw = err_metric(prw_recs), e_base = err_metric(base_recs);
  const double secs = seconds_since(t0);
  v.require(fixtures == 20, "only " + std::to_string(fixtures) + " fixtures");
  v.require(!prw_recs.empty(), "PRW stamped nothing");
  v.require(e_prw < e_base, "Err(PRW) not below Err(baseline)");
  v.require(e_prw <= 0.05, "Err(PRW) = " + std::to_string(e_prw));
  v.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "Err PRW %.4f vs baseline %.4f over %zu/%zu ROIs, %.2f s", e_prw, e_base,
                prw_recs.size(), base_recs.size(), secs);
  if (v.pass) v.detail = buf;
  else v.detail += std::string(" (") + buf + ")";
  return v;
}

Verdict roi_sweep() {
  Verdict v;
  std::vector<EvalFixture> fixtures;
  const int gaps[] = {12, 18, 24, 30, 40};
  for (int s = 1; fixtures.size() < 20 && s < 60; ++s) {
    SynthConfig cfg;
    cfg.rng_seed = 100 + s;
    cfg.gap_length = gaps[s % 5];
    try {
      fixtures.push_back(to_eval_fixture(make_fixture(cfg), std::to_string(s)));
    } catch (const SynthConfigError&) {
    }
  }
  const auto values = default_sweep_values(SweepParameter::roi_size);
  const auto rows = run_sweep(fixtures, SweepParameter::roi_size, values, {}, 9);
  std::string accs, times;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%.0f:%.5f", i ? " " : "", r.value, r.acc.value_or(-1));
    accs += buf;
    std::snprintf(buf, sizeof buf, "%s%.0f:%.4f", i ? " " : "", r.value, r.seconds);
    times += buf;
    if (i == 0) continue;
    const auto& prev = rows[i - 1];
    v.require(r.acc >= prev.acc, "Acc drops at l=" + std::to_string(static_cast<int>(r.value)));
    v.require(r.seconds > prev.seconds, "time not increasing at l=" + std::to_string(static_cast<int>(r.value)));
    if (r.value > 100) v.require(r.acc == prev.acc, "Acc changes at l=" + std::to_string(static_cast<int>(r.value)));
  }
  v.require(fixtures.size() == 20, "only " + std::to_string(fixtures.size()) + " fixtures");
  v.detail = (v.pass ? "" : v.detail + "; ") + "acc " + accs + "; seconds " + times;
  return v;
}

Verdict skip_rule() {
  Verdict v;
  std::size_t skipped = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthConfig s;
    s.rng_seed = seed;
    s.image_side = 256;
    s.branch_count = 1;
    s.gap_count = 1;
    const auto f = make_fixture(s);
    // a 5x5 blob whose nearest vessel pixel is more than roi_side away
    const auto dist = [&](const Pixel& p) {
      double best = 1e9;
      for (const auto& q : f.broken.foreground()) best = std::min(best, euclidean_distance(p, q));
      return best;
    };
    Pixel corner{-1, -1};
    for (const Pixel c : {Pixel{4, 4}, Pixel{251, 4}, Pixel{4, 251}, Pixel{251, 251}})
      if (dist(c) > 60 && (corner.x < 0 || dist(c) > dist(corner))) corner = c;
    if (corner.x < 0) continue;
    std::vector<std::uint8_t> m(f.broken.values().begin(), f.broken.values().end());
    std::vector<double> p(f.probability.values().begin(), f.probability.values().end());
    for (int y = corner.y - 2; y <= corner.y + 2; ++y)
      for (int x = corner.x - 2; x <= corner.x + 2; ++x) {
        m[y * 256 + x] = 1;
        p[y * 256 + x] = 0.9;
      }
    const BinaryMask mask(256, 256, m);
    const ProbabilityMap prob(256, 256, p);
    WalkConfig cfg;
    cfg.roi_side = static_cast<int>(dist(corner)) - 10;
    const auto r = prw(mask, prob, cfg);
    bool saw_far = false;
    for (const auto& rec : r.report.rois) {
      const bool far = rec.pair.d_ab > cfg.roi_side;
      if (far) {
        ++skipped;
        v.require(rec.status == RoiStatus::skipped && rec.stamped.empty() && !rec.roi,
                  "seed " + std::to_string(seed) + ": far fragment not skipped cleanly");
      }
      if (rec.status == RoiStatus::skipped)
        v.require(far, "seed " + std::to_string(seed) + ": near fragment reported skipped");
      saw_far |= far && std::abs(rec.pair.a.x - corner.x) <= 2 && std::abs(rec.pair.a.y - corner.y) <= 2;
    }
    v.require(saw_far, "seed " + std::to_string(seed) + ": blob never attempted");
    for (int y = corner.y - 4; y <= corner.y + 4; ++y)
      for (int x = corner.x - 4; x <= corner.x + 4; ++x)
        if (x >= 0 && y >= 0 && x < 256 && y < 256)
          v.require(r.mask.test(x, y) == mask.test(x, y), "pixels changed next to the far blob");
  }
  v.require(skipped >= 5, "only " + std::to_string(skipped) + " far fragments exercised");
  if (v.pass) v.detail = std::to_string(skipped) + " far fragments skipped with no stamped pixels";
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"gradient fidelity", gradient_fidelity},
      {"loss exactness", loss_exactness},
      {"receptive-field oracle equality", receptive_fields},
      {"metric oracles", metric_oracles},
      {"alpha=0 degenerate law", alpha_zero},
      {"reconnection monotonicity suite", monotonicity},
      {"PRW beats the geometry-only baseline", beats_baseline},
      {"ROI-size sweep shape", roi_sweep},
      {"skip rule", skip_rule},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.pass;
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", n, name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
