#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prwalk/metrics.hpp"
#include "prwalk/synth.hpp"

using namespace prwalk;

TEST(GroundTruth, DeterministicSingleTree) {
  for (std::uint64_t seed : {1, 2, 3, 17, 99}) {
    SynthConfig cfg;
    cfg.rng_seed = seed;
    const auto a = gen_ground_truth(cfg);
    EXPECT_EQ(a, gen_ground_truth(cfg));
    EXPECT_EQ(oracle::component_count(a), 1) << seed;
    EXPECT_GT(a.count(), 0u);
  }
  SynthConfig a, b;
  b.rng_seed = 2;
  EXPECT_NE(gen_ground_truth(a), gen_ground_truth(b));
}

TEST(GroundTruth, SingleThinCurve) {
  SynthConfig cfg;
  cfg.branch_count = 1;
  cfg.vessel_width = 1;
  const auto m = gen_ground_truth(cfg);
  EXPECT_EQ(oracle::component_count(m), 1);
  const auto strokes = trace_strokes(cfg);
  ASSERT_EQ(strokes.size(), 1u);
  std::set<std::pair<int, int>> line;
  for (const auto& p : strokes[0].centerline) line.insert({p.x, p.y});
  EXPECT_EQ(m.count(), line.size());
  for (std::size_t i = 1; i < strokes[0].centerline.size(); ++i) {
    const auto& p = strokes[0].centerline[i - 1];
    const auto& q = strokes[0].centerline[i];
    EXPECT_LE(std::max(std::abs(p.x - q.x), std::abs(p.y - q.y)), 1);
  }
}

TEST(Gaps, NoGapsIsIdentity) {
  SynthConfig cfg;
  cfg.gap_count = 0;
  const auto truth = gen_ground_truth(cfg);
  const auto b = inject_gaps(truth, cfg);
  EXPECT_EQ(b.broken, truth);
  EXPECT_TRUE(b.gaps.empty());
}

TEST(Gaps, OneCutSplitsACurve) {
  SynthConfig cfg;
  cfg.branch_count = 1;
  cfg.gap_count = 1;
  const auto truth = gen_ground_truth(cfg);
  const auto b = inject_gaps(truth, cfg);
  EXPECT_EQ(oracle::component_count(b.broken), 2);
}

TEST(Gaps, PartitionTheTruth) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    SynthConfig cfg;
    cfg.rng_seed = seed;
    cfg.gap_count = 1 + static_cast<int>(seed % 4);
    const auto truth = gen_ground_truth(cfg);
    BrokenVessels b;
    try {
      b = inject_gaps(truth, cfg);
    } catch (const SynthConfigError&) {
      continue;
    }
    ASSERT_EQ(static_cast<int>(b.gaps.size()), cfg.gap_count);
    EXPECT_EQ(oracle::component_count(b.broken), 1 + cfg.gap_count);
    std::vector<std::uint8_t> rebuilt(b.broken.values().begin(), b.broken.values().end());
    for (const auto& g : b.gaps) {
      EXPECT_NEAR(static_cast<double>(g.centerline.size()), cfg.gap_length, cfg.vessel_width);
      for (const auto& p : g.removed) {
        EXPECT_TRUE(truth.test(p));
        EXPECT_FALSE(b.broken.test(p));
        EXPECT_EQ(rebuilt[truth.index(p.x, p.y)], 0);  // removed sets are disjoint
        rebuilt[truth.index(p.x, p.y)] = 1;
      }
      EXPECT_TRUE(b.broken.test(g.endpoint_a) || truth.test(g.endpoint_a));
    }
    EXPECT_EQ(BinaryMask(truth.width(), truth.height(), rebuilt), truth);
  }
}

TEST(Gaps, TooManyGapsIsAConfigError) {
  SynthConfig cfg;
  cfg.image_side = 40;
  cfg.branch_count = 1;
  cfg.gap_count = 8;
  cfg.gap_length = 20;
  EXPECT_THROW(make_fixture(cfg), SynthConfigError);
  EXPECT_THROW(inject_gaps(BinaryMask(10, 10), SynthConfig{}), SynthConfigError);
}

TEST(Probability, NoiselessUnblurredHasThreeLevels) {
  SynthConfig cfg;
  cfg.blur_radius = 0;
  const auto f = make_fixture(cfg);
  std::set<double> levels(f.probability.values().begin(), f.probability.values().end());
  EXPECT_EQ(levels, (std::set<double>{0.0, cfg.ridge_prob, cfg.vessel_prob}));
  for (std::size_t i = 0; i < f.truth.size(); ++i) {
    const double v = f.probability.values()[i];
    if (f.broken.values()[i]) EXPECT_EQ(v, cfg.vessel_prob);
    else if (f.truth.values()[i]) EXPECT_EQ(v, cfg.ridge_prob);
    else EXPECT_EQ(v, 0.0);
  }
}

TEST(Probability, OtsuLosesTheRidge) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthConfig cfg;
    cfg.rng_seed = seed;
    cfg.blur_radius = 0;
    const auto f = make_fixture(cfg);
    const double t = otsu_threshold(f.probability);
    EXPECT_GT(t, cfg.ridge_prob);
    EXPECT_EQ(binarize(f.probability, t), f.broken);
    EXPECT_GE(cfg.ridge_prob, 0.1);  // above the walker's default confidence floor
  }
}

TEST(Probability, NoiseAndBlurStayInRange) {
  SynthConfig cfg;
  cfg.noise_amplitude = 0.25;
  cfg.rng_seed = 4;
  const auto f = make_fixture(cfg);
  EXPECT_EQ(f.probability, make_fixture(cfg).probability);
  bool saw_noise = false;
  for (std::size_t i = 0; i < f.truth.size(); ++i) {
    const double v = f.probability.values()[i];
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    if (!f.truth.values()[i]) {
      EXPECT_LE(v, cfg.noise_amplitude);
      saw_noise = saw_noise || v > 0.0;
    }
  }
  EXPECT_TRUE(saw_noise);
  EXPECT_THROW(simulate_probability(f.truth, BinaryMask(3, 3), cfg), std::invalid_argument);
}

TEST(Config, Validation) {
  SynthConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.gap_length = cfg.image_side;
  EXPECT_THROW(cfg.validate(), SynthConfigError);
  cfg = {};
  cfg.ridge_prob = 1.5;
  EXPECT_THROW(cfg.validate(), SynthConfigError);
  cfg = {};
  cfg.branch_count = 0;
  EXPECT_THROW(cfg.validate(), SynthConfigError);
}

TEST(CounterRng, StreamsAreStableAndIndependent) {
  CounterRng a(5, 0), b(5, 0), c(5, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  CounterRng u(9, 3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    const int k = u.uniform_int(-2, 2);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 2);
  }
}
