#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prwalk/dice.hpp"
#include "prwalk/ddb_shape.hpp"
#include "prwalk/metrics.hpp"
#include "prwalk/raster_io.hpp"
#include "prwalk/reconnect.hpp"
#include "prwalk/report.hpp"
#include "prwalk/sweep.hpp"
#include "prwalk/synth.hpp"

using namespace prwalk;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

json manifest(const std::string& subcommand, const json& inputs, const json& config,
              Clock::time_point started) {
  return {{"subcommand", subcommand},
          {"inputs", inputs},
          {"config", config},
          {"version", PRWALK_VERSION},
          {"seconds", std::chrono::duration<double>(Clock::now() - started).count()}};
}

void emit(json report) { std::cout << report.dump(2) << "\n"; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct WalkFlags {
  double alpha = 0.2;
  int roi_size = 100;
  double eps_nn = 0.1;
  bool reverse = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "directional weight")->capture_default_str();
    cmd->add_option("--roi-size", roi_size, "ROI side in pixels")->capture_default_str();
    cmd->add_option("--eps-nn", eps_nn, "confidence floor")->capture_default_str();
    cmd->add_flag("--reverse-walkers", reverse, "walk back from the trunk when forward walkers fail");
  }
  WalkConfig config() const {
    WalkConfig cfg;
    cfg.alpha = alpha;
    cfg.roi_side = roi_size;
    cfg.eps_nn = eps_nn;
    cfg.reverse_walkers = reverse;
    cfg.validate();
    return cfg;
  }
};

void require_same_shape(const Grid<std::uint8_t>& a, int w, int h, const std::string& what) {
  if (!a.same_shape(w, h))
    throw UsageError(what + " is " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                     ", expected " + std::to_string(w) + "x" + std::to_string(h));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability regularized walk: vessel reconnection and evaluation tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PRWALK_VERSION));

  // reconnect
  auto* rc = app.add_subcommand("reconnect", "reconnect a broken vessel mask");
  std::string rc_prob, rc_mask, rc_out;
  bool rc_baseline = false;
  WalkFlags rc_flags;
  rc->add_option("prob", rc_prob, "probability map (PGM/PNG)")->required();
  rc->add_option("mask", rc_mask, "binary mask (PGM/PNG)")->required();
  rc->add_option("out", rc_out, "reconnected mask output path")->required();
  rc->add_flag("--baseline", rc_baseline, "directional walk without the probability term");
  rc_flags.attach(rc);

  // eval
  auto* ev = app.add_subcommand("eval", "score a mask against ground truth");
  std::string ev_pred, ev_truth, ev_prob, ev_rois;
  ev->add_option("pred", ev_pred, "predicted mask")->required();
  ev->add_option("truth", ev_truth, "ground-truth mask")->required();
  ev->add_option("--prob", ev_prob, "probability map, enables AUC");
  ev->add_option("--rois", ev_rois, "reconnect report JSON, enables Err");

  // sweep
  auto* sw = app.add_subcommand("sweep", "sweep roi-size or alpha over a fixture directory");
  std::string sw_dir, sw_param = "roi-size";
  int sw_repeats = 1;
  WalkFlags sw_flags;
  sw->add_option("fixtures", sw_dir, "directory written by `synth`")->required();
  sw->add_option("--parameter", sw_param, "roi-size or alpha")
      ->check(CLI::IsMember({"roi-size", "alpha"}))
      ->capture_default_str();
  sw->add_option("--repeats", sw_repeats, "timing repeats; each row keeps its fastest")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sw_flags.attach(sw);

  // synth
  auto* sy = app.add_subcommand("synth", "generate seeded synthetic fixtures");
  std::string sy_dir;
  int sy_count = 1;
  SynthConfig sy_cfg;
  sy->add_option("out_dir", sy_dir, "output directory")->required();
  sy->add_option("--count", sy_count, "number of fixtures")->check(CLI::PositiveNumber)->capture_default_str();
  sy->add_option("--seed", sy_cfg.rng_seed, "seed of the first fixture; later ones count up")->capture_default_str();
  sy->add_option("--side", sy_cfg.image_side)->capture_default_str();
  sy->add_option("--branches", sy_cfg.branch_count)->capture_default_str();
  sy->add_option("--width", sy_cfg.vessel_width)->capture_default_str();
  sy->add_option("--gaps", sy_cfg.gap_count)->capture_default_str();
  sy->add_option("--gap-length", sy_cfg.gap_length)->capture_default_str();
  sy->add_option("--ridge-prob", sy_cfg.ridge_prob)->capture_default_str();
  sy->add_option("--vessel-prob", sy_cfg.vessel_prob)->capture_default_str();
  sy->add_option("--noise", sy_cfg.noise_amplitude)->capture_default_str();
  sy->add_option("--blur", sy_cfg.blur_radius)->capture_default_str();
  sy->add_option("--curvature", sy_cfg.curvature)->capture_default_str();

  // dice-check
  auto* dc = app.add_subcommand("dice-check", "compare the Dice gradient with finite differences");
  int dc_count = 50, dc_side = 16;
  std::uint64_t dc_seed = 1;
  double dc_h = 1e-5, dc_tol = 1e-6, dc_eps = 1.0;
  dc->add_option("--count", dc_count)->check(CLI::PositiveNumber)->capture_default_str();
  dc->add_option("--side", dc_side)->check(CLI::PositiveNumber)->capture_default_str();
  dc->add_option("--seed", dc_seed)->capture_default_str();
  dc->add_option("--step", dc_h, "finite-difference step")->capture_default_str();
  dc->add_option("--tolerance", dc_tol, "largest accepted relative error")->capture_default_str();
  dc->add_option("--epsilon", dc_eps, "Dice smoothing")->capture_default_str();

  // ddb-rf
  auto* rf = app.add_subcommand("ddb-rf", "receptive field and channel growth of a dilated block");
  std::string rf_mode = "dense";
  int rf_repeats = 1, rf_in = 64, rf_growth = 32;
  std::vector<int> rf_rates;
  bool rf_impulse = false;
  rf->add_option("--mode", rf_mode)->check(CLI::IsMember({"cascade", "parallel", "dense"}))->capture_default_str();
  rf->add_option("--repeats", rf_repeats)->check(CLI::PositiveNumber)->capture_default_str();
  rf->add_option("--rates", rf_rates, "dilation rates of the 3x3 layers (default 1 2 5)");
  rf->add_option("--in-channels", rf_in)->capture_default_str();
  rf->add_option("--growth", rf_growth, "output channels per layer")->capture_default_str();
  rf->add_flag("--impulse", rf_impulse, "also measure the support of an impulse response");

  // otsu
  auto* ot = app.add_subcommand("otsu", "binarize a probability map at its Otsu threshold");
  std::string ot_prob, ot_out;
  ot->add_option("prob", ot_prob, "probability map")->required();
  ot->add_option("out", ot_out, "mask output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto started = Clock::now();
  try {
    if (*rc) {
      const WalkConfig cfg = rc_flags.config();
      const auto prob = load_probability(rc_prob);
      const auto mask = load_mask(rc_mask);
      require_same_shape(mask, prob.width(), prob.height(), "mask");
      const auto result = rc_baseline ? directional_walk_baseline(mask, prob, cfg) : prw(mask, prob, cfg);
      save_mask(rc_out, result.mask);
      json report = to_json(result.report);
      report["manifest"] = manifest("reconnect", {{"prob", rc_prob}, {"mask", rc_mask}, {"out", rc_out}},
                                    to_json(cfg), started);
      emit(std::move(report));
      return kOk;
    }

    if (*ev) {
      const auto pred = load_mask(ev_pred);
      const auto truth = load_mask(ev_truth);
      require_same_shape(pred, truth.width(), truth.height(), "prediction");
      EvalReport er;
      er.confusion = confusion(pred, truth);
      er.scores = acc_sen_spe(er.confusion);
      if (!ev_prob.empty()) {
        const auto prob = load_probability(ev_prob);
        if (!prob.same_shape(truth)) throw UsageError("probability map does not match the truth mask");
        er.auc = auc(prob, truth);
      }
      if (!ev_rois.empty()) {
        const auto records = roi_records_from_json(read_json(ev_rois));
        er.rois = roi_error_records(records, truth);
        er.err = err_metric(er.rois);
      }
      json report = to_json(er);
      report["manifest"] = manifest("eval",
                                    {{"pred", ev_pred}, {"truth", ev_truth},
                                     {"prob", ev_prob.empty() ? json(nullptr) : json(ev_prob)},
                                     {"rois", ev_rois.empty() ? json(nullptr) : json(ev_rois)}},
                                    json::object(), started);
      emit(std::move(report));
      return kOk;
    }

    if (*sw) {
      const WalkConfig base = sw_flags.config();
      std::vector<EvalFixture> fixtures;
      try {
        fixtures = load_fixture_dir(sw_dir);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      const auto parameter = sw_param == "alpha" ? SweepParameter::alpha : SweepParameter::roi_size;
      const auto values = default_sweep_values(parameter);
      const auto rows = run_sweep(fixtures, parameter, values, base, sw_repeats);
      json table = json::array();
      for (const auto& r : rows) {
        table.push_back({{"value", r.value},
                         {"acc", r.acc ? json(*r.acc) : json(nullptr)},
                         {"sen", r.sen ? json(*r.sen) : json(nullptr)},
                         {"err", r.err},
                         {"seconds", r.seconds},
                         {"rois", r.rois},
                         {"connected", r.connected},
                         {"stamped", r.stamped}});
      }
      json config = to_json(base);
      config["parameter"] = sw_param;
      config["repeats"] = sw_repeats;
      emit({{"schema", kSweepSchema},
            {"parameter", sw_param},
            {"fixtures", fixtures.size()},
            {"rows", std::move(table)},
            {"manifest", manifest("sweep", {{"fixtures", sw_dir}}, config, started)}});
      return kOk;
    }

    if (*sy) {
      try {
        sy_cfg.validate();
      } catch (const SynthConfigError& e) {
        throw UsageError(e.what());
      }
      std::vector<SynthFixture> fixtures;
      json seeds = json::array();
      for (int i = 0; i < sy_count; ++i) {
        SynthConfig c = sy_cfg;
        c.rng_seed = sy_cfg.rng_seed + static_cast<std::uint64_t>(i);
        fixtures.push_back(make_fixture(c));
        seeds.push_back(c.rng_seed);
      }
      save_fixture_dir(sy_dir, fixtures);
      json gaps = json::array();
      for (const auto& f : fixtures) gaps.push_back(f.gaps.size());
      json config = to_json(sy_cfg);
      config["seeds"] = seeds;
      emit({{"schema", kFixturesSchema},
            {"directory", sy_dir},
            {"fixtures", fixtures.size()},
            {"gaps_per_fixture", std::move(gaps)},
            {"manifest", manifest("synth", json::object(), config, started)}});
      return kOk;
    }

    if (*dc) {
      CounterRng rng(dc_seed, 0);
      const auto n = static_cast<std::size_t>(dc_side) * static_cast<std::size_t>(dc_side);
      double worst_rel = 0.0, worst_abs = 0.0;
      for (int k = 0; k < dc_count; ++k) {
        std::vector<double> p(n);
        std::vector<std::uint8_t> g(n);
        for (std::size_t i = 0; i < n; ++i) {
          p[i] = rng.uniform();
          g[i] = rng.uniform() < 0.5 ? 1 : 0;
        }
        const auto check = check_dice_gradient(PredictionGrid(dc_side, dc_side, std::move(p)),
                                               LabelGrid(dc_side, dc_side, std::move(g)), dc_eps, dc_h);
        worst_rel = std::max(worst_rel, check.max_relative_error);
        worst_abs = std::max(worst_abs, check.max_absolute_error);
      }
      const bool pass = worst_rel < dc_tol;
      emit({{"schema", "prwalk.dice-check/1"},
            {"grids", dc_count},
            {"max_relative_error", worst_rel},
            {"max_absolute_error", worst_abs},
            {"tolerance", dc_tol},
            {"pass", pass},
            {"manifest", manifest("dice-check", json::object(),
                                  {{"seeds", json::array({dc_seed})}, {"side", dc_side},
                                   {"h", dc_h}, {"epsilon", dc_eps}},
                                  started)}});
      return pass ? kOk : kCheckFailed;
    }

    if (*rf) {
      BlockTopology topology = standard_ddb(block_mode_from_string(rf_mode), rf_repeats);
      if (!rf_rates.empty()) {
        topology.layers.clear();
        for (int r : rf_rates) topology.layers.push_back({3, r});
      }
      topology.validate();
      json report = to_json(shape_report(topology, rf_in, rf_growth), topology);
      if (rf_impulse) {
        const int rf_side = report["receptive_field"].get<int>();
        report["impulse_support"] = impulse_response_support(topology, rf_side + 2);
      }
      report["manifest"] = manifest("ddb-rf", json::object(),
                                    {{"in_channels", rf_in}, {"growth", rf_growth}}, started);
      emit(std::move(report));
      return kOk;
    }

    if (*ot) {
      const auto prob = load_probability(ot_prob);
      double threshold = 0.0;
      try {
        threshold = otsu_threshold(prob);
      } catch (const ThresholdError& e) {
        throw UsageError(e.what());
      }
      const auto mask = binarize(prob, threshold);
      save_mask(ot_out, mask);
      emit({{"schema", "prwalk.otsu/1"},
            {"threshold", threshold},
            {"foreground", mask.count()},
            {"manifest", manifest("otsu", {{"prob", ot_prob}, {"out", ot_out}}, json::object(), started)}});
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "prwalk: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
