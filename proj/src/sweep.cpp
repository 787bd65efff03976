#include "prwalk/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "prwalk/raster_io.hpp"
#include "prwalk/report.hpp"

namespace prwalk {

EvalFixture to_eval_fixture(const SynthFixture& f, std::string id) {
  return {std::move(id), f.truth, f.broken, f.probability};
}

std::vector<double> default_sweep_values(SweepParameter parameter) {
  std::vector<double> values;
  if (parameter == SweepParameter::roi_size) {
    for (int l = 0; l <= 160; l += 20) values.push_back(l);
  } else {
    for (int i = 0; i <= 10; ++i) values.push_back(i / 20.0);
  }
  return values;
}

std::vector<SweepRow> run_sweep(std::span<const EvalFixture> fixtures, SweepParameter parameter,
                                std::span<const double> values, const WalkConfig& base,
                                int timing_repeats) {
  using clock = std::chrono::steady_clock;
  std::vector<WalkConfig> configs;
  for (const double value : values) {
    WalkConfig cfg = base;
    if (parameter == SweepParameter::roi_size) {
      cfg.roi_side = static_cast<int>(std::lround(value));
      cfg.max_steps.reset();
    } else {
      cfg.alpha = value;
    }
    cfg.validate();
    configs.push_back(cfg);
  }

  std::vector<SweepRow> rows(values.size());
  // Repeats go round-robin over the values so drift in machine load hits
  // every value alike; each value keeps its fastest pass.
  for (int rep = 0; rep < std::max(1, timing_repeats); ++rep) {
    for (std::size_t v = 0; v < values.size(); ++v) {
      std::vector<ReconnectResult> results;
      results.reserve(fixtures.size());
      const auto start = clock::now();
      for (const auto& f : fixtures) results.push_back(prw(f.broken, f.probability, configs[v]));
      const double seconds = std::chrono::duration<double>(clock::now() - start).count();

      SweepRow& row = rows[v];
      if (rep == 0 || seconds < row.seconds) row.seconds = seconds;
      if (rep > 0) continue;

      row.value = values[v];
      ConfusionCounts pooled;
      std::vector<RoiErrorRecord> records;
      for (std::size_t i = 0; i < fixtures.size(); ++i) {
        pooled += confusion(results[i].mask, fixtures[i].truth);
        const auto fixture_records = roi_error_records(results[i].report.rois, fixtures[i].truth);
        records.insert(records.end(), fixture_records.begin(), fixture_records.end());
        row.rois += results[i].report.rois.size();
        row.connected += results[i].report.rois_connected();
        row.stamped += results[i].report.stamped_total();
      }
      const Scores scores = acc_sen_spe(pooled);
      row.acc = scores.acc;
      row.sen = scores.sen;
      row.err = err_metric(records);
    }
  }
  return rows;
}

namespace {

std::string fixture_stem(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return buf;
}

}  // namespace

void save_fixture_dir(const std::filesystem::path& dir, std::span<const SynthFixture> fixtures) {
  std::filesystem::create_directories(dir);
  json list = json::array();
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& f = fixtures[i];
    const std::string stem = fixture_stem(i);
    save_mask(dir / (stem + "_truth.pgm"), f.truth);
    save_mask(dir / (stem + "_broken.pgm"), f.broken);
    save_probability(dir / (stem + "_prob.pgm"), f.probability);
    std::ofstream(dir / (stem + "_gaps.json")) << gap_manifest(f.config, f.gaps).dump(2) << "\n";
    list.push_back({{"id", stem},
                    {"seed", f.config.rng_seed},
                    {"truth", stem + "_truth.pgm"},
                    {"broken", stem + "_broken.pgm"},
                    {"probability", stem + "_prob.pgm"},
                    {"gaps", stem + "_gaps.json"}});
  }
  std::ofstream out(dir / "fixtures.json");
  out << json{{"schema", kFixturesSchema}, {"fixtures", std::move(list)}}.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + (dir / "fixtures.json").string());
}

std::vector<EvalFixture> load_fixture_dir(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "fixtures.json";
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("missing fixture manifest " + manifest_path.string());
  const json manifest = json::parse(in);
  std::vector<EvalFixture> out;
  for (const auto& entry : manifest.at("fixtures")) {
    EvalFixture f;
    f.id = entry.at("id").get<std::string>();
    f.truth = load_mask(dir / entry.at("truth").get<std::string>());
    f.broken = load_mask(dir / entry.at("broken").get<std::string>());
    f.probability = load_probability(dir / entry.at("probability").get<std::string>());
    out.push_back(std::move(f));
  }
  if (out.empty()) throw std::runtime_error("fixture manifest lists no fixtures");
  return out;
}

}  // namespace prwalk
