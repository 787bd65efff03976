#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "prwalk/grid.hpp"
#include "prwalk/metrics.hpp"
#include "prwalk/reconnect.hpp"
#include "prwalk/synth.hpp"

namespace prwalk {

struct EvalFixture {
  std::string id;
  BinaryMask truth;
  BinaryMask broken;
  ProbabilityMap probability;
};

EvalFixture to_eval_fixture(const SynthFixture& f, std::string id);

enum class SweepParameter { roi_size, alpha };

struct SweepRow {
  double value = 0.0;
  std::optional<double> acc;
  std::optional<double> sen;
  double err = 0.0;
  double seconds = 0.0;
  std::size_t rois = 0;
  std::size_t connected = 0;
  std::size_t stamped = 0;
};

/// roi_size: 0, 20, ..., 160. alpha: 0, 0.05, ..., 0.5.
std::vector<double> default_sweep_values(SweepParameter parameter);

/// Runs prw over every fixture for each parameter value. Acc/Sen pool the
/// confusion counts of all fixtures; Err pools their ROI records. `seconds`
/// is the smallest wall time over `timing_repeats` runs of the whole set;
/// repeats cycle through all values before starting again.
std::vector<SweepRow> run_sweep(std::span<const EvalFixture> fixtures, SweepParameter parameter,
                                std::span<const double> values, const WalkConfig& base = {},
                                int timing_repeats = 1);

/// Writes NNN_truth.pgm, NNN_broken.pgm, NNN_prob.pgm, NNN_gaps.json and fixtures.json.
void save_fixture_dir(const std::filesystem::path& dir, std::span<const SynthFixture> fixtures);
std::vector<EvalFixture> load_fixture_dir(const std::filesystem::path& dir);

}  // namespace prwalk
