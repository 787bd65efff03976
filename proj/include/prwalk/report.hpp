#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "prwalk/ddb_shape.hpp"
#include "prwalk/metrics.hpp"
#include "prwalk/reconnect.hpp"
#include "prwalk/synth.hpp"

namespace prwalk {

using json = nlohmann::json;

inline constexpr const char* kReconnectSchema = "prwalk.reconnect/1";
inline constexpr const char* kEvalSchema = "prwalk.eval/1";
inline constexpr const char* kShapeSchema = "prwalk.ddb-shape/1";
inline constexpr const char* kGapsSchema = "prwalk.gaps/1";
inline constexpr const char* kSweepSchema = "prwalk.sweep/1";
inline constexpr const char* kFixturesSchema = "prwalk.fixtures/1";

json to_json(const Pixel& p);
Pixel pixel_from_json(const json& j);

json to_json(const WalkConfig& cfg);
json to_json(const RoiRecord& record);
/// Per-ROI records plus totals; `schema` set to kReconnectSchema.
json to_json(const ReconnectReport& report);
/// Reads back the ROI records of a reconnect report (stamped pixels, statuses, pairs).
std::vector<RoiRecord> roi_records_from_json(const json& report);

json to_json(const ConfusionCounts& c);
/// Fixed keys: acc, sen, spe, auc, err, confusion, rois. Absent scores are null.
json to_json(const EvalReport& report);

json to_json(const ShapeReport& report, const BlockTopology& topology);
json to_json(const SynthConfig& cfg);
json to_json(const GapRecord& gap);
json gap_manifest(const SynthConfig& cfg, const std::vector<GapRecord>& gaps);

const char* to_string(BlockMode mode);
BlockMode block_mode_from_string(const std::string& name);

}  // namespace prwalk
