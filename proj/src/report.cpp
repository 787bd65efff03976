#include "prwalk/report.hpp"

#include <stdexcept>

namespace prwalk {

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json pixel_list(const std::vector<Pixel>& pixels) {
  json out = json::array();
  for (const auto& p : pixels) out.push_back(to_json(p));
  return out;
}

const char* to_string(FitAxis axis) { return axis == FitAxis::y_of_x ? "y_of_x" : "x_of_y"; }

}  // namespace

json to_json(const Pixel& p) { return json::array({p.x, p.y}); }

Pixel pixel_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("pixel must be a [x, y] pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

json to_json(const WalkConfig& cfg) {
  return {{"alpha", cfg.alpha},
          {"roi_side", cfg.roi_side},
          {"eps_nn", cfg.eps_nn},
          {"max_steps", cfg.step_budget()},
          {"reverse_walkers", cfg.reverse_walkers},
          {"rng_seed", cfg.rng_seed}};
}

json to_json(const RoiRecord& r) {
  json j = {{"fragment_label", r.fragment_label},
            {"fragment_size", r.fragment_size},
            {"A", to_json(r.pair.a)},
            {"B", to_json(r.pair.b)},
            {"M", to_json(r.pair.midpoint)},
            {"d_ab", r.pair.d_ab},
            {"status", to_string(r.status)},
            {"walkers", r.walkers},
            {"connected_walkers", r.connected_walkers},
            {"path_length", r.path_length},
            {"stamped_pixel_count", r.stamped_pixel_count()},
            {"fallback_guidance", r.fallback_guidance},
            {"stamped", pixel_list(r.stamped)}};
  j["roi"] = r.roi ? json{{"min_x", r.roi->min_x}, {"max_x", r.roi->max_x},
                          {"min_y", r.roi->min_y}, {"max_y", r.roi->max_y}}
                   : json(nullptr);
  j["C"] = r.target ? to_json(*r.target) : json(nullptr);
  j["curve"] = r.curve ? json{{"a", r.curve->a}, {"b", r.curve->b}, {"c", r.curve->c},
                              {"axis", to_string(r.curve->axis)}}
                       : json(nullptr);
  return j;
}

json to_json(const ReconnectReport& report) {
  json rois = json::array();
  for (const auto& r : report.rois) rois.push_back(to_json(r));
  return {{"schema", kReconnectSchema},
          {"method", report.baseline ? "directional_baseline" : "prw"},
          {"config", to_json(report.config)},
          {"rois", std::move(rois)},
          {"totals",
           {{"rois", report.rois.size()},
            {"connected", report.rois_connected()},
            {"skipped", report.rois_skipped()},
            {"stamped_pixels", report.stamped_total()},
            {"components_before", report.components_before},
            {"components_after", report.components_after}}}};
}

std::vector<RoiRecord> roi_records_from_json(const json& report) {
  if (!report.contains("rois") || !report["rois"].is_array())
    throw std::invalid_argument("reconnect report has no 'rois' array");
  std::vector<RoiRecord> out;
  for (const auto& j : report["rois"]) {
    RoiRecord r;
    r.fragment_label = j.at("fragment_label").get<int>();
    r.pair.fragment_label = r.fragment_label;
    r.pair.a = pixel_from_json(j.at("A"));
    r.pair.b = pixel_from_json(j.at("B"));
    r.pair.d_ab = j.at("d_ab").get<double>();
    r.status = roi_status_from_string(j.at("status").get<std::string>());
    r.path_length = j.value("path_length", std::size_t{0});
    for (const auto& p : j.at("stamped")) r.stamped.push_back(pixel_from_json(p));
    out.push_back(std::move(r));
  }
  return out;
}

json to_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

json to_json(const EvalReport& report) {
  json rois = json::array();
  for (const auto& r : report.rois) {
    const double total = static_cast<double>(r.tp + r.fp);
    rois.push_back({{"roi", r.roi_id}, {"tp", r.tp}, {"fp", r.fp},
                    {"error", total > 0 ? static_cast<double>(r.fp) / total : 0.0}});
  }
  return {{"schema", kEvalSchema},
          {"acc", optional_number(report.scores.acc)},
          {"sen", optional_number(report.scores.sen)},
          {"spe", optional_number(report.scores.spe)},
          {"auc", optional_number(report.auc)},
          {"err", optional_number(report.err)},
          {"confusion", to_json(report.confusion)},
          {"rois", std::move(rois)}};
}

const char* to_string(BlockMode mode) {
  switch (mode) {
    case BlockMode::cascade: return "cascade";
    case BlockMode::parallel: return "parallel";
    case BlockMode::dense: return "dense";
  }
  return "unknown";
}

BlockMode block_mode_from_string(const std::string& name) {
  if (name == "cascade") return BlockMode::cascade;
  if (name == "parallel") return BlockMode::parallel;
  if (name == "dense") return BlockMode::dense;
  throw std::invalid_argument("unknown block mode '" + name + "'");
}

json to_json(const ShapeReport& report, const BlockTopology& topology) {
  json layers = json::array();
  for (const auto& l : topology.layers) layers.push_back({{"kernel", l.kernel}, {"dilation", l.dilation}});
  return {{"schema", kShapeSchema},
          {"mode", to_string(topology.mode)},
          {"repeats", topology.repeats},
          {"layers", std::move(layers)},
          {"receptive_field", report.receptive_field},
          {"concat_channel_growth", report.concat_channel_growth}};
}

json to_json(const SynthConfig& cfg) {
  return {{"rng_seed", cfg.rng_seed},
          {"image_side", cfg.image_side},
          {"branch_count", cfg.branch_count},
          {"vessel_width", cfg.vessel_width},
          {"gap_count", cfg.gap_count},
          {"gap_length", cfg.gap_length},
          {"ridge_prob", cfg.ridge_prob},
          {"vessel_prob", cfg.vessel_prob},
          {"noise_amplitude", cfg.noise_amplitude},
          {"blur_radius", cfg.blur_radius},
          {"curvature", cfg.curvature}};
}

json to_json(const GapRecord& gap) {
  return {{"id", gap.id},
          {"stroke", gap.stroke},
          {"endpoints", json::array({to_json(gap.endpoint_a), to_json(gap.endpoint_b)})},
          {"centerline", pixel_list(gap.centerline)},
          {"removed", pixel_list(gap.removed)}};
}

json gap_manifest(const SynthConfig& cfg, const std::vector<GapRecord>& gaps) {
  json list = json::array();
  for (const auto& g : gaps) list.push_back(to_json(g));
  return {{"schema", kGapsSchema}, {"config", to_json(cfg)}, {"gaps", std::move(list)}};
}

}  // namespace prwalk
