#include "prwalk/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace prwalk {

namespace {

void require_same_shape(const BinaryMask& a, const BinaryMask& b, const char* what) {
  if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + " dimensions differ");
}

}  // namespace

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth, const BinaryMask* region) {
  require_same_shape(pred, truth, "prediction and truth");
  if (region) require_same_shape(pred, *region, "prediction and region");
  ConfusionCounts c;
  const auto p = pred.values();
  const auto t = truth.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (region && !region->values()[i]) continue;
    if (p[i]) {
      if (t[i]) ++c.tp;
      else ++c.fp;
    } else {
      if (t[i]) ++c.fn;
      else ++c.tn;
    }
  }
  return c;
}

Scores acc_sen_spe(const ConfusionCounts& c) {
  auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  return {ratio(c.tp + c.tn, c.total()), ratio(c.tp, c.tp + c.fn), ratio(c.tn, c.tn + c.fp)};
}

std::optional<double> auc(const ProbabilityMap& prob, const BinaryMask& truth, const BinaryMask* region) {
  if (!prob.same_shape(truth)) throw std::invalid_argument("probability and truth dimensions differ");
  if (region && !prob.same_shape(*region))
    throw std::invalid_argument("probability and region dimensions differ");

  std::vector<std::pair<double, bool>> scored;
  scored.reserve(prob.size());
  for (std::size_t i = 0; i < prob.size(); ++i) {
    if (region && !region->values()[i]) continue;
    scored.emplace_back(prob.values()[i], truth.values()[i] != 0);
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // Sweep groups of equal score from low to high: each positive beats every
  // negative scored strictly below it and ties with the negatives in its group.
  double wins = 0.0;
  std::uint64_t negatives_below = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  for (std::size_t i = 0; i < scored.size();) {
    std::size_t j = i;
    std::uint64_t pos = 0, neg = 0;
    while (j < scored.size() && scored[j].first == scored[i].first) {
      if (scored[j].second) ++pos;
      else ++neg;
      ++j;
    }
    wins += static_cast<double>(pos) * (static_cast<double>(negatives_below) + 0.5 * static_cast<double>(neg));
    negatives_below += neg;
    positives += pos;
    negatives += neg;
    i = j;
  }
  if (positives == 0 || negatives == 0) return std::nullopt;
  return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

double err_metric(std::span<const RoiErrorRecord> records) {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.tp + r.fp == 0) throw std::invalid_argument("ROI error record without stamped pixels");
    sum += static_cast<double>(r.fp) / static_cast<double>(r.tp + r.fp);
  }
  return sum / static_cast<double>(records.size());
}

std::vector<RoiErrorRecord> roi_error_records(std::span<const RoiRecord> rois, const BinaryMask& truth) {
  std::vector<RoiErrorRecord> out;
  for (std::size_t i = 0; i < rois.size(); ++i) {
    if (rois[i].stamped.empty()) continue;
    RoiErrorRecord rec;
    rec.roi_id = static_cast<int>(i);
    for (const auto& p : rois[i].stamped) {
      if (!truth.contains(p)) throw std::invalid_argument("stamped pixel outside the truth raster");
      if (truth.test(p)) ++rec.tp;
      else ++rec.fp;
    }
    out.push_back(rec);
  }
  return out;
}

int otsu_bin(double value) {
  return std::clamp(static_cast<int>(std::lround(value * 255.0)), 0, 255);
}

double otsu_threshold(const ProbabilityMap& prob) {
  std::array<std::uint64_t, 256> hist{};
  for (const double v : prob.values()) ++hist[otsu_bin(v)];
  const int occupied = static_cast<int>(std::count_if(hist.begin(), hist.end(), [](auto n) { return n > 0; }));
  if (occupied < 2) throw ThresholdError("Otsu threshold needs at least two distinct values");

  const double total = static_cast<double>(prob.size());
  double sum_all = 0.0;
  for (int t = 0; t < 256; ++t) sum_all += t * static_cast<double>(hist[t]);

  double weight_low = 0.0;
  double sum_low = 0.0;
  double best_variance = -1.0;
  int best_t = 0;
  for (int t = 0; t < 255; ++t) {
    weight_low += static_cast<double>(hist[t]);
    sum_low += t * static_cast<double>(hist[t]);
    const double weight_high = total - weight_low;
    if (weight_low == 0.0 || weight_high == 0.0) continue;
    const double mean_low = sum_low / weight_low;
    const double mean_high = (sum_all - sum_low) / weight_high;
    const double diff = mean_low - mean_high;
    const double variance = weight_low * weight_high * diff * diff;
    if (variance > best_variance) {
      best_variance = variance;
      best_t = t;
    }
  }
  // Bin t holds values in [(t-0.5)/255, (t+0.5)/255); quantized inputs never
  // land on the boundary itself.
  return (best_t + 0.5) / 255.0;
}

BinaryMask binarize(const ProbabilityMap& prob, double threshold) {
  std::vector<std::uint8_t> bits(prob.size());
  std::transform(prob.values().begin(), prob.values().end(), bits.begin(),
                 [threshold](double v) { return static_cast<std::uint8_t>(v > threshold); });
  return BinaryMask(prob.width(), prob.height(), std::move(bits));
}

}  // namespace prwalk
