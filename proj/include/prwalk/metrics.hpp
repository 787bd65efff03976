#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "prwalk/grid.hpp"
#include "prwalk/reconnect.hpp"

namespace prwalk {

class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// A score is absent when its denominator is zero.
struct Scores {
  std::optional<double> acc;
  std::optional<double> sen;
  std::optional<double> spe;
};

struct RoiErrorRecord {
  int roi_id = 0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
};

struct EvalReport {
  ConfusionCounts confusion;
  Scores scores;
  std::optional<double> auc;
  std::optional<double> err;
  std::vector<RoiErrorRecord> rois;
};

/// Counts over pixels where `region` is set (the whole image when omitted).
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth,
                          const BinaryMask* region = nullptr);

Scores acc_sen_spe(const ConfusionCounts& c);

/// Area under the ROC curve; ties between a positive and a negative count one half.
/// Absent when the region holds only one class.
std::optional<double> auc(const ProbabilityMap& prob, const BinaryMask& truth,
                          const BinaryMask* region = nullptr);

/// Mean over records of fp / (tp + fp). Zero for an empty list.
double err_metric(std::span<const RoiErrorRecord> records);

/// Scores each ROI's stamped pixels against the ground truth. ROIs that stamped
/// nothing produce no record.
std::vector<RoiErrorRecord> roi_error_records(std::span<const RoiRecord> rois,
                                              const BinaryMask& truth);

/// 256-bin histogram bin used by Otsu: round(v * 255).
int otsu_bin(double value);

/// Threshold maximizing between-class variance. Foreground is `value > threshold`.
/// Throws ThresholdError when the map has fewer than two occupied bins.
double otsu_threshold(const ProbabilityMap& prob);

BinaryMask binarize(const ProbabilityMap& prob, double threshold);

}  // namespace prwalk
