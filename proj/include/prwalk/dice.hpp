#pragma once

#include <span>
#include <vector>

#include "prwalk/grid.hpp"

namespace prwalk {

using PredictionGrid = ProbabilityMap;
using LabelGrid = BinaryMask;

struct LossConfig {
  double epsilon = 1.0;
  int scales = 4;
  /// Per-scale weights; equal weights 1/scales when empty.
  std::vector<double> weights;

  std::vector<double> resolved_weights() const;
  void validate() const;
};

/// 1 - (2 Σ p g + ε) / (Σ p² + Σ g² + ε)
double dice_loss(const PredictionGrid& p, const LabelGrid& g, double epsilon = 1.0);

/// Analytic ∂L/∂p_i for every pixel.
RealGrid dice_grad(const PredictionGrid& p, const LabelGrid& g, double epsilon = 1.0);

/// Block-majority downsampling; a block that is exactly half foreground becomes foreground.
LabelGrid downsample_label(const LabelGrid& g, int factor);

/// Σ λ_n · dice_loss(preds[n], downsample(g, 2ⁿ)), preds ordered largest first.
double multiscale_loss(std::span<const PredictionGrid> preds, const LabelGrid& g,
                       const LossConfig& cfg = {});

/// Dice loss on raw values (no range validation), evaluated in extended precision.
/// Used by finite-difference checks where perturbed values may leave [0,1].
long double dice_loss_raw(std::span<const double> p, std::span<const std::uint8_t> g, double epsilon);

struct GradientCheck {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
};

/// Compares dice_grad against central differences with step h.
GradientCheck check_dice_gradient(const PredictionGrid& p, const LabelGrid& g, double epsilon,
                                  double h = 1e-5);

}  // namespace prwalk
