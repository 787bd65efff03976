#include "prwalk/dice.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace prwalk {

namespace {

struct DiceSums {
  long double overlap = 0;  // Σ p g
  long double pred_sq = 0;  // Σ p²
  long double label_sq = 0; // Σ g²
};

DiceSums dice_sums(std::span<const double> p, std::span<const std::uint8_t> g) {
  DiceSums s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long double pi = p[i];
    const long double gi = g[i] ? 1.0L : 0.0L;
    s.overlap += pi * gi;
    s.pred_sq += pi * pi;
    s.label_sq += gi * gi;
  }
  return s;
}

void require_same_shape(const PredictionGrid& p, const LabelGrid& g) {
  if (!p.same_shape(g))
    throw std::invalid_argument("prediction is " + std::to_string(p.width()) + "x" +
                                std::to_string(p.height()) + " but label is " +
                                std::to_string(g.width()) + "x" + std::to_string(g.height()));
}

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

}  // namespace

std::vector<double> LossConfig::resolved_weights() const {
  if (!weights.empty()) return weights;
  return std::vector<double>(static_cast<std::size_t>(std::max(scales, 0)),
                             scales > 0 ? 1.0 / scales : 0.0);
}

void LossConfig::validate() const {
  require_positive_epsilon(epsilon);
  if (scales < 1) throw std::invalid_argument("scales must be at least 1");
  const auto w = resolved_weights();
  if (static_cast<int>(w.size()) != scales)
    throw std::invalid_argument("weight count does not match the number of scales");
  if (std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) > 1e-9)
    throw std::invalid_argument("scale weights must sum to 1");
}

long double dice_loss_raw(std::span<const double> p, std::span<const std::uint8_t> g, double epsilon) {
  const auto s = dice_sums(p, g);
  return 1.0L - (2.0L * s.overlap + epsilon) / (s.pred_sq + s.label_sq + epsilon);
}

double dice_loss(const PredictionGrid& p, const LabelGrid& g, double epsilon) {
  require_same_shape(p, g);
  require_positive_epsilon(epsilon);
  return static_cast<double>(dice_loss_raw(p.values(), g.values(), epsilon));
}

RealGrid dice_grad(const PredictionGrid& p, const LabelGrid& g, double epsilon) {
  require_same_shape(p, g);
  require_positive_epsilon(epsilon);
  const auto s = dice_sums(p.values(), g.values());
  const long double numerator = 2.0L * s.overlap + epsilon;
  const long double denominator = s.pred_sq + s.label_sq + epsilon;
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const long double gi = g.values()[i] ? 1.0L : 0.0L;
    const long double pi = p.values()[i];
    grad[i] = static_cast<double>(-2.0L * gi / denominator +
                                  2.0L * pi * numerator / (denominator * denominator));
  }
  return RealGrid(p.width(), p.height(), std::move(grad));
}

LabelGrid downsample_label(const LabelGrid& g, int factor) {
  if (factor < 1 || (factor & (factor - 1)) != 0)
    throw std::invalid_argument("downsampling factor must be a power of two");
  if (g.width() % factor != 0 || g.height() % factor != 0)
    throw std::invalid_argument("label dimensions " + std::to_string(g.width()) + "x" +
                                std::to_string(g.height()) + " are not divisible by " +
                                std::to_string(factor));
  const int w = g.width() / factor;
  const int h = g.height() / factor;
  const int block = factor * factor;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h);
  for (int by = 0; by < h; ++by) {
    for (int bx = 0; bx < w; ++bx) {
      int on = 0;
      for (int y = by * factor; y < (by + 1) * factor; ++y)
        for (int x = bx * factor; x < (bx + 1) * factor; ++x) on += g.test(x, y);
      out[static_cast<std::size_t>(by) * w + bx] = 2 * on >= block;
    }
  }
  return LabelGrid(w, h, std::move(out));
}

double multiscale_loss(std::span<const PredictionGrid> preds, const LabelGrid& g, const LossConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(preds.size()) != cfg.scales)
    throw std::invalid_argument("expected " + std::to_string(cfg.scales) + " predictions, got " +
                                std::to_string(preds.size()));
  const auto weights = cfg.resolved_weights();
  double total = 0.0;
  for (std::size_t n = 0; n < preds.size(); ++n) {
    const LabelGrid label = n == 0 ? g : downsample_label(g, 1 << n);
    total += weights[n] * dice_loss(preds[n], label, cfg.epsilon);
  }
  return total;
}

GradientCheck check_dice_gradient(const PredictionGrid& p, const LabelGrid& g, double epsilon, double h) {
  const RealGrid analytic = dice_grad(p, g, epsilon);
  std::vector<double> probe(p.values().begin(), p.values().end());
  GradientCheck result;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double original = probe[i];
    const double hi = original + h;
    const double lo = original - h;
    probe[i] = hi;
    const long double up = dice_loss_raw(probe, g.values(), epsilon);
    probe[i] = lo;
    const long double down = dice_loss_raw(probe, g.values(), epsilon);
    probe[i] = original;
    const double numeric = static_cast<double>((up - down) / (static_cast<long double>(hi) - lo));
    const double a = analytic.values()[i];
    const double abs_err = std::abs(a - numeric);
    const double scale = std::max(std::abs(a), std::abs(numeric));
    result.max_absolute_error = std::max(result.max_absolute_error, abs_err);
    if (scale > 0.0) result.max_relative_error = std::max(result.max_relative_error, abs_err / scale);
  }
  return result;
}

}  // namespace prwalk
