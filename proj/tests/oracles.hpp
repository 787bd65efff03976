// Slow, obviously-correct reference implementations and random generators
// shared by the unit and acceptance tests. Nothing here calls into the code
// under test except for the plain data types.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "prwalk/grid.hpp"

namespace oracle {

using prwalk::BinaryMask;
using prwalk::Pixel;
using prwalk::ProbabilityMap;

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density) {
  std::bernoulli_distribution on(density);
  std::vector<std::uint8_t> v(static_cast<std::size_t>(w) * h);
  for (auto& x : v) x = on(rng) ? 1 : 0;
  return BinaryMask(w, h, std::move(v));
}

inline ProbabilityMap random_prob(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (auto& x : v) x = u(rng);
  return ProbabilityMap(w, h, std::move(v));
}

/// Probability map drawn from a small set of levels so ties are common.
inline ProbabilityMap random_levels(std::mt19937_64& rng, int w, int h, int levels) {
  std::uniform_int_distribution<int> pick(0, levels - 1);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (auto& x : v) x = static_cast<double>(pick(rng)) / (levels - 1);
  return ProbabilityMap(w, h, std::move(v));
}

struct Labels {
  std::vector<int> label;
  int count = 0;
};

/// Breadth-first flood fill, seeds taken in raster order.
inline Labels flood_fill(const BinaryMask& m, int connectivity) {
  const int w = m.width(), h = m.height();
  Labels out;
  out.label.assign(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!m.test(x, y) || out.label[y * w + x]) continue;
      const int id = ++out.count;
      std::deque<Pixel> queue{{x, y}};
      out.label[y * w + x] = id;
      while (!queue.empty()) {
        const Pixel p = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (connectivity == 4 && dx != 0 && dy != 0) continue;
            const Pixel q{p.x + dx, p.y + dy};
            if (!m.contains(q) || !m.test(q) || out.label[q.y * w + q.x]) continue;
            out.label[q.y * w + q.x] = id;
            queue.push_back(q);
          }
        }
      }
    }
  }
  return out;
}

inline int component_count(const BinaryMask& m, int connectivity = 8) {
  return flood_fill(m, connectivity).count;
}

/// Textbook parallel Zhang-Suen: each subiteration marks against a frozen image.
inline BinaryMask zhang_suen_parallel(const BinaryMask& m) {
  const int w = m.width(), h = m.height();
  std::vector<std::uint8_t> img(m.values().begin(), m.values().end());
  auto at = [&](int x, int y) -> int {
    return x < 0 || y < 0 || x >= w || y >= h ? 0 : img[y * w + x];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 0; sub < 2; ++sub) {
      std::vector<int> kill;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (!at(x, y)) continue;
          // P2..P9 clockwise from north
          const std::array<int, 8> n{at(x, y - 1),     at(x + 1, y - 1), at(x + 1, y),
                                     at(x + 1, y + 1), at(x, y + 1),     at(x - 1, y + 1),
                                     at(x - 1, y),     at(x - 1, y - 1)};
          int b = 0, a = 0;
          for (int i = 0; i < 8; ++i) {
            b += n[i];
            if (!n[i] && n[(i + 1) % 8]) ++a;
          }
          if (b < 2 || b > 6 || a != 1) continue;
          const bool c = sub == 0 ? !(n[0] && n[2] && n[4]) : !(n[0] && n[2] && n[6]);
          const bool d = sub == 0 ? !(n[2] && n[4] && n[6]) : !(n[0] && n[4] && n[6]);
          if (c && d) kill.push_back(y * w + x);
        }
      }
      for (int i : kill) img[i] = 0;
      changed |= !kill.empty();
    }
  }
  return BinaryMask(w, h, std::move(img));
}

struct Pair {
  Pixel a, b;
  long long d2 = 0;
};

inline Pair nearest_pair(const std::vector<Pixel>& frag, const std::vector<Pixel>& trunk) {
  std::optional<Pair> best;
  for (const auto& a : frag) {
    for (const auto& b : trunk) {
      const long long d2 = 1LL * (a.x - b.x) * (a.x - b.x) + 1LL * (a.y - b.y) * (a.y - b.y);
      const auto key = std::tuple(d2, a.y, a.x, b.y, b.x);
      if (!best || key < std::tuple(best->d2, best->a.y, best->a.x, best->b.y, best->b.x))
        best = Pair{a, b, d2};
    }
  }
  return *best;
}

/// Normal equations for y = a t² + b t + c, solved by Cramer's rule in long double.
inline std::array<long double, 3> quadratic_fit(const std::vector<std::pair<double, double>>& pts) {
  long double s[5] = {0, 0, 0, 0, 0}, r[3] = {0, 0, 0};
  for (const auto& [t, v] : pts) {
    long double p = 1;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) r[k] += p * v;
      p *= t;
    }
  }
  // [[s4 s3 s2],[s3 s2 s1],[s2 s1 s0]] * (a,b,c) = (r2, r1, r0)
  auto det3 = [](long double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  long double base[3][3] = {{s[4], s[3], s[2]}, {s[3], s[2], s[1]}, {s[2], s[1], s[0]}};
  const long double rhs[3] = {r[2], r[1], r[0]};
  const long double d = det3(base);
  std::array<long double, 3> out{};
  for (int col = 0; col < 3; ++col) {
    long double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = j == col ? rhs[i] : base[i][j];
    out[col] = det3(m) / d;
  }
  return out;
}

/// Pairwise rank statistic over all positive/negative pairs.
inline double pairwise_auc(const ProbabilityMap& prob, const BinaryMask& truth) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < prob.size(); ++i)
    (truth.values()[i] ? pos : neg).push_back(prob.values()[i]);
  long double wins = 0;
  for (double p : pos)
    for (double n : neg) wins += p > n ? 1.0L : (p == n ? 0.5L : 0.0L);
  return static_cast<double>(wins / (static_cast<long double>(pos.size()) * neg.size()));
}

/// Exhaustive Otsu scan: for every split t (bins 0..t low, t+1..255 high)
/// compute the between-class variance directly from the bin lists. Returns
/// the first t reaching the maximum.
inline int otsu_bin_scan(const ProbabilityMap& prob) {
  std::vector<int> bins;
  for (double v : prob.values()) bins.push_back(static_cast<int>(std::lround(v * 255.0)));
  long double best = -1;
  int best_t = -1;
  for (int t = 0; t < 255; ++t) {
    long double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (int b : bins) {
      if (b <= t) {
        n0 += 1;
        s0 += b;
      } else {
        n1 += 1;
        s1 += b;
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const long double n = n0 + n1;
    const long double mu0 = s0 / n0, mu1 = s1 / n1, mu = (s0 + s1) / n;
    const long double var = n0 / n * (mu0 - mu) * (mu0 - mu) + n1 / n * (mu1 - mu) * (mu1 - mu);
    if (var > best) {
      best = var;
      best_t = t;
    }
  }
  return best_t;
}

inline long double dice_loss(const std::vector<long double>& p, const std::vector<int>& g,
                             long double eps) {
  long double pg = 0, pp = 0, gg = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pg += p[i] * g[i];
    pp += p[i] * p[i];
    gg += g[i] * g[i];
  }
  return 1 - (2 * pg + eps) / (pp + gg + eps);
}

/// Side of the nonzero support after pushing an impulse through dilated
/// all-ones convolutions, computed on index sets rather than grids.
inline int support_side(const std::vector<std::vector<int>>& serial_dilations) {
  // The support of a composition is the Minkowski sum of the 1-D offset sets.
  std::vector<int> reach{0};
  for (const auto& branch_set : serial_dilations) {
    std::vector<int> offsets;
    for (int d : branch_set)
      for (int k = -1; k <= 1; ++k) offsets.push_back(k * d);
    std::vector<int> next;
    for (int r : reach)
      for (int o : offsets) next.push_back(r + o);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    reach = std::move(next);
  }
  return reach.back() - reach.front() + 1;
}

}  // namespace oracle
