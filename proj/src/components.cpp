#include "prwalk/components.hpp"

#include <array>
#include <algorithm>
#include <cstdlib>

namespace prwalk {

namespace {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

// Clockwise from north: P2..P9 of the Zhang-Suen formulation.
constexpr std::array<std::array<int, 2>, 8> kRing = {{
    {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1},
}};

struct Neighborhood {
  std::array<bool, 8> p{};

  int count() const { return static_cast<int>(std::count(p.begin(), p.end(), true)); }

  int transitions() const {
    int a = 0;
    for (int i = 0; i < 8; ++i)
      if (!p[i] && p[(i + 1) % 8]) ++a;
    return a;
  }

  /// Removing the centre keeps the 8-connected foreground and 4-connected
  /// background topology unchanged.
  bool simple() const {
    // The centre must touch background through an edge.
    if (p[0] && p[2] && p[4] && p[6]) return false;
    // Foreground ring neighbours must form exactly one 8-component when the
    // centre is gone. Corner pixels link their two edge neighbours.
    std::array<int, 8> comp{};
    comp.fill(-1);
    int components = 0;
    for (int start = 0; start < 8; ++start) {
      if (!p[start] || comp[start] >= 0) continue;
      std::array<int, 8> stack{};
      int top = 0;
      stack[top++] = start;
      comp[start] = components;
      while (top > 0) {
        const int i = stack[--top];
        for (int j = 0; j < 8; ++j) {
          if (!p[j] || comp[j] >= 0) continue;
          const int dx = kRing[i][0] - kRing[j][0];
          const int dy = kRing[i][1] - kRing[j][1];
          if (std::abs(dx) <= 1 && std::abs(dy) <= 1) {
            comp[j] = components;
            stack[top++] = j;
          }
        }
      }
      ++components;
    }
    return components == 1;
  }
};

Neighborhood neighborhood(const std::vector<std::uint8_t>& img, int w, int h, int x, int y) {
  Neighborhood n;
  for (int i = 0; i < 8; ++i) {
    const int nx = x + kRing[i][0];
    const int ny = y + kRing[i][1];
    n.p[i] = nx >= 0 && ny >= 0 && nx < w && ny < h &&
             img[static_cast<std::size_t>(ny) * w + nx] != 0;
  }
  return n;
}

bool zhang_suen_candidate(const Neighborhood& n, int pass) {
  const int b = n.count();
  if (b < 2 || b > 6 || n.transitions() != 1) return false;
  const auto& p = n.p;  // p[0]=P2 (N), p[2]=P4 (E), p[4]=P6 (S), p[6]=P8 (W)
  if (pass == 0) return !(p[0] && p[2] && p[4]) && !(p[2] && p[4] && p[6]);
  return !(p[0] && p[2] && p[6]) && !(p[0] && p[4] && p[6]);
}

// Lookup by ring bit pattern (bit i = kRing[i]): bit 0 and 1 are the
// candidate tests of the two subiterations, bit 2 the simple-point test.
std::array<std::uint8_t, 256> make_ring_table() {
  std::array<std::uint8_t, 256> table{};
  for (int bits = 0; bits < 256; ++bits) {
    Neighborhood n;
    for (int i = 0; i < 8; ++i) n.p[i] = (bits >> i) & 1;
    table[bits] = static_cast<std::uint8_t>((zhang_suen_candidate(n, 0) ? 1 : 0) |
                                            (zhang_suen_candidate(n, 1) ? 2 : 0) |
                                            (n.simple() ? 4 : 0));
  }
  return table;
}

const std::array<std::uint8_t, 256> kRingTable = make_ring_table();

int ring_bits(const std::vector<std::uint8_t>& img, int w, int h, int x, int y) {
  int bits = 0;
  if (x > 0 && y > 0 && x + 1 < w && y + 1 < h) {
    const std::uint8_t* row = img.data() + static_cast<std::size_t>(y) * w + x;
    for (int i = 0; i < 8; ++i)
      if (row[kRing[i][1] * w + kRing[i][0]]) bits |= 1 << i;
    return bits;
  }
  const auto n = neighborhood(img, w, h, x, y);
  for (int i = 0; i < 8; ++i)
    if (n.p[i]) bits |= 1 << i;
  return bits;
}

}  // namespace

BinaryMask LabelMap::mask_of(int label) const {
  std::vector<std::uint8_t> bits(size());
  const auto v = values();
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = v[i] == label ? 1 : 0;
  return BinaryMask(width(), height(), std::move(bits));
}

LabelMap label_components(const BinaryMask& mask, Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> provisional(mask.size(), -1);
  DisjointSet sets;

  // Already-scanned neighbours: W, NW, N, NE (the diagonals only for 8-connectivity).
  const bool eight = connectivity == Connectivity::eight;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.test(x, y)) continue;
      int label = -1;
      auto link = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w) return;
        const int other = provisional[mask.index(nx, ny)];
        if (other < 0) return;
        if (label < 0) label = other;
        else sets.unite(label, other);
      };
      link(x - 1, y);
      link(x, y - 1);
      if (eight) {
        link(x - 1, y - 1);
        link(x + 1, y - 1);
      }
      provisional[mask.index(x, y)] = label >= 0 ? label : sets.make();
    }
  }

  std::vector<int> final_label;
  std::vector<int> labels(mask.size(), 0);
  int count = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (provisional[i] < 0) continue;
    const int root = sets.find(provisional[i]);
    if (static_cast<std::size_t>(root) >= final_label.size()) final_label.resize(root + 1, 0);
    if (final_label[root] == 0) final_label[root] = ++count;
    labels[i] = final_label[root];
  }
  return LabelMap(w, h, std::move(labels), count);
}

ComponentIndex component_index(const LabelMap& labels) {
  ComponentIndex index;
  index.pixels.resize(labels.count());
  index.sizes.assign(labels.count(), 0);
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const int k = labels(x, y);
      if (k <= 0) continue;
      index.pixels[k - 1].push_back({x, y});
      ++index.sizes[k - 1];
    }
  }
  for (int k = 1; k <= labels.count(); ++k) {
    if (!index.largest || index.sizes[k - 1] > index.sizes[*index.largest - 1]) index.largest = k;
  }
  return index;
}

BinaryMask skeletonize(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> img(mask.values().begin(), mask.values().end());
  auto at = [&](const Pixel& p) -> std::uint8_t& { return img[static_cast<std::size_t>(p.y) * w + p.x]; };
  std::vector<Pixel> live = mask.foreground();
  std::vector<Pixel> marked;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      marked.clear();
      const int candidate = pass == 0 ? 1 : 2;
      for (const auto& p : live)
        if (kRingTable[ring_bits(img, w, h, p.x, p.y)] & candidate) marked.push_back(p);
      bool removed = false;
      for (const auto& p : marked) {
        const int flags = kRingTable[ring_bits(img, w, h, p.x, p.y)];
        if ((flags & candidate) && (flags & 4)) {
          at(p) = 0;
          removed = true;
        }
      }
      if (removed) {
        std::erase_if(live, [&](const Pixel& p) { return !at(p); });
        changed = true;
      }
    }
    if (changed) continue;
    // ZS can leave 2x2 blocks on diagonal staircases; drop their simple pixels.
    auto on = [&](int x, int y) { return x >= 0 && y >= 0 && x < w && y < h && img[static_cast<std::size_t>(y) * w + x]; };
    for (const auto& p : live) {
      bool in_block = false;
      for (int dy = -1; dy <= 0 && !in_block; ++dy)
        for (int dx = -1; dx <= 0 && !in_block; ++dx)
          in_block = on(p.x + dx, p.y + dy) && on(p.x + dx + 1, p.y + dy) && on(p.x + dx, p.y + dy + 1) &&
                     on(p.x + dx + 1, p.y + dy + 1);
      if (in_block && (kRingTable[ring_bits(img, w, h, p.x, p.y)] & 4)) {
        at(p) = 0;
        changed = true;
      }
    }
    if (changed) std::erase_if(live, [&](const Pixel& p) { return !at(p); });
  }
  return BinaryMask(w, h, std::move(img));
}

}  // namespace prwalk
