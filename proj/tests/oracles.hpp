// oracles.hpp: slow, obviously-correct reference implementations for tests
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "geoach/core_model.hpp"

namespace oracle {

// O(n^2) all-pairs labelling; returns component sizes sorted descending.
inline std::vector<std::size_t> all_pairs_component_sizes(const std::vector<geoach::Point>& pts, double r) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  // Relabel by repeated minimum propagation; simple rather than fast.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (geoach::squared_distance(pts[a], pts[b]) > r * r) continue;
        const std::size_t m = std::min(label[a], label[b]);
        if (label[a] != m || label[b] != m) {
          label[a] = label[b] = m;
          changed = true;
        }
      }
    }
  }
  std::map<std::size_t, std::size_t> counts;
  for (auto l : label) ++counts[l];
  std::vector<std::size_t> sizes;
  for (const auto& [l, c] : counts) sizes.push_back(c);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

// Label of each point under the all-pairs relation (labels are minimum indices).
inline std::vector<std::size_t> all_pairs_labels(const std::vector<geoach::Point>& pts, double r) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (geoach::squared_distance(pts[a], pts[b]) > r * r) continue;
        const std::size_t m = std::min(label[a], label[b]);
        if (label[a] != m || label[b] != m) {
          label[a] = label[b] = m;
          changed = true;
        }
      }
    }
  }
  return label;
}

// Recursive flood fill over a dense boolean grid; returns sorted component sizes.
inline std::vector<std::size_t> flood_fill_sizes(const std::vector<std::vector<bool>>& grid, bool king) {
  const int s = static_cast<int>(grid.size());
  std::vector<std::vector<bool>> seen(s, std::vector<bool>(s, false));
  std::function<std::size_t(int, int)> fill = [&](int i, int j) -> std::size_t {
    if (i < 0 || j < 0 || i >= s || j >= s || !grid[i][j] || seen[i][j]) return 0;
    seen[i][j] = true;
    std::size_t total = 1;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        if (!king && di != 0 && dj != 0) continue;
        total += fill(i + di, j + dj);
      }
    }
    return total;
  };
  std::vector<std::size_t> sizes;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (const std::size_t c = fill(i, j)) sizes.push_back(c);
    }
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace oracle
