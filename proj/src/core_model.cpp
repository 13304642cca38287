#include "geoach/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "geoach/error.hpp"

namespace geoach {

namespace {

// Caps the spatial hash at 1024 x 1024 cells; a coarser hash stays correct
// because cells are never narrower than the connection radius.
constexpr double kMinCellSide = 1.0 / 1024.0;

}  // namespace

int boxes_per_side(double side) {
  if (!(side > 0.0)) throw ParameterError("box side must be positive");
  if (side >= 1.0) return 1;
  // Tolerate representation error so that e.g. side = 0.1 yields 10 boxes.
  return static_cast<int>(std::ceil(1.0 / side - 1e-9));
}

BoxIndex box_of(Point p, double side) {
  if (!(side > 0.0) || side > 1.0) throw ParameterError("box side must lie in (0, 1]");
  const int count = boxes_per_side(side);
  auto clamp_index = [&](double v) {
    const auto k = static_cast<long long>(std::floor(v / side));
    return static_cast<int>(std::clamp<long long>(k, 0, count - 1));
  };
  return {clamp_index(p.x), clamp_index(p.y), side};
}

std::pair<Point, Point> sample_point_pair(RngStream& rng) {
  Point a{rng.uniform(), rng.uniform()};
  Point b{rng.uniform(), rng.uniform()};
  return {a, b};
}

// ---------------------------------------------------------------------------
// DisjointSet

void DisjointSet::reset(std::size_t n) {
  parent_.resize(n);
  size_.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  components_ = n;
  unions_ = 0;
}

std::size_t DisjointSet::add() {
  const auto id = parent_.size();
  parent_.push_back(static_cast<std::uint32_t>(id));
  size_.push_back(1);
  ++components_;
  return id;
}

std::size_t DisjointSet::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = static_cast<std::uint32_t>(root);
    x = next;
  }
  return root;
}

std::size_t DisjointSet::find(std::size_t x) const {
  while (parent_[x] != x) x = parent_[x];
  return x;
}

std::size_t DisjointSet::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = static_cast<std::uint32_t>(a);
  size_[a] += size_[b];
  --components_;
  ++unions_;
  return a;
}

// ---------------------------------------------------------------------------
// OccupancyGrid

OccupancyGrid::OccupancyGrid(double side) : side_(side), count_(boxes_per_side(side)) {
  bits_.assign(static_cast<std::size_t>(count_) * static_cast<std::size_t>(count_), 0);
}

bool OccupancyGrid::mark(int i, int j) {
  auto& bit = bits_[index(i, j)];
  if (bit) return false;
  bit = 1;
  ++occupied_;
  return true;
}

// ---------------------------------------------------------------------------
// ProcessState

ProcessState::ProcessState(double radius, double occupancy_side)
    : radius_(radius), radius_sq_(radius * radius) {
  cell_side_ = std::min(1.0, std::max(radius, kMinCellSide));
  cells_ = boxes_per_side(cell_side_);
  cells_store_.resize(static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_));
  if (occupancy_side > 0.0) occupancy_ = OccupancyGrid(occupancy_side);
}

void ProcessState::neighbor_roots(Point p, std::vector<std::size_t>& roots) const {
  roots.clear();
  if (!(radius_ > 0.0) || points_.empty()) return;
  const BoxIndex home = box_of(p, cell_side_);
  for (int dj = -1; dj <= 1; ++dj) {
    const int cj = home.j + dj;
    if (cj < 0 || cj >= cells_) continue;
    for (int di = -1; di <= 1; ++di) {
      const int ci = home.i + di;
      if (ci < 0 || ci >= cells_) continue;
      const auto& bucket = cells_store_[static_cast<std::size_t>(cj) * cells_ + ci];
      for (const Entry& e : bucket) {
        const double dx = e.x - p.x;
        const double dy = e.y - p.y;
        if (dx * dx + dy * dy > radius_sq_) continue;
        const std::size_t root = dsu_.find(e.id);
        if (std::find(roots.begin(), roots.end(), root) == roots.end()) roots.push_back(root);
      }
    }
  }
}

ComponentStats ProcessState::preview(Point p) const {
  std::vector<std::size_t> roots;
  neighbor_roots(p, roots);
  std::size_t own = 1;
  for (std::size_t root : roots) own += dsu_.root_size(root);
  ComponentStats stats;
  stats.own = own;
  stats.largest = std::max(largest_, own);
  if (!occupancy_.empty_grid()) {
    const BoxIndex b = box_of(p, occupancy_.side());
    stats.newly_occupied = !occupancy_.occupied(b.i, b.j);
  }
  return stats;
}

ComponentStats ProcessState::add_point(Point p) {
  neighbor_roots(p, scratch_);
  const auto id = dsu_.add();
  for (std::size_t root : scratch_) dsu_.unite(id, root);

  points_.push_back(p);
  const BoxIndex cell = box_of(p, cell_side_);
  cells_store_[static_cast<std::size_t>(cell.j) * cells_ + cell.i].push_back(
      Entry{p.x, p.y, static_cast<std::uint32_t>(id)});
  ++round_;

  ComponentStats stats;
  stats.own = dsu_.size_of(id);
  largest_ = std::max(largest_, stats.own);
  stats.largest = largest_;
  if (!occupancy_.empty_grid()) {
    const BoxIndex b = box_of(p, occupancy_.side());
    stats.newly_occupied = occupancy_.mark(b.i, b.j);
  }
  return stats;
}

std::vector<std::size_t> ProcessState::component_sizes() const {
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < dsu_.size(); ++i) {
    if (dsu_.find(i) == i) sizes.push_back(dsu_.root_size(i));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Cell>> occupancy_components(const OccupancyGrid& grid, Adjacency adjacency) {
  std::vector<std::vector<Cell>> components;
  const int s = grid.cells_per_side();
  if (s == 0) return components;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(s) * s, 0);
  auto idx = [s](int i, int j) { return static_cast<std::size_t>(j) * s + i; };

  std::deque<Cell> queue;
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) {
      if (!grid.occupied(i, j) || seen[idx(i, j)]) continue;
      std::vector<Cell> component;
      seen[idx(i, j)] = 1;
      queue.push_back({i, j});
      while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        component.push_back(c);
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            if (adjacency == Adjacency::rook && di != 0 && dj != 0) continue;
            const int ni = c.i + di;
            const int nj = c.j + dj;
            if (!grid.in_range(ni, nj) || !grid.occupied(ni, nj) || seen[idx(ni, nj)]) continue;
            seen[idx(ni, nj)] = 1;
            queue.push_back({ni, nj});
          }
        }
      }
      components.push_back(std::move(component));
    }
  }
  return components;
}

}  // namespace geoach
