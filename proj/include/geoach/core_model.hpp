// core_model.hpp: points, box dissections, union-find and the evolving geometric graph
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "geoach/rng.hpp"

namespace geoach {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Integer cell coordinates in a square grid.
struct Cell {
  int i = 0;
  int j = 0;
  friend bool operator==(Cell, Cell) = default;
};

// A box of the dissection of the unit square into squares of side `side`.
struct BoxIndex {
  int i = 0;
  int j = 0;
  double side = 0.0;
  Cell cell() const { return {i, j}; }
};

enum class Adjacency { rook, king };

// Number of boxes per unit side for a dissection with the given side length.
// Edge boxes are smaller when 1/side is not an integer.
int boxes_per_side(double side);

// Half-open boxes; points on the top/right edge of the square map to the last box.
BoxIndex box_of(Point p, double side);

std::pair<Point, Point> sample_point_pair(RngStream& rng);

// Union by size with path compression.
class DisjointSet {
 public:
  DisjointSet() = default;
  explicit DisjointSet(std::size_t n) { reset(n); }

  void reset(std::size_t n);
  std::size_t add();  // new singleton, returns its id

  std::size_t find(std::size_t x);
  std::size_t find(std::size_t x) const;  // no compression
  // Returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b);

  std::size_t size_of(std::size_t x) { return size_[find(x)]; }
  std::size_t size() const { return parent_.size(); }
  std::size_t component_count() const { return components_; }
  std::size_t union_count() const { return unions_; }
  std::size_t root_size(std::size_t root) const { return size_[root]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_ = 0;
  std::size_t unions_ = 0;
};

// Occupancy bit-grid over boxes of a fixed side length.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  explicit OccupancyGrid(double side);

  double side() const { return side_; }
  int cells_per_side() const { return count_; }
  bool empty_grid() const { return count_ == 0; }
  bool occupied(int i, int j) const { return bits_[index(i, j)] != 0; }
  bool occupied(Cell c) const { return occupied(c.i, c.j); }
  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < count_ && j < count_; }
  // Returns true if the box was previously empty.
  bool mark(int i, int j);
  std::size_t occupied_count() const { return occupied_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(count_) + static_cast<std::size_t>(i);
  }

  double side_ = 0.0;
  int count_ = 0;
  std::vector<std::uint8_t> bits_;
  std::size_t occupied_ = 0;
};

struct ComponentStats {
  std::size_t largest = 0;       // largest component after the insertion
  std::size_t own = 0;           // size of the inserted point's component
  bool newly_occupied = false;   // the point's occupancy box was empty before
};

// The evolving geometric graph: accepted points, a fixed-radius spatial hash,
// union-find over point indices and (optionally) an occupancy grid.
class ProcessState {
 public:
  // occupancy_side <= 0 disables the occupancy grid.
  explicit ProcessState(double radius, double occupancy_side = 0.0);

  ComponentStats add_point(Point p);
  // What add_point would report, without mutating the state.
  ComponentStats preview(Point p) const;

  double radius() const { return radius_; }
  std::size_t point_count() const { return points_.size(); }
  std::size_t largest() const { return largest_; }
  std::uint64_t round() const { return round_; }
  const std::vector<Point>& points() const { return points_; }
  const OccupancyGrid& occupancy() const { return occupancy_; }
  std::size_t component_size_of(std::size_t point_index) const {
    return dsu_.root_size(dsu_.find(point_index));
  }
  std::size_t component_root_of(std::size_t point_index) const { return dsu_.find(point_index); }
  std::size_t component_count() const { return dsu_.component_count(); }
  std::size_t union_count() const { return dsu_.union_count(); }

  // Sizes of all components, sorted descending.
  std::vector<std::size_t> component_sizes() const;

 private:
  struct Entry {
    double x;
    double y;
    std::uint32_t id;
  };

  // Distinct component roots among accepted points within radius of p.
  void neighbor_roots(Point p, std::vector<std::size_t>& roots) const;

  double radius_;
  double radius_sq_;
  double cell_side_;
  int cells_ = 1;
  std::vector<std::vector<Entry>> cells_store_;
  std::vector<Point> points_;
  DisjointSet dsu_;
  OccupancyGrid occupancy_;
  std::uint64_t round_ = 0;
  std::size_t largest_ = 0;
  std::vector<std::size_t> scratch_;
};

// Connected components of the occupied boxes under the chosen adjacency.
std::vector<std::vector<Cell>> occupancy_components(const OccupancyGrid& grid, Adjacency adjacency);

}  // namespace geoach
