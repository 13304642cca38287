// barrier.hpp: a barrier of h x h box blocks cutting the unit square into
// small pieces, plus the bad/dangerous block tests used to defend it.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "geoach/core_model.hpp"

namespace geoach {

// Largest piece fraction left by a barrier of budget K (in units of the block
// grid side):
//   a(K) = 1 / (floor(K) + 1)   if K > 1
//   a(K) = 1 - (K/2)^2          if K <= 1
double a_of_K(double K);

enum class BarrierLayout { vertical_strips, corner_square };

const char* to_string(BarrierLayout layout);

class Barrier {
 public:
  double budget() const { return budget_; }
  int block_side() const { return h_; }
  double radius() const { return radius_; }
  int boxes_per_side() const { return boxes_; }
  int blocks_per_side() const { return z_; }
  BarrierLayout layout() const { return layout_; }

  const std::vector<Cell>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  bool in_block_grid(Cell block) const {
    return block.i >= 0 && block.j >= 0 && block.i < z_ && block.j < z_;
  }
  // Position of the block in blocks(), or -1 if it is not a barrier block.
  int block_id(Cell block) const;
  bool contains_block(Cell block) const { return block_id(block) >= 0; }
  Cell block_of_box(Cell box) const { return {box.i / h_, box.j / h_}; }
  bool contains_box(Cell box) const { return contains_block(block_of_box(box)); }
  Cell box_of_point(Point p) const { return box_of(p, radius_).cell(); }
  bool contains_point(Point p) const { return contains_box(box_of_point(p)); }

  // Half-open box range [lo, hi) covered by a block along one axis; edge
  // blocks are truncated when the box grid is ragged.
  int block_box_begin(int block_coord) const { return block_coord * h_; }
  int block_box_end(int block_coord) const;

  // Barrier blocks that are king-adjacent to `block` (excluding it).
  std::vector<Cell> barrier_neighbors(Cell block) const;

  // Pieces are the king-connected components of the non-barrier blocks.
  int piece_of_block(Cell block) const;
  int piece_count() const { return static_cast<int>(piece_sizes_.size()); }
  // Piece sizes in blocks.
  const std::vector<std::size_t>& piece_sizes() const { return piece_sizes_; }
  std::size_t largest_piece() const;

 private:
  friend Barrier build_barrier(double K, int h, double r);

  std::size_t block_index(Cell b) const {
    return static_cast<std::size_t>(b.j) * static_cast<std::size_t>(z_) + static_cast<std::size_t>(b.i);
  }
  void label_pieces();

  double budget_ = 0.0;
  int h_ = 1;
  double radius_ = 1.0;
  int boxes_ = 0;
  int z_ = 0;
  BarrierLayout layout_ = BarrierLayout::vertical_strips;
  std::vector<Cell> blocks_;
  std::vector<int> id_of_block_;
  std::vector<int> piece_of_block_;
  std::vector<std::size_t> piece_sizes_;
};

// Builds the barrier for budget K with blocks of h x h boxes of side r.
// K > 1: floor(K) equally spaced full-height strips one block thick.
// K <= 1: an L-shaped fence of two legs of floor(K/2 * z) blocks cutting off a
// corner square.
// Throws ParameterError if h*r > 1, K <= 0, or the block grid has fewer than 3
// blocks per side.
Barrier build_barrier(double K, int h, double r);

// Exhaustive search for a simple king's-move path of `length` boxes that uses
// at least one box of `block`, stays inside `block` and its barrier
// neighbours, and has at most `max_empty` empty boxes.
bool barrier_path_exists(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block,
                         int length, int max_empty);

// A length-h path of occupied barrier boxes touches the block.
bool is_block_bad(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block);

struct DangerSettings {
  int slack = 1;
  int h_exact = 12;  // exact search up to this block side, surrogate above
};

inline bool uses_exact_danger(int h, int h_exact) { return h <= h_exact; }

// Density surrogate used when exact search is too expensive: dangerous when
// the occupied boxes in the block and its barrier neighbours reach
// (h - slack) / (3h) of the boxes considered.
bool dangerous_by_density(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block,
                          int slack);

bool is_block_dangerous(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block,
                        const DangerSettings& settings);

// round(2 log2 log2 n), clamped to [1, h - 1].
int default_slack(std::uint64_t n, int h);

// max(4, round(2^-h * barrier_blocks)).
std::size_t default_list_capacity(int h, std::size_t barrier_blocks);

struct BlockState {
  std::size_t occupied_boxes = 0;
  bool dangerous = false;  // monotone
  bool bad = false;        // monotone
  std::optional<std::size_t> list_slot;
};

// Some king-connected set of occupied boxes joins two different pieces.
// The occupancy grid must use boxes of the barrier's radius.
bool barrier_crossed(const Barrier& barrier, const OccupancyGrid& occupancy);

}  // namespace geoach
