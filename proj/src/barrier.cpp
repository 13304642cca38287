#include "geoach/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "geoach/error.hpp"

namespace geoach {

double a_of_K(double K) {
  if (!(K > 0.0)) throw ParameterError("barrier budget K must be positive");
  if (K > 1.0) return 1.0 / (std::floor(K) + 1.0);
  return 1.0 - (K / 2.0) * (K / 2.0);
}

const char* to_string(BarrierLayout layout) {
  return layout == BarrierLayout::vertical_strips ? "vertical-strips" : "corner-square";
}

int Barrier::block_id(Cell block) const {
  if (!in_block_grid(block)) return -1;
  return id_of_block_[block_index(block)];
}

int Barrier::block_box_end(int block_coord) const { return std::min((block_coord + 1) * h_, boxes_); }

std::vector<Cell> Barrier::barrier_neighbors(Cell block) const {
  std::vector<Cell> out;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if (di == 0 && dj == 0) continue;
      const Cell n{block.i + di, block.j + dj};
      if (contains_block(n)) out.push_back(n);
    }
  }
  return out;
}

int Barrier::piece_of_block(Cell block) const {
  if (!in_block_grid(block)) return -1;
  return piece_of_block_[block_index(block)];
}

std::size_t Barrier::largest_piece() const {
  if (piece_sizes_.empty()) return 0;
  return *std::max_element(piece_sizes_.begin(), piece_sizes_.end());
}

void Barrier::label_pieces() {
  piece_of_block_.assign(static_cast<std::size_t>(z_) * z_, -1);
  piece_sizes_.clear();
  std::deque<Cell> queue;
  for (int j = 0; j < z_; ++j) {
    for (int i = 0; i < z_; ++i) {
      const Cell start{i, j};
      if (contains_block(start) || piece_of_block_[block_index(start)] >= 0) continue;
      const int label = static_cast<int>(piece_sizes_.size());
      std::size_t count = 0;
      piece_of_block_[block_index(start)] = label;
      queue.push_back(start);
      while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        ++count;
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            const Cell n{c.i + di, c.j + dj};
            if (!in_block_grid(n) || contains_block(n) || piece_of_block_[block_index(n)] >= 0) continue;
            piece_of_block_[block_index(n)] = label;
            queue.push_back(n);
          }
        }
      }
      piece_sizes_.push_back(count);
    }
  }
}

Barrier build_barrier(double K, int h, double r) {
  if (!(K > 0.0)) throw ParameterError("barrier budget K must be positive");
  if (h < 1) throw ParameterError("block side h must be at least 1");
  if (!(r > 0.0) || h * r > 1.0) throw ParameterError("need 0 < h*r <= 1");

  Barrier b;
  b.budget_ = K;
  b.h_ = h;
  b.radius_ = r;
  b.boxes_ = boxes_per_side(r);
  b.z_ = (b.boxes_ + h - 1) / h;
  if (b.z_ < 3) throw ParameterError("grid too coarse: fewer than 3 blocks per side");
  const int z = b.z_;
  b.id_of_block_.assign(static_cast<std::size_t>(z) * z, -1);

  auto add = [&b](Cell c) {
    auto& id = b.id_of_block_[b.block_index(c)];
    if (id >= 0) return;
    id = static_cast<int>(b.blocks_.size());
    b.blocks_.push_back(c);
  };

  if (K > 1.0) {
    b.layout_ = BarrierLayout::vertical_strips;
    const auto strips = static_cast<long long>(std::floor(K));
    std::set<int> columns;
    for (long long s = 1; s <= strips; ++s) {
      const auto col = static_cast<int>(std::llround(static_cast<double>(s) * z / static_cast<double>(strips + 1)));
      columns.insert(std::clamp(col, 0, z - 1));
    }
    for (int col : columns) {
      for (int row = 0; row < z; ++row) add({col, row});
    }
  } else {
    b.layout_ = BarrierLayout::corner_square;
    const auto leg = static_cast<int>(std::floor(K / 2.0 * z));
    if (leg > 0) {
      for (int k = 0; k <= leg; ++k) add({leg, k});
      for (int k = 0; k < leg; ++k) add({k, leg});
    }
  }
  b.label_pieces();
  return b;
}

// ---------------------------------------------------------------------------
// Path search

namespace {

// Local view of a block and its barrier neighbours.
class PathRegion {
 public:
  PathRegion(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block) {
    const int h = barrier.block_side();
    const int boxes = barrier.boxes_per_side();
    x0_ = std::max(0, (block.i - 1) * h);
    y0_ = std::max(0, (block.j - 1) * h);
    const int x1 = std::min(boxes, (block.i + 2) * h);
    const int y1 = std::min(boxes, (block.j + 2) * h);
    w_ = x1 - x0_;
    hgt_ = y1 - y0_;
    bx0_ = barrier.block_box_begin(block.i) - x0_;
    bx1_ = barrier.block_box_end(block.i) - x0_;
    by0_ = barrier.block_box_begin(block.j) - y0_;
    by1_ = barrier.block_box_end(block.j) - y0_;

    const std::size_t cells = static_cast<std::size_t>(w_) * hgt_;
    allowed_.assign(cells, 0);
    occupied_.assign(cells, 0);
    for (int y = 0; y < hgt_; ++y) {
      for (int x = 0; x < w_; ++x) {
        const Cell box{x0_ + x, y0_ + y};
        const Cell owner = barrier.block_of_box(box);
        const bool in_region = owner == block || (barrier.contains_block(owner) &&
                                                  std::abs(owner.i - block.i) <= 1 &&
                                                  std::abs(owner.j - block.j) <= 1);
        if (!in_region) continue;
        allowed_[idx(x, y)] = 1;
        if (occupancy.occupied(box)) {
          occupied_[idx(x, y)] = 1;
          occupied_list_.push_back({x, y});
        }
      }
    }
  }

  int width() const { return w_; }
  int height() const { return hgt_; }
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * w_ + x; }
  bool allowed(int x, int y) const { return x >= 0 && y >= 0 && x < w_ && y < hgt_ && allowed_[idx(x, y)]; }
  bool occupied(int x, int y) const { return occupied_[idx(x, y)] != 0; }
  const std::vector<Cell>& occupied_list() const { return occupied_list_; }
  int distance_to_block(int x, int y) const {
    const int dx = std::max({bx0_ - x, 0, x - (bx1_ - 1)});
    const int dy = std::max({by0_ - y, 0, y - (by1_ - 1)});
    return std::max(dx, dy);
  }
  bool in_block(int x, int y) const { return distance_to_block(x, y) == 0; }
  std::size_t region_occupied() const { return occupied_list_.size(); }

 private:
  int x0_ = 0, y0_ = 0, w_ = 0, hgt_ = 0;
  int bx0_ = 0, bx1_ = 0, by0_ = 0, by1_ = 0;
  std::vector<std::uint8_t> allowed_;
  std::vector<std::uint8_t> occupied_;
  std::vector<Cell> occupied_list_;
};

class PathSearch {
 public:
  PathSearch(const PathRegion& region, int length, int max_empty)
      : region_(region),
        length_(length),
        max_empty_(max_empty),
        need_occupied_(std::max(0, length - max_empty)),
        visited_(static_cast<std::size_t>(region.width()) * region.height(), 0) {}

  bool run() {
    if (length_ <= 0) return true;
    if (static_cast<int>(region_.region_occupied()) < need_occupied_) return false;
    for (int y = 0; y < region_.height(); ++y) {
      for (int x = 0; x < region_.width(); ++x) {
        if (!region_.allowed(x, y)) continue;
        if (extend(x, y, 0, 0, 0, false)) return true;
      }
    }
    return false;
  }

 private:
  // `depth` boxes are already on the path; (x, y) is the candidate next box.
  bool extend(int x, int y, int depth, int empties, int occupied, bool touched) {
    const bool occ = region_.occupied(x, y);
    empties += occ ? 0 : 1;
    occupied += occ ? 1 : 0;
    if (empties > max_empty_) return false;
    touched = touched || region_.in_block(x, y);
    ++depth;
    if (depth == length_) return touched;

    const int remaining = length_ - depth;
    if (!touched && region_.distance_to_block(x, y) > remaining) return false;

    visited_[region_.idx(x, y)] = 1;
    const int need_more = need_occupied_ - occupied;
    bool found = false;
    if (need_more <= 0 || reachable_occupied(x, y, remaining, need_more)) {
      // Occupied neighbours first: qualifying paths are found sooner.
      for (int pass = 0; pass < 2 && !found; ++pass) {
        for (int dy = -1; dy <= 1 && !found; ++dy) {
          for (int dx = -1; dx <= 1 && !found; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = x + dx;
            const int ny = y + dy;
            if (!region_.allowed(nx, ny) || visited_[region_.idx(nx, ny)]) continue;
            if (region_.occupied(nx, ny) != (pass == 0)) continue;
            found = extend(nx, ny, depth, empties, occupied, touched);
          }
        }
      }
    }
    visited_[region_.idx(x, y)] = 0;
    return found;
  }

  // Are there at least `need` unvisited occupied boxes within `steps` moves?
  bool reachable_occupied(int x, int y, int steps, int need) const {
    int count = 0;
    for (const Cell& c : region_.occupied_list()) {
      if (visited_[region_.idx(c.i, c.j)]) continue;
      if (std::max(std::abs(c.i - x), std::abs(c.j - y)) > steps) continue;
      if (++count >= need) return true;
    }
    return false;
  }

  const PathRegion& region_;
  int length_;
  int max_empty_;
  int need_occupied_;
  std::vector<std::uint8_t> visited_;
};

}  // namespace

bool barrier_path_exists(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block,
                         int length, int max_empty) {
  if (!barrier.contains_block(block)) return false;
  const PathRegion region(barrier, occupancy, block);
  PathSearch search(region, length, std::max(0, max_empty));
  return search.run();
}

bool is_block_bad(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block) {
  return barrier_path_exists(barrier, occupancy, block, barrier.block_side(), 0);
}

bool dangerous_by_density(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block,
                          int slack) {
  if (!barrier.contains_block(block)) return false;
  const int h = barrier.block_side();
  std::vector<Cell> considered = barrier.barrier_neighbors(block);
  considered.push_back(block);
  std::size_t total = 0;
  std::size_t occupied = 0;
  for (const Cell& b : considered) {
    for (int j = barrier.block_box_begin(b.j); j < barrier.block_box_end(b.j); ++j) {
      for (int i = barrier.block_box_begin(b.i); i < barrier.block_box_end(b.i); ++i) {
        ++total;
        if (occupancy.occupied(i, j)) ++occupied;
      }
    }
  }
  const double threshold = static_cast<double>(h - slack) / (3.0 * h) * static_cast<double>(total);
  return static_cast<double>(occupied) >= threshold;
}

bool is_block_dangerous(const Barrier& barrier, const OccupancyGrid& occupancy, Cell block,
                        const DangerSettings& settings) {
  const int h = barrier.block_side();
  if (uses_exact_danger(h, settings.h_exact)) {
    return barrier_path_exists(barrier, occupancy, block, h, settings.slack);
  }
  return dangerous_by_density(barrier, occupancy, block, settings.slack);
}

int default_slack(std::uint64_t n, int h) {
  int slack = 1;
  if (n >= 4) {
    const double loglog = std::log2(std::log2(static_cast<double>(n)));
    slack = static_cast<int>(std::lround(2.0 * loglog));
  }
  slack = std::max(slack, 1);
  return std::max(0, std::min(slack, h - 1));
}

std::size_t default_list_capacity(int h, std::size_t barrier_blocks) {
  const double scaled = std::ldexp(static_cast<double>(barrier_blocks), -h);
  return std::max<std::size_t>(4, static_cast<std::size_t>(std::llround(scaled)));
}

bool barrier_crossed(const Barrier& barrier, const OccupancyGrid& occupancy) {
  if (barrier.piece_count() < 2) return false;
  for (const auto& component : occupancy_components(occupancy, Adjacency::king)) {
    int seen = -1;
    for (const Cell& box : component) {
      const int piece = barrier.piece_of_block(barrier.block_of_box(box));
      if (piece < 0) continue;
      if (seen < 0) {
        seen = piece;
      } else if (piece != seen) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace geoach
