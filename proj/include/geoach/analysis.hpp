// analysis.hpp: combinatorial toolkit for grid subgraphs and the bounds
// used to analyse the processes.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "geoach/core_model.hpp"

namespace geoach {

// An induced subgraph of the s x s grid. Lattice-based quantities (boundary
// edges) treat the grid as embedded in Z^2.
class GridSubgraph {
 public:
  GridSubgraph(int s, Adjacency adjacency = Adjacency::rook);

  // Members from the low s*s bits of `bits`, cell (i, j) at bit j*s + i. s <= 8.
  static GridSubgraph from_bits(int s, std::uint64_t bits, Adjacency adjacency = Adjacency::rook);

  int side() const { return s_; }
  Adjacency adjacency() const { return adjacency_; }
  bool contains(int i, int j) const {
    return i >= 0 && j >= 0 && i < s_ && j < s_ && members_[index(i, j)] != 0;
  }
  void set(int i, int j, bool member = true);
  std::size_t vertex_count() const { return count_; }

  std::vector<std::vector<Cell>> components() const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * s_ + i; }

  int s_;
  Adjacency adjacency_;
  std::vector<std::uint8_t> members_;
  std::size_t count_ = 0;
};

// e(H, H^c): lattice edges of Z^2 from members to non-members.
std::size_t boundary_edges(const GridSubgraph& h);

// Total vertices in components with at most x vertices.
std::size_t small_components_volume(const GridSubgraph& h, double x);

// lambda_1 = (1/(1+alpha))^2, lambda_{k+1} = lambda_k + ((1-lambda_k)/(1+alpha))^2.
double lambda_k(double alpha, std::uint64_t k);

// Smallest k with lambda_k(alpha) > 1 - eps. Throws if more than `max_k` steps
// would be needed.
std::uint64_t k_for(double eps, double alpha, std::uint64_t max_k = 1'000'000'000ULL);

// A b x b block of boxes with origin box (i0, j0).
struct BBlockGeometry {
  int i0 = 0;
  int j0 = 0;
  int b = 1;
};

struct MarginCounts {
  int lines = 0;  // lines in the margin, floor(eps * b)
  int good = 0;   // lines with at most empty_threshold empty boxes
  int full = 0;   // lines with no empty boxes
};

struct BBlockDiag {
  int b = 0;
  double eps = 0.0;
  MarginCounts top, bottom, left, right;
  bool good = false;
  bool framed = false;
  std::vector<Cell> skewered_with;  // block coordinates of skewered neighbours
};

// Rows are indexed by j (top = largest j), columns by i.
BBlockDiag classify_bblock(const OccupancyGrid& occupancy, const BBlockGeometry& block, double eps,
                           double empty_threshold);

// Two b-blocks sharing a side are skewered when some line crossing the shared
// side is full in both.
bool skewered(const OccupancyGrid& occupancy, const BBlockGeometry& a, const BBlockGeometry& b);

// Classifies the b-block at block coordinates `block` within the tiling of the
// grid by b x b blocks, filling skewered_with for its rook neighbours.
BBlockDiag classify_bblock_in_tiling(const OccupancyGrid& occupancy, int b, Cell block, double eps,
                                     double empty_threshold);

// H(x) = x ln x - x + 1, with H(0) = 1.
double chernoff_h(double x);

// exp(-mu H(k/mu)): bounds P(X >= k) for k >= mu and P(X <= k) for k <= mu.
double chernoff_upper(double mu, double k);

// Unique a in (0,1) with 480 sqrt(a) / (1 - sqrt(a))^2 = c.
double offline_a_of_c(double c);

}  // namespace geoach
