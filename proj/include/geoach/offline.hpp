// offline.hpp: the clairvoyant variant: all n pairs are known up front.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "geoach/barrier.hpp"
#include "geoach/core_model.hpp"
#include "geoach/rng.hpp"
#include "geoach/strategies.hpp"

namespace geoach {

using PointPair = std::pair<Point, Point>;
using PairSet = std::vector<PointPair>;

PairSet sample_pairs(std::size_t n, RngStream& rng);

// Undirected multigraph; self-loops are allowed.
struct MultiGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct ComponentViolation {
  std::vector<std::size_t> vertices;
  std::size_t edge_count = 0;
};

// Orientation with indegree <= 1. `head[e]` is the vertex edge e points into,
// or npos when e lies in a component with more edges than vertices.
struct Orientation {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> head;
  std::vector<ComponentViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Succeeds iff every connected component has at most as many edges as
// vertices (trees and unicyclic components). Trees are oriented away from a
// root; in unicyclic components the cycle is oriented consistently and the
// hanging trees point away from it.
Orientation orient_indegree_one(const MultiGraph& graph);

struct AuxBlockGraph {
  MultiGraph graph;                            // vertices = barrier block ids
  std::vector<std::size_t> edge_round;         // round of each cross-block edge
  std::vector<std::size_t> doubly_hit_rounds;  // per block
};

struct OfflineParams {
  double K = 1.0;
  int h = 100;
};

struct OfflineReport {
  bool orientable = true;
  std::size_t barrier_rounds = 0;      // both points in the barrier
  std::size_t cross_block_rounds = 0;  // ... in two different blocks
  std::size_t max_doubly_hit = 0;      // most doubly-hit rounds for one block
  std::size_t max_points_per_block = 0;
  bool max_within_four = true;
  std::size_t largest_component = 0;
  std::size_t fallback_rounds = 0;     // rounds resolved randomly after orientation failure
};

struct OfflineResult {
  std::vector<Pick> selection;
  OfflineReport report;
};

AuxBlockGraph build_aux_block_graph(const PairSet& pairs, const Barrier& barrier);

// Outside points win (random tie-break); cross-block barrier rounds follow an
// indegree-one orientation of the auxiliary block graph, giving the point to
// the block the edge points into; doubly-hit rounds take the first point.
OfflineResult solve_offline_barrier(const PairSet& pairs, const Barrier& barrier, double r, RngStream& rng);
OfflineResult solve_offline_barrier(const PairSet& pairs, const OfflineParams& params, double r, RngStream& rng);

// Largest component of the geometric graph on the selected points.
std::size_t largest_component_of_selection(const PairSet& pairs, const std::vector<Pick>& selection, double r);

constexpr std::size_t kBruteForceMaxPairs = 22;

struct BruteForceResult {
  std::vector<Pick> selection;
  std::size_t largest = 0;
};

// Exact optimum over all 2^n selections. Throws ParameterError for n > 22.
BruteForceResult brute_force_offline(const PairSet& pairs, double r);

}  // namespace geoach
