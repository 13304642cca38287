#include "geoach/offline.hpp"

#include <algorithm>
#include <bit>

#include "geoach/error.hpp"

namespace geoach {

PairSet sample_pairs(std::size_t n, RngStream& rng) {
  PairSet pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pairs.push_back(sample_point_pair(rng));
  return pairs;
}

Orientation orient_indegree_one(const MultiGraph& graph) {
  const std::size_t n = graph.vertex_count;
  const std::size_t m = graph.edges.size();
  Orientation result;
  result.head.assign(m, Orientation::npos);

  DisjointSet dsu(n);
  for (const auto& [u, v] : graph.edges) dsu.unite(u, v);
  std::vector<std::size_t> comp_vertices(n, 0);
  std::vector<std::size_t> comp_edges(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++comp_vertices[dsu.find(v)];
  for (const auto& e : graph.edges) ++comp_edges[dsu.find(e.first)];

  std::vector<std::uint8_t> bad_root(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (dsu.find(v) == v && comp_edges[v] > comp_vertices[v]) bad_root[v] = 1;
  }
  for (std::size_t root = 0; root < n; ++root) {
    if (!bad_root[root]) continue;
    ComponentViolation violation;
    violation.edge_count = comp_edges[root];
    for (std::size_t v = 0; v < n; ++v) {
      if (dsu.find(v) == root) violation.vertices.push_back(v);
    }
    result.violations.push_back(std::move(violation));
  }

  // Incidence lists restricted to good components; a self-loop counts twice.
  std::vector<std::vector<std::size_t>> incident(n);
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t e = 0; e < m; ++e) {
    const auto [u, v] = graph.edges[e];
    if (bad_root[dsu.find(u)]) continue;
    incident[u].push_back(e);
    incident[v].push_back(e);
    degree[u] += 1;
    degree[v] += 1;
  }
  std::vector<std::uint8_t> used(m, 0);
  auto other_end = [&graph](std::size_t e, std::size_t v) {
    const auto [a, b] = graph.edges[e];
    return a == v ? b : a;
  };

  // Peel leaves: each leaf receives its last remaining edge.
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const std::size_t leaf = stack.back();
    stack.pop_back();
    if (degree[leaf] != 1) continue;
    for (std::size_t e : incident[leaf]) {
      if (used[e]) continue;
      used[e] = 1;
      result.head[e] = leaf;
      degree[leaf] = 0;
      const std::size_t parent = other_end(e, leaf);
      if (--degree[parent] == 1) stack.push_back(parent);
      break;
    }
  }

  // What remains in each good component is a single cycle; walk it.
  for (std::size_t start = 0; start < n; ++start) {
    if (degree[start] == 0) continue;
    std::size_t current = start;
    while (true) {
      std::size_t next_edge = Orientation::npos;
      for (std::size_t e : incident[current]) {
        if (!used[e]) {
          next_edge = e;
          break;
        }
      }
      if (next_edge == Orientation::npos) break;
      used[next_edge] = 1;
      const std::size_t next = other_end(next_edge, current);
      result.head[next_edge] = next;
      degree[current] = 0;
      current = next;
    }
    degree[current] = 0;
  }
  return result;
}

AuxBlockGraph build_aux_block_graph(const PairSet& pairs, const Barrier& barrier) {
  AuxBlockGraph aux;
  aux.graph.vertex_count = barrier.size();
  aux.doubly_hit_rounds.assign(barrier.size(), 0);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const int b1 = barrier.block_id(barrier.block_of_box(barrier.box_of_point(pairs[t].first)));
    const int b2 = barrier.block_id(barrier.block_of_box(barrier.box_of_point(pairs[t].second)));
    if (b1 < 0 || b2 < 0) continue;
    if (b1 == b2) {
      ++aux.doubly_hit_rounds[static_cast<std::size_t>(b1)];
    } else {
      aux.graph.edges.emplace_back(static_cast<std::size_t>(b1), static_cast<std::size_t>(b2));
      aux.edge_round.push_back(t);
    }
  }
  return aux;
}

std::size_t largest_component_of_selection(const PairSet& pairs, const std::vector<Pick>& selection, double r) {
  ProcessState state(r);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    state.add_point(selection[t] == Pick::first ? pairs[t].first : pairs[t].second);
  }
  return state.largest();
}

OfflineResult solve_offline_barrier(const PairSet& pairs, const Barrier& barrier, double r, RngStream& rng) {
  OfflineResult result;
  result.selection.assign(pairs.size(), Pick::first);
  OfflineReport& report = result.report;

  const AuxBlockGraph aux = build_aux_block_graph(pairs, barrier);
  const Orientation orientation = orient_indegree_one(aux.graph);
  report.orientable = orientation.ok();
  report.cross_block_rounds = aux.graph.edges.size();
  if (!aux.doubly_hit_rounds.empty()) {
    report.max_doubly_hit = *std::max_element(aux.doubly_hit_rounds.begin(), aux.doubly_hit_rounds.end());
  }

  std::vector<std::size_t> edge_of_round(pairs.size(), Orientation::npos);
  for (std::size_t e = 0; e < aux.edge_round.size(); ++e) edge_of_round[aux.edge_round[e]] = e;

  std::vector<std::size_t> per_block(barrier.size(), 0);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const auto& [p1, p2] = pairs[t];
    const int b1 = barrier.block_id(barrier.block_of_box(barrier.box_of_point(p1)));
    const int b2 = barrier.block_id(barrier.block_of_box(barrier.box_of_point(p2)));
    Pick pick;
    if (b1 < 0 && b2 < 0) {
      pick = rng.coin() ? Pick::second : Pick::first;
    } else if (b1 < 0) {
      pick = Pick::first;
    } else if (b2 < 0) {
      pick = Pick::second;
    } else {
      ++report.barrier_rounds;
      if (b1 == b2) {
        pick = Pick::first;
      } else {
        const std::size_t head = orientation.head[edge_of_round[t]];
        if (head == Orientation::npos) {
          ++report.fallback_rounds;
          pick = rng.coin() ? Pick::second : Pick::first;
        } else {
          pick = head == static_cast<std::size_t>(b1) ? Pick::first : Pick::second;
        }
      }
      ++per_block[static_cast<std::size_t>(pick == Pick::first ? b1 : b2)];
    }
    result.selection[t] = pick;
  }
  if (!per_block.empty()) report.max_points_per_block = *std::max_element(per_block.begin(), per_block.end());
  report.max_within_four = report.max_points_per_block <= 4;
  report.largest_component = largest_component_of_selection(pairs, result.selection, r);
  return result;
}

OfflineResult solve_offline_barrier(const PairSet& pairs, const OfflineParams& params, double r, RngStream& rng) {
  return solve_offline_barrier(pairs, build_barrier(params.K, params.h, r), r, rng);
}

BruteForceResult brute_force_offline(const PairSet& pairs, double r) {
  const std::size_t n = pairs.size();
  if (n > kBruteForceMaxPairs) throw ParameterError("brute force is limited to 22 pairs");
  BruteForceResult best;
  if (n == 0) return best;

  // Points 2t and 2t+1 are the two offers of round t.
  const std::size_t points = 2 * n;
  std::vector<Point> all(points);
  for (std::size_t t = 0; t < n; ++t) {
    all[2 * t] = pairs[t].first;
    all[2 * t + 1] = pairs[t].second;
  }
  const double r2 = r * r;
  std::vector<std::uint64_t> adjacency(points, 0);
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = a + 1; b < points; ++b) {
      if (r > 0.0 && squared_distance(all[a], all[b]) <= r2) {
        adjacency[a] |= std::uint64_t{1} << b;
        adjacency[b] |= std::uint64_t{1} << a;
      }
    }
  }

  best.largest = n + 1;
  std::uint64_t best_mask = 0;
  const std::uint64_t selections = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < selections; ++mask) {
    std::uint64_t chosen = 0;
    for (std::size_t t = 0; t < n; ++t) {
      chosen |= std::uint64_t{1} << (2 * t + ((mask >> t) & 1));
    }
    std::size_t largest = 0;
    std::uint64_t remaining = chosen;
    while (remaining != 0 && largest < best.largest) {
      std::uint64_t component = remaining & (~remaining + 1);
      std::uint64_t frontier = component;
      while (frontier != 0) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        const std::uint64_t fresh = adjacency[static_cast<std::size_t>(v)] & chosen & ~component;
        component |= fresh;
        frontier |= fresh;
      }
      remaining &= ~component;
      largest = std::max<std::size_t>(largest, static_cast<std::size_t>(std::popcount(component)));
    }
    if (largest < best.largest) {
      best.largest = largest;
      best_mask = mask;
    }
  }
  best.selection.resize(n);
  for (std::size_t t = 0; t < n; ++t) best.selection[t] = ((best_mask >> t) & 1) ? Pick::second : Pick::first;
  return best;
}

}  // namespace geoach
