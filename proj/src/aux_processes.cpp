#include "geoach/aux_processes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "geoach/core_model.hpp"
#include "geoach/error.hpp"

namespace geoach {

BinsPolicy parse_bins_policy(std::string_view name) {
  if (name == "greedy") return BinsPolicy::greedy;
  if (name == "one-choice" || name == "one_choice") return BinsPolicy::one_choice;
  if (name == "custom") return BinsPolicy::custom;
  throw ParameterError("unknown balls-and-bins policy: " + std::string(name));
}

const char* to_string(BinsPolicy policy) {
  switch (policy) {
    case BinsPolicy::greedy: return "greedy";
    case BinsPolicy::one_choice: return "one-choice";
    case BinsPolicy::custom: return "custom";
  }
  return "unknown";
}

BallsBinsResult run_balls_bins(std::size_t n_bins, std::uint64_t rounds, BinsPolicy policy, RngStream& rng,
                               const BinsRule& rule) {
  if (n_bins == 0) throw ParameterError("need at least one bin");
  if (rounds == 0) throw ParameterError("need at least one round");
  if (policy == BinsPolicy::custom && !rule) throw ParameterError("custom policy needs a rule");

  BinsState state;
  state.loads.assign(n_bins, 0);
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const auto a = static_cast<std::size_t>(rng.below(n_bins));
    const auto b = static_cast<std::size_t>(rng.below(n_bins));
    std::size_t target = a;
    switch (policy) {
      case BinsPolicy::greedy:
        target = state.loads[b] < state.loads[a] ? b : a;
        break;
      case BinsPolicy::one_choice:
        break;
      case BinsPolicy::custom:
        target = rule(state.loads, a, b);
        if (target != a && target != b) throw ParameterError("custom rule must return one of the sampled bins");
        break;
    }
    state.max_load = std::max(state.max_load, ++state.loads[target]);
    ++state.rounds;
  }

  BallsBinsResult result;
  result.max_load = state.max_load;
  result.histogram.assign(state.max_load + 1, 0);
  for (std::uint32_t load : state.loads) ++result.histogram[load];
  return result;
}

std::uint64_t run_coupon_2ccc(std::uint64_t N, std::uint64_t stop_remaining, RngStream& rng) {
  if (N < 2 || stop_remaining < 1 || stop_remaining >= N) throw ParameterError("need 1 <= s < N");
  std::vector<std::uint8_t> have(N, 0);
  std::uint64_t collected = 0;
  std::uint64_t boxes = 0;
  const std::uint64_t goal = N - stop_remaining;
  while (collected < goal) {
    const auto a = rng.below(N);
    const auto b = rng.below(N);
    ++boxes;
    if (have[a] || have[b]) continue;
    have[a] = 1;
    ++collected;
  }
  return boxes;
}

double coupon_2ccc_expectation(std::uint64_t N, std::uint64_t stop_remaining) {
  double total = 0.0;
  const double n = static_cast<double>(N);
  for (std::uint64_t i = 1; i + stop_remaining <= N; ++i) {
    const double ratio = n / static_cast<double>(N - i + 1);
    total += ratio * ratio;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Vertex process

VertexStrategy parse_vertex_strategy(std::string_view name) {
  if (name == "random") return VertexStrategy::random;
  if (name == "min-degree" || name == "min-degree-into-selected") return VertexStrategy::min_degree;
  if (name == "greedy" || name == "greedy-min-merge") return VertexStrategy::greedy_min_merge;
  throw ParameterError("unknown vertex strategy: " + std::string(name));
}

const char* to_string(VertexStrategy strategy) {
  switch (strategy) {
    case VertexStrategy::random: return "random";
    case VertexStrategy::min_degree: return "min-degree";
    case VertexStrategy::greedy_min_merge: return "greedy-min-merge";
  }
  return "unknown";
}

namespace {

// Row-major index over the strict upper triangle: row u starts at
// u(n-1) - u(u-1)/2.
std::pair<std::uint32_t, std::uint32_t> decode_edge_index(std::uint64_t n, std::uint64_t index) {
  auto row_start = [n](std::uint64_t u) { return u * (n - 1) - u * (u - 1) / 2; };
  const double nn = static_cast<double>(n);
  const double guess = std::floor(((2.0 * nn - 1.0) - std::sqrt((2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(index))) / 2.0);
  auto u = static_cast<std::uint64_t>(std::max(0.0, guess));
  while (u > 0 && row_start(u) > index) --u;
  while (u + 1 < n && row_start(u + 1) <= index) ++u;
  const std::uint64_t v = u + 1 + (index - row_start(u));
  return {static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)};
}

}  // namespace

EdgeList sample_gnm(std::size_t n, std::uint64_t m, RngStream& rng) {
  const std::uint64_t total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > total) throw ParameterError("m exceeds n(n-1)/2");
  EdgeList g;
  g.n = n;
  g.edges.reserve(m);

  // Virtual array [0, total) with only swapped slots materialised.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  swapped.reserve(2 * m);
  auto value_at = [&swapped](std::uint64_t k) {
    const auto it = swapped.find(k);
    return it == swapped.end() ? k : it->second;
  };
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t j = i + rng.below(total - i);
    const std::uint64_t vi = value_at(i);
    const std::uint64_t vj = value_at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    const auto [u, v] = decode_edge_index(n, vj);
    g.edges.emplace_back(u, v);
  }
  return g;
}

namespace {

struct CsrGraph {
  std::vector<std::size_t> offset;
  std::vector<std::uint32_t> target;
};

CsrGraph build_adjacency(const EdgeList& g) {
  CsrGraph adj;
  adj.offset.assign(g.n + 1, 0);
  for (const auto& [u, v] : g.edges) {
    ++adj.offset[u + 1];
    ++adj.offset[v + 1];
  }
  std::partial_sum(adj.offset.begin(), adj.offset.end(), adj.offset.begin());
  adj.target.resize(adj.offset.back());
  std::vector<std::size_t> fill(adj.offset.begin(), adj.offset.end() - 1);
  for (const auto& [u, v] : g.edges) {
    adj.target[fill[u]++] = v;
    adj.target[fill[v]++] = u;
  }
  return adj;
}

}  // namespace

VertexRunResult run_vertex_achlioptas(const EdgeList& graph, VertexStrategy strategy, RngStream& rng) {
  const std::size_t n = graph.n;
  const CsrGraph adj = build_adjacency(graph);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  }

  std::vector<std::uint8_t> selected(n, 0);
  DisjointSet dsu(n);
  std::size_t largest = 0;
  std::vector<std::size_t> roots;

  auto neighbour_roots = [&](std::uint32_t v) {
    roots.clear();
    for (std::size_t k = adj.offset[v]; k < adj.offset[v + 1]; ++k) {
      const std::uint32_t w = adj.target[k];
      if (!selected[w]) continue;
      const std::size_t root = dsu.find(w);
      if (std::find(roots.begin(), roots.end(), root) == roots.end()) roots.push_back(root);
    }
  };
  auto merged_size = [&](std::uint32_t v) {
    neighbour_roots(v);
    std::size_t own = 1;
    for (std::size_t root : roots) own += dsu.root_size(root);
    return own;
  };
  auto degree_into_selected = [&](std::uint32_t v) {
    std::size_t d = 0;
    for (std::size_t k = adj.offset[v]; k < adj.offset[v + 1]; ++k) d += selected[adj.target[k]];
    return d;
  };
  auto select = [&](std::uint32_t v) {
    selected[v] = 1;
    for (std::size_t k = adj.offset[v]; k < adj.offset[v + 1]; ++k) {
      const std::uint32_t w = adj.target[k];
      if (selected[w]) dsu.unite(v, w);
    }
    largest = std::max(largest, dsu.size_of(v));
  };

  VertexRunResult result;
  for (std::size_t t = 0; t + 1 < n; t += 2) {
    const std::uint32_t a = order[t];
    const std::uint32_t b = order[t + 1];
    std::uint32_t pick = a;
    switch (strategy) {
      case VertexStrategy::random:
        pick = rng.coin() ? b : a;
        break;
      case VertexStrategy::min_degree:
        pick = degree_into_selected(b) < degree_into_selected(a) ? b : a;
        break;
      case VertexStrategy::greedy_min_merge: {
        const std::size_t own_a = merged_size(a);
        const std::size_t own_b = merged_size(b);
        const std::size_t largest_a = std::max(largest, own_a);
        const std::size_t largest_b = std::max(largest, own_b);
        if (largest_b < largest_a || (largest_b == largest_a && own_b < own_a)) pick = b;
        break;
      }
    }
    select(pick);
    result.selected_vertices.push_back(pick);
    ++result.rounds;
  }
  if (n % 2 == 1) {
    select(order[n - 1]);
    result.selected_vertices.push_back(order[n - 1]);
    ++result.rounds;
  }
  result.largest = largest;
  result.selected = result.selected_vertices.size();
  return result;
}

VertexRunResult run_vertex_achlioptas(std::size_t n, std::uint64_t m, VertexStrategy strategy, std::uint64_t seed) {
  RngStream graph_rng(seed, 0);
  RngStream play_rng(seed, 1);
  const EdgeList g = sample_gnm(n, m, graph_rng);
  return run_vertex_achlioptas(g, strategy, play_rng);
}

std::size_t largest_induced_component(const EdgeList& graph, std::span<const std::uint32_t> vertices) {
  std::vector<std::uint8_t> member(graph.n, 0);
  for (auto v : vertices) member[v] = 1;
  DisjointSet dsu(graph.n);
  for (const auto& [u, v] : graph.edges) {
    if (member[u] && member[v]) dsu.unite(u, v);
  }
  std::size_t best = 0;
  for (auto v : vertices) best = std::max(best, dsu.size_of(v));
  return best;
}

}  // namespace geoach
