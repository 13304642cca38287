// aux_processes.hpp: balls-and-bins, the two-choices coupon collector and the
// vertex Achlioptas process.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "geoach/rng.hpp"

namespace geoach {

enum class BinsPolicy { greedy, one_choice, custom };

BinsPolicy parse_bins_policy(std::string_view name);
const char* to_string(BinsPolicy policy);

// Custom rule: given current loads and the two sampled bins, return the bin
// that receives the ball.
using BinsRule = std::function<std::size_t(std::span<const std::uint32_t> loads, std::size_t a, std::size_t b)>;

struct BinsState {
  std::vector<std::uint32_t> loads;
  std::uint32_t max_load = 0;
  std::uint64_t rounds = 0;
};

struct BallsBinsResult {
  std::uint32_t max_load = 0;
  std::vector<std::uint64_t> histogram;  // histogram[l] = bins holding l balls
};

// Every round samples two bins (a, b) from `rng`, regardless of policy, so runs
// with the same stream are paired. greedy: lesser-loaded bin, ties to a.
// one_choice: always a.
BallsBinsResult run_balls_bins(std::size_t n_bins, std::uint64_t rounds, BinsPolicy policy, RngStream& rng,
                               const BinsRule& rule = {});

// Two-choices coupon collector over N types. A box holds two uniform types and
// counts only if both are types not yet collected; then exactly one is added.
// Returns boxes bought until N - stop_remaining types are held.
std::uint64_t run_coupon_2ccc(std::uint64_t N, std::uint64_t stop_remaining, RngStream& rng);

// sum_{i=1}^{N-s} (N / (N - i + 1))^2
double coupon_2ccc_expectation(std::uint64_t N, std::uint64_t stop_remaining);

enum class VertexStrategy { random, min_degree, greedy_min_merge };

VertexStrategy parse_vertex_strategy(std::string_view name);
const char* to_string(VertexStrategy strategy);

struct EdgeList {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Uniform G(n, m) by a partial Fisher-Yates shuffle over edge indices.
EdgeList sample_gnm(std::size_t n, std::uint64_t m, RngStream& rng);

struct VertexRunResult {
  std::size_t largest = 0;
  std::size_t selected = 0;
  std::size_t rounds = 0;
  std::vector<std::uint32_t> selected_vertices;
};

// Reveals the vertices of `graph` two at a time in a uniform random order and
// keeps one per pair. With odd n the final vertex is a forced single reveal.
VertexRunResult run_vertex_achlioptas(const EdgeList& graph, VertexStrategy strategy, RngStream& rng);

// Samples G(n, m) from stream (seed, 0); the reveal order and choices use (seed, 1).
VertexRunResult run_vertex_achlioptas(std::size_t n, std::uint64_t m, VertexStrategy strategy, std::uint64_t seed);

// Largest component of the subgraph induced by `vertices`.
std::size_t largest_induced_component(const EdgeList& graph, std::span<const std::uint32_t> vertices);

}  // namespace geoach
