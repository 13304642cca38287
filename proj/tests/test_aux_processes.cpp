#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"

#include "geoach/aux_processes.hpp"
#include "geoach/error.hpp"

using namespace geoach;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TEST_CASE("balls and bins trivia") {
  RngStream rng(1);
  CHECK(run_balls_bins(100, 1, BinsPolicy::greedy, rng).max_load == 1);
  CHECK(run_balls_bins(1, 37, BinsPolicy::greedy, rng).max_load == 37);
  CHECK(run_balls_bins(1, 37, BinsPolicy::one_choice, rng).max_load == 37);
  CHECK_THROWS_AS(run_balls_bins(0, 5, BinsPolicy::greedy, rng), ParameterError);
  CHECK_THROWS_AS(run_balls_bins(5, 5, BinsPolicy::custom, rng), ParameterError);
}

TEST_CASE("balls and bins histogram accounts for every ball") {
  RngStream rng(2);
  const auto res = run_balls_bins(1000, 5000, BinsPolicy::greedy, rng);
  std::uint64_t bins = 0;
  std::uint64_t balls = 0;
  for (std::size_t load = 0; load < res.histogram.size(); ++load) {
    bins += res.histogram[load];
    balls += load * res.histogram[load];
  }
  CHECK(bins == 1000);
  CHECK(balls == 5000);
  CHECK(res.histogram.back() > 0);
  CHECK(res.histogram.size() == res.max_load + 1);
}

TEST_CASE("greedy never does worse than one choice on the same samples") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RngStream a(seed);
    RngStream b(seed);
    const auto g = run_balls_bins(4096, 4096, BinsPolicy::greedy, a);
    const auto o = run_balls_bins(4096, 4096, BinsPolicy::one_choice, b);
    CHECK(g.max_load <= o.max_load);
  }
}

TEST_CASE("custom rule reproduces greedy") {
  const BinsRule rule = [](std::span<const std::uint32_t> loads, std::size_t a, std::size_t b) {
    return loads[b] < loads[a] ? b : a;
  };
  RngStream a(5);
  RngStream b(5);
  const auto g = run_balls_bins(500, 2000, BinsPolicy::greedy, a);
  const auto c = run_balls_bins(500, 2000, BinsPolicy::custom, b, rule);
  CHECK(g.histogram == c.histogram);

  RngStream bad(5);
  const BinsRule outside = [](std::span<const std::uint32_t>, std::size_t, std::size_t) { return std::size_t{0}; };
  // Returning a bin that was not sampled is rejected as soon as it happens.
  CHECK_THROWS_AS(run_balls_bins(1000, 2000, BinsPolicy::custom, bad, outside), ParameterError);
}

TEST_CASE("policy names") {
  CHECK(parse_bins_policy("greedy") == BinsPolicy::greedy);
  CHECK(parse_bins_policy("one-choice") == BinsPolicy::one_choice);
  CHECK(std::string(to_string(BinsPolicy::one_choice)) == "one-choice");
  CHECK_THROWS_AS(parse_bins_policy("best"), ParameterError);
  CHECK(parse_vertex_strategy("min-degree-into-selected") == VertexStrategy::min_degree);
  CHECK(parse_vertex_strategy("greedy-min-merge") == VertexStrategy::greedy_min_merge);
  CHECK_THROWS_AS(parse_vertex_strategy("x"), ParameterError);
}

TEST_CASE("coupon collector") {
  RngStream rng(1);
  CHECK(run_coupon_2ccc(2, 1, rng) == 1);  // the first box always counts
  CHECK_THROWS_AS(run_coupon_2ccc(10, 0, rng), ParameterError);
  CHECK_THROWS_AS(run_coupon_2ccc(10, 10, rng), ParameterError);

  // Exact expectation for N=2, s=1 is 1; for N=3, s=1: 1 + (3/2)^2.
  CHECK(coupon_2ccc_expectation(2, 1) == 1.0);
  CHECK(coupon_2ccc_expectation(3, 1) == doctest::Approx(1.0 + 2.25));

  // Independent check of the expectation by simulation at small N.
  double total = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) total += static_cast<double>(run_coupon_2ccc(20, 5, rng));
  CHECK(total / trials == doctest::Approx(coupon_2ccc_expectation(20, 5)).epsilon(0.03));
}

TEST_CASE("coupon runs with larger stop are prefixes") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::uint64_t prev = 0;
    for (std::uint64_t s : {400, 200, 100, 50}) {
      RngStream rng(seed);
      const auto boxes = run_coupon_2ccc(1000, s, rng);
      CHECK(boxes >= prev);
      CHECK(boxes >= 1000 - s);
      prev = boxes;
    }
  }
}

TEST_CASE("G(n, m) sampler") {
  RngStream rng(3);
  const EdgeList g = sample_gnm(50, 1225, rng);  // complete graph
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen(g.edges.begin(), g.edges.end());
  CHECK(seen.size() == 1225);
  for (const auto& [u, v] : g.edges) {
    CHECK(u < v);
    CHECK(v < 50);
  }
  CHECK_THROWS_AS(sample_gnm(50, 1226, rng), ParameterError);

  // Edge frequencies are roughly uniform.
  std::vector<int> hits(45, 0);
  for (int t = 0; t < 9000; ++t) {
    RngStream r(100 + t);
    const EdgeList small = sample_gnm(10, 1, r);
    const auto [u, v] = small.edges[0];
    ++hits[u * 10 - u * (u + 1) / 2 + (v - u - 1)];
  }
  for (int h : hits) {
    CHECK(h > 120);
    CHECK(h < 280);
  }
}

TEST_CASE("vertex process trivia") {
  for (auto strategy : {VertexStrategy::random, VertexStrategy::min_degree, VertexStrategy::greedy_min_merge}) {
    const auto empty = run_vertex_achlioptas(100, 0, strategy, 1);
    CHECK(empty.largest == 1);
    CHECK(empty.selected == 50);
    const auto full = run_vertex_achlioptas(40, 780, strategy, 2);
    CHECK(full.largest == 20);
    const auto odd = run_vertex_achlioptas(41, 0, strategy, 3);
    CHECK(odd.selected == 21);
    CHECK(odd.rounds == 21);
  }
}

TEST_CASE("vertex process selects one of each pair and matches a recomputation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (auto strategy : {VertexStrategy::random, VertexStrategy::min_degree, VertexStrategy::greedy_min_merge}) {
      RngStream graph_rng(seed, 0);
      RngStream play(seed, 1);
      const EdgeList g = sample_gnm(2000, 3000, graph_rng);
      const auto res = run_vertex_achlioptas(g, strategy, play);
      CHECK(res.selected == res.rounds);
      std::set<std::uint32_t> distinct(res.selected_vertices.begin(), res.selected_vertices.end());
      CHECK(distinct.size() == res.selected);
      CHECK(res.largest == largest_induced_component(g, res.selected_vertices));

      const auto again = run_vertex_achlioptas(2000, 3000, strategy, seed);
      CHECK(again.selected_vertices == res.selected_vertices);
    }
  }
}

TEST_CASE("greedy vertex selection keeps components smaller than random") {
  std::vector<double> greedy;
  std::vector<double> random;
  for (std::uint64_t seed = 1; seed <= 9; ++seed) {
    greedy.push_back(static_cast<double>(run_vertex_achlioptas(10000, 40000, VertexStrategy::greedy_min_merge, seed).largest));
    random.push_back(static_cast<double>(run_vertex_achlioptas(10000, 40000, VertexStrategy::random, seed).largest));
  }
  CHECK(median(greedy) <= median(random));
}
