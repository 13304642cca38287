#include "geoach/analysis.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "geoach/error.hpp"

namespace geoach {

GridSubgraph::GridSubgraph(int s, Adjacency adjacency)
    : s_(s), adjacency_(adjacency), members_(static_cast<std::size_t>(s) * s, 0) {
  if (s < 0) throw ParameterError("grid side must be non-negative");
}

GridSubgraph GridSubgraph::from_bits(int s, std::uint64_t bits, Adjacency adjacency) {
  if (s > 8) throw ParameterError("from_bits supports s <= 8");
  GridSubgraph g(s, adjacency);
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) {
      if ((bits >> (j * s + i)) & 1) g.set(i, j);
    }
  }
  return g;
}

void GridSubgraph::set(int i, int j, bool member) {
  auto& cell = members_[index(i, j)];
  if (static_cast<bool>(cell) == member) return;
  cell = member ? 1 : 0;
  if (member) {
    ++count_;
  } else {
    --count_;
  }
}

std::vector<std::vector<Cell>> GridSubgraph::components() const {
  std::vector<std::vector<Cell>> out;
  std::vector<std::uint8_t> seen(members_.size(), 0);
  std::deque<Cell> queue;
  for (int j = 0; j < s_; ++j) {
    for (int i = 0; i < s_; ++i) {
      if (!contains(i, j) || seen[index(i, j)]) continue;
      std::vector<Cell> comp;
      seen[index(i, j)] = 1;
      queue.push_back({i, j});
      while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        comp.push_back(c);
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            if ((di == 0 && dj == 0) || (adjacency_ == Adjacency::rook && di != 0 && dj != 0)) continue;
            const int ni = c.i + di;
            const int nj = c.j + dj;
            if (!contains(ni, nj) || seen[index(ni, nj)]) continue;
            seen[index(ni, nj)] = 1;
            queue.push_back({ni, nj});
          }
        }
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

std::size_t boundary_edges(const GridSubgraph& h) {
  std::size_t edges = 0;
  const int s = h.side();
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) {
      if (!h.contains(i, j)) continue;
      edges += h.contains(i + 1, j) ? 0 : 1;
      edges += h.contains(i - 1, j) ? 0 : 1;
      edges += h.contains(i, j + 1) ? 0 : 1;
      edges += h.contains(i, j - 1) ? 0 : 1;
    }
  }
  return edges;
}

std::size_t small_components_volume(const GridSubgraph& h, double x) {
  if (!(x > 0.0)) throw ParameterError("component cap x must be positive");
  std::size_t total = 0;
  for (const auto& comp : h.components()) {
    if (static_cast<double>(comp.size()) <= x) total += comp.size();
  }
  return total;
}

double lambda_k(double alpha, std::uint64_t k) {
  if (alpha < 0.0) throw ParameterError("alpha must be non-negative");
  if (k < 1) throw ParameterError("k must be at least 1");
  const double scale = 1.0 / (1.0 + alpha);
  double lambda = scale * scale;
  for (std::uint64_t i = 1; i < k; ++i) {
    const double step = (1.0 - lambda) * scale;
    lambda += step * step;
  }
  return lambda;
}

std::uint64_t k_for(double eps, double alpha, std::uint64_t max_k) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  if (alpha < 0.0) throw ParameterError("alpha must be non-negative");
  const double scale = 1.0 / (1.0 + alpha);
  double lambda = scale * scale;
  std::uint64_t k = 1;
  while (!(lambda > 1.0 - eps)) {
    if (k >= max_k) throw ParameterError("k_for: iteration cap exceeded");
    const double step = (1.0 - lambda) * scale;
    lambda += step * step;
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// b-blocks

namespace {

int count_empty(const OccupancyGrid& occ, int i0, int j0, int di, int dj, int length) {
  int empty = 0;
  for (int t = 0; t < length; ++t) {
    const int i = i0 + di * t;
    const int j = j0 + dj * t;
    if (!occ.in_range(i, j) || !occ.occupied(i, j)) ++empty;
  }
  return empty;
}

bool row_full(const OccupancyGrid& occ, const BBlockGeometry& g, int j) {
  return count_empty(occ, g.i0, j, 1, 0, g.b) == 0;
}

bool column_full(const OccupancyGrid& occ, const BBlockGeometry& g, int i) {
  return count_empty(occ, i, g.j0, 0, 1, g.b) == 0;
}

}  // namespace

BBlockDiag classify_bblock(const OccupancyGrid& occupancy, const BBlockGeometry& g, double eps,
                           double empty_threshold) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  const int margin = static_cast<int>(std::floor(eps * g.b));
  if (margin < 1) throw ParameterError("need eps * b >= 1");

  BBlockDiag d;
  d.b = g.b;
  d.eps = eps;
  auto tally = [&](MarginCounts& m, bool rows, int first, int step) {
    m.lines = margin;
    for (int t = 0; t < margin; ++t) {
      const int line = first + step * t;
      const int empty = rows ? count_empty(occupancy, g.i0, line, 1, 0, g.b)
                             : count_empty(occupancy, line, g.j0, 0, 1, g.b);
      if (static_cast<double>(empty) <= empty_threshold) ++m.good;
      if (empty == 0) ++m.full;
    }
  };
  tally(d.top, true, g.j0 + g.b - 1, -1);
  tally(d.bottom, true, g.j0, 1);
  tally(d.left, false, g.i0, 1);
  tally(d.right, false, g.i0 + g.b - 1, -1);

  // "At least three quarters" of each margin's lines are good.
  auto mostly_good = [](const MarginCounts& m) { return 4 * m.good >= 3 * m.lines; };
  d.good = mostly_good(d.top) && mostly_good(d.bottom) && mostly_good(d.left) && mostly_good(d.right);
  d.framed = d.top.full > 0 && d.bottom.full > 0 && d.left.full > 0 && d.right.full > 0;
  return d;
}

bool skewered(const OccupancyGrid& occupancy, const BBlockGeometry& a, const BBlockGeometry& b) {
  if (a.b != b.b) return false;
  if (a.j0 == b.j0 && std::abs(a.i0 - b.i0) == a.b) {
    for (int j = a.j0; j < a.j0 + a.b; ++j) {
      if (row_full(occupancy, a, j) && row_full(occupancy, b, j)) return true;
    }
    return false;
  }
  if (a.i0 == b.i0 && std::abs(a.j0 - b.j0) == a.b) {
    for (int i = a.i0; i < a.i0 + a.b; ++i) {
      if (column_full(occupancy, a, i) && column_full(occupancy, b, i)) return true;
    }
    return false;
  }
  return false;
}

BBlockDiag classify_bblock_in_tiling(const OccupancyGrid& occupancy, int b, Cell block, double eps,
                                     double empty_threshold) {
  if (b < 1) throw ParameterError("b must be positive");
  const int z = occupancy.cells_per_side() / b;
  const BBlockGeometry g{block.i * b, block.j * b, b};
  BBlockDiag d = classify_bblock(occupancy, g, eps, empty_threshold);
  const Cell neighbours[] = {{block.i + 1, block.j}, {block.i - 1, block.j}, {block.i, block.j + 1}, {block.i, block.j - 1}};
  for (const Cell& n : neighbours) {
    if (n.i < 0 || n.j < 0 || n.i >= z || n.j >= z) continue;
    if (skewered(occupancy, g, BBlockGeometry{n.i * b, n.j * b, b})) d.skewered_with.push_back(n);
  }
  return d;
}

// ---------------------------------------------------------------------------

double chernoff_h(double x) {
  if (x < 0.0) throw ParameterError("H(x) needs x >= 0");
  if (x == 0.0) return 1.0;
  return x * std::log(x) - x + 1.0;
}

double chernoff_upper(double mu, double k) {
  if (!(mu > 0.0)) throw ParameterError("mu must be positive");
  if (k < 0.0) throw ParameterError("k must be non-negative");
  return std::exp(-mu * chernoff_h(k / mu));
}

double offline_a_of_c(double c) {
  if (!(c > 0.0)) throw ParameterError("c must be positive");
  auto f = [](double u) { return 480.0 * u / ((1.0 - u) * (1.0 - u)); };
  // f is increasing on (0, 1) from 0 to infinity; bisect on u = sqrt(a).
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < c) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  const double u = 0.5 * (lo + hi);
  return u * u;
}

}  // namespace geoach
