#include "geoach/strategies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "geoach/error.hpp"

namespace geoach {

const char* to_string(ChoiceReason reason) {
  switch (reason) {
    case ChoiceReason::outside_barrier: return "outside-barrier";
    case ChoiceReason::pseudo_safe: return "pseudo-safe";
    case ChoiceReason::least_played_list: return "least-played-list";
    case ChoiceReason::random: return "random";
    case ChoiceReason::in_target_square: return "in-target-square";
    case ChoiceReason::greedy: return "greedy";
  }
  return "unknown";
}

namespace {

Pick random_pick(RngStream& rng) { return rng.coin() ? Pick::second : Pick::first; }

}  // namespace

// ---------------------------------------------------------------------------
// PseudoDangerList

PseudoDangerList::PseudoDangerList(std::size_t capacity, std::size_t barrier_blocks)
    : slots_(capacity, -1), plays_(capacity, 0), slot_of_block_(barrier_blocks, -1) {
  if (capacity == 0) throw ParameterError("pseudo-dangerous list capacity must be positive");
}

std::optional<std::size_t> PseudoDangerList::slot_of(int block_id) const {
  if (block_id < 0 || static_cast<std::size_t>(block_id) >= slot_of_block_.size()) return std::nullopt;
  const int slot = slot_of_block_[static_cast<std::size_t>(block_id)];
  if (slot < 0) return std::nullopt;
  return static_cast<std::size_t>(slot);
}

std::size_t PseudoDangerList::max_play_count() const {
  return plays_.empty() ? 0 : *std::max_element(plays_.begin(), plays_.end());
}

bool PseudoDangerList::insert_dangerous(int block_id, const std::vector<BlockState>& states) {
  if (slot_of(block_id)) return true;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const int current = slots_[s];
    if (current >= 0 && states[static_cast<std::size_t>(current)].dangerous) continue;
    if (current >= 0) slot_of_block_[static_cast<std::size_t>(current)] = -1;
    slots_[s] = block_id;
    slot_of_block_[static_cast<std::size_t>(block_id)] = static_cast<int>(s);
    return true;
  }
  overflowed_ = true;
  return false;
}

void PseudoDangerList::assign(std::size_t slot, int block_id, std::size_t plays) {
  if (slots_[slot] >= 0) slot_of_block_[static_cast<std::size_t>(slots_[slot])] = -1;
  slots_[slot] = block_id;
  plays_[slot] = plays;
  if (block_id >= 0) slot_of_block_[static_cast<std::size_t>(block_id)] = static_cast<int>(slot);
}

// ---------------------------------------------------------------------------
// Decision rules

Choice decide_barrier_defense(const Barrier& barrier, PseudoDangerList& list, Point p1, Point p2,
                              RngStream& rng) {
  const int b1 = barrier.block_id(barrier.block_of_box(barrier.box_of_point(p1)));
  const int b2 = barrier.block_id(barrier.block_of_box(barrier.box_of_point(p2)));

  // S1
  if (b1 < 0 && b2 < 0) return {random_pick(rng), ChoiceReason::outside_barrier};
  if (b1 < 0) return {Pick::first, ChoiceReason::outside_barrier};
  if (b2 < 0) return {Pick::second, ChoiceReason::outside_barrier};

  const auto s1 = list.slot_of(b1);
  const auto s2 = list.slot_of(b2);
  // S2
  if (!s1 && !s2) return {random_pick(rng), ChoiceReason::random};
  // S3
  if (!s1) return {Pick::first, ChoiceReason::pseudo_safe};
  if (!s2) return {Pick::second, ChoiceReason::pseudo_safe};
  // S4
  const std::size_t k1 = list.play_count(*s1);
  const std::size_t k2 = list.play_count(*s2);
  Pick pick;
  if (k1 < k2) {
    pick = Pick::first;
  } else if (k2 < k1) {
    pick = Pick::second;
  } else {
    pick = random_pick(rng);
  }
  list.record_play(pick == Pick::first ? *s1 : *s2);
  return {pick, ChoiceReason::least_played_list};
}

TargetSquare TargetSquare::centered(double area, double cx, double cy) {
  if (!(area > 0.0) || area > 1.0) throw ParameterError("target square area must lie in (0, 1]");
  const double half = std::sqrt(area) / 2.0;
  cx = std::clamp(cx, half, 1.0 - half);
  cy = std::clamp(cy, half, 1.0 - half);
  return {cx - half, cy - half, cx + half, cy + half};
}

Choice decide_giant_maker(const TargetSquare& target, Point p1, Point p2, RngStream& rng) {
  const bool in1 = target.contains(p1);
  const bool in2 = target.contains(p2);
  if (in1 && !in2) return {Pick::first, ChoiceReason::in_target_square};
  if (in2 && !in1) return {Pick::second, ChoiceReason::in_target_square};
  return {random_pick(rng), in1 ? ChoiceReason::in_target_square : ChoiceReason::random};
}

Choice decide_greedy_min_merge(const ProcessState& state, Point p1, Point p2) {
  const ComponentStats a = state.preview(p1);
  const ComponentStats b = state.preview(p2);
  if (b.largest < a.largest || (b.largest == a.largest && b.own < a.own)) {
    return {Pick::second, ChoiceReason::greedy};
  }
  return {Pick::first, ChoiceReason::greedy};
}

// ---------------------------------------------------------------------------
// Strategy objects

Choice RandomStrategy::choose(const ProcessState&, Point, Point, RngStream& rng) {
  return {random_pick(rng), ChoiceReason::random};
}

Choice GreedyStrategy::choose(const ProcessState& state, Point p1, Point p2, RngStream&) {
  return decide_greedy_min_merge(state, p1, p2);
}

Choice GiantMakerStrategy::choose(const ProcessState&, Point p1, Point p2, RngStream& rng) {
  return decide_giant_maker(target_, p1, p2, rng);
}

BarrierDefenseStrategy::BarrierDefenseStrategy(Barrier barrier, std::size_t list_capacity,
                                               DangerSettings danger)
    : barrier_(std::move(barrier)),
      states_(barrier_.size()),
      list_(list_capacity, barrier_.size()),
      danger_(danger) {}

Choice BarrierDefenseStrategy::choose(const ProcessState&, Point p1, Point p2, RngStream& rng) {
  return decide_barrier_defense(barrier_, list_, p1, p2, rng);
}

void BarrierDefenseStrategy::observe(const ProcessState& state, Point accepted, const ComponentStats& stats) {
  if (!stats.newly_occupied) return;
  const Cell box = barrier_.box_of_point(accepted);
  const Cell block = barrier_.block_of_box(box);
  const int id = barrier_.block_id(block);
  if (id < 0) return;
  ++states_[static_cast<std::size_t>(id)].occupied_boxes;

  // Danger only changes where occupancy changed: the block and its barrier neighbours.
  std::vector<Cell> candidates = barrier_.barrier_neighbors(block);
  candidates.insert(candidates.begin(), block);
  std::vector<int> newly;
  for (const Cell& c : candidates) {
    const int cid = barrier_.block_id(c);
    auto& st = states_[static_cast<std::size_t>(cid)];
    if (st.dangerous) continue;
    if (is_block_dangerous(barrier_, state.occupancy(), c, danger_)) {
      st.dangerous = true;
      newly.push_back(cid);
    }
  }
  if (newly.empty()) return;
  std::sort(newly.begin(), newly.end());
  for (int cid : newly) {
    list_.insert_dangerous(cid, states_);
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    states_[i].list_slot = list_.slot_of(static_cast<int>(i));
  }
}

void BarrierDefenseStrategy::finish(const ProcessState& state, RunRecord& record) {
  std::size_t bad = 0;
  std::size_t dangerous = 0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    auto& st = states_[i];
    if (!st.bad && is_block_bad(barrier_, state.occupancy(), barrier_.blocks()[i])) st.bad = true;
    bad += st.bad ? 1 : 0;
    dangerous += st.dangerous ? 1 : 0;
  }
  record.bad_blocks = bad;
  record.dangerous_blocks = dangerous;
  record.max_slot_plays = list_.max_play_count();
  record.strategy_failed = list_.overflowed();
  record.slack = danger_.slack;
  record.list_capacity = list_.capacity();
  record.danger_mode = uses_exact_danger(barrier_.block_side(), danger_.h_exact) ? "exact" : "surrogate";
}

std::unique_ptr<Strategy> make_strategy(std::string_view name, const StrategyParams& params,
                                        std::uint64_t n, double r) {
  if (name == "random") return std::make_unique<RandomStrategy>();
  if (name == "greedy") return std::make_unique<GreedyStrategy>();
  if (name == "giant" || name == "giant-maker") {
    return std::make_unique<GiantMakerStrategy>(
        TargetSquare::centered(params.eps, params.target_cx, params.target_cy));
  }
  if (name == "barrier") {
    Barrier barrier = build_barrier(params.K, params.h, r);
    DangerSettings danger;
    danger.h_exact = params.h_exact;
    danger.slack = params.slack >= 0 ? std::min(params.slack, params.h) : default_slack(n, params.h);
    const std::size_t capacity =
        params.list_capacity > 0 ? params.list_capacity : default_list_capacity(params.h, barrier.size());
    return std::make_unique<BarrierDefenseStrategy>(std::move(barrier), capacity, danger);
  }
  throw ParameterError("unknown strategy: " + std::string(name));
}

// ---------------------------------------------------------------------------

RunRecord run_online(std::uint64_t n, double r, Strategy& strategy, std::uint64_t seed,
                     const OnlineOptions& options) {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (r < 0.0) throw ParameterError("radius must be non-negative");
  const auto start = std::chrono::steady_clock::now();

  const Barrier* barrier = strategy.barrier();
  ProcessState state(r, barrier != nullptr ? barrier->radius() : 0.0);
  RngStream points(seed, 0);
  RngStream choices(seed, 1);

  RunRecord record;
  record.n = n;
  record.r = r;
  record.strategy = std::string(strategy.name());
  record.seed = seed;

  const std::uint64_t every = options.samples > 0 ? std::max<std::uint64_t>(1, n / options.samples) : 0;
  for (std::uint64_t t = 1; t <= n; ++t) {
    const auto [p1, p2] = sample_point_pair(points);
    const Choice choice = strategy.choose(state, p1, p2, choices);
    const Point accepted = chosen_point(choice, p1, p2);
    const ComponentStats stats = state.add_point(accepted);
    strategy.observe(state, accepted, stats);
    if (every != 0 && (t % every == 0 || t == n)) {
      if (record.time_series.empty() || record.time_series.back().first != t) {
        record.time_series.emplace_back(t, stats.largest);
      }
    }
  }

  record.largest_size = state.largest();
  record.largest_fraction = static_cast<double>(state.largest()) / static_cast<double>(n);
  strategy.finish(state, record);
  if (barrier != nullptr) record.barrier_crossed = geoach::barrier_crossed(*barrier, state.occupancy());
  record.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace geoach
