// strategies.hpp: choice rules for the online two-point process
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geoach/barrier.hpp"
#include "geoach/core_model.hpp"
#include "geoach/rng.hpp"

namespace geoach {

enum class Pick { first, second };

enum class ChoiceReason {
  outside_barrier,
  pseudo_safe,
  least_played_list,
  random,
  in_target_square,
  greedy,
};

const char* to_string(ChoiceReason reason);

struct Choice {
  Pick pick = Pick::first;
  ChoiceReason reason = ChoiceReason::random;
};

inline Point chosen_point(const Choice& c, Point p1, Point p2) { return c.pick == Pick::first ? p1 : p2; }

// Fixed-capacity ordered list of barrier blocks. Play counts belong to slots,
// not to the blocks currently occupying them, and a slot holding a dangerous
// block is never reassigned.
class PseudoDangerList {
 public:
  PseudoDangerList(std::size_t capacity, std::size_t barrier_blocks);

  std::size_t capacity() const { return slots_.size(); }
  std::optional<std::size_t> slot_of(int block_id) const;
  int block_at(std::size_t slot) const { return slots_[slot]; }
  std::size_t play_count(std::size_t slot) const { return plays_[slot]; }
  void record_play(std::size_t slot) { ++plays_[slot]; }
  std::size_t max_play_count() const;

  // Lists a newly dangerous block in an empty slot or in place of a safe
  // listed block. Returns false (and sets the overflow flag) when every slot
  // already holds a dangerous block.
  bool insert_dangerous(int block_id, const std::vector<BlockState>& states);
  bool overflowed() const { return overflowed_; }

  // Test hook: place a block in a slot with a given play count.
  void assign(std::size_t slot, int block_id, std::size_t plays);

 private:
  std::vector<int> slots_;          // block id or -1
  std::vector<std::size_t> plays_;  // k_i per slot
  std::vector<int> slot_of_block_;
  bool overflowed_ = false;
};

// Rules S1-S4: prefer points outside the barrier, then pseudo-safe blocks, and
// when both points fall in listed blocks play the slot with fewer plays so far
// (ties random). Records the play on the chosen slot.
Choice decide_barrier_defense(const Barrier& barrier, PseudoDangerList& list, Point p1, Point p2,
                              RngStream& rng);

// Axis-aligned square of the given area centred at (cx, cy).
struct TargetSquare {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  static TargetSquare centered(double area, double cx = 0.5, double cy = 0.5);
  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  double area() const { return (x1 - x0) * (y1 - y0); }
};

Choice decide_giant_maker(const TargetSquare& target, Point p1, Point p2, RngStream& rng);

// One-step lookahead: the point giving the smaller largest component, then
// the smaller own component, then the first point.
Choice decide_greedy_min_merge(const ProcessState& state, Point p1, Point p2);

struct RunRecord {
  std::string mode = "online";
  std::uint64_t n = 0;
  std::optional<double> c;
  double r = 0.0;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t largest_size = 0;
  double largest_fraction = 0.0;
  bool barrier_crossed = false;
  bool strategy_failed = false;
  double runtime_ms = 0.0;
  std::vector<std::pair<std::uint64_t, std::size_t>> time_series;  // (round, largest)

  // Barrier diagnostics (zero for other strategies).
  std::size_t bad_blocks = 0;
  std::size_t dangerous_blocks = 0;
  std::size_t max_slot_plays = 0;
  int slack = 0;
  std::size_t list_capacity = 0;
  std::string danger_mode;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string_view name() const = 0;
  virtual Choice choose(const ProcessState& state, Point p1, Point p2, RngStream& rng) = 0;
  virtual void observe(const ProcessState& /*state*/, Point /*accepted*/, const ComponentStats& /*stats*/) {}
  virtual void finish(const ProcessState& /*state*/, RunRecord& /*record*/) {}
  // Barrier geometry to report crossings against, if any.
  virtual const Barrier* barrier() const { return nullptr; }
};

struct StrategyParams {
  double K = 2.0;
  int h = 4;
  std::size_t list_capacity = 0;  // 0: default_list_capacity
  int slack = -1;                 // <0: default_slack
  int h_exact = 12;
  double eps = 0.1;               // target square area for the giant maker
  double target_cx = 0.5;
  double target_cy = 0.5;
};

class RandomStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "random"; }
  Choice choose(const ProcessState&, Point, Point, RngStream& rng) override;
};

class GreedyStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "greedy"; }
  Choice choose(const ProcessState& state, Point p1, Point p2, RngStream&) override;
};

class GiantMakerStrategy final : public Strategy {
 public:
  explicit GiantMakerStrategy(TargetSquare target) : target_(target) {}
  std::string_view name() const override { return "giant"; }
  Choice choose(const ProcessState&, Point p1, Point p2, RngStream& rng) override;
  const TargetSquare& target() const { return target_; }

 private:
  TargetSquare target_;
};

class BarrierDefenseStrategy final : public Strategy {
 public:
  BarrierDefenseStrategy(Barrier barrier, std::size_t list_capacity, DangerSettings danger);

  std::string_view name() const override { return "barrier"; }
  Choice choose(const ProcessState& state, Point p1, Point p2, RngStream& rng) override;
  void observe(const ProcessState& state, Point accepted, const ComponentStats& stats) override;
  void finish(const ProcessState& state, RunRecord& record) override;
  const Barrier* barrier() const override { return &barrier_; }

  const PseudoDangerList& list() const { return list_; }
  const std::vector<BlockState>& block_states() const { return states_; }
  const DangerSettings& danger() const { return danger_; }
  bool failed() const { return list_.overflowed(); }

 private:
  Barrier barrier_;
  std::vector<BlockState> states_;
  PseudoDangerList list_;
  DangerSettings danger_;
};

// Strategy by name: random | greedy | barrier | giant.
std::unique_ptr<Strategy> make_strategy(std::string_view name, const StrategyParams& params,
                                        std::uint64_t n, double r);

struct OnlineOptions {
  std::size_t samples = 100;  // time-series points per run, 0 disables
};

// n rounds of: offer two uniform points, let the strategy pick one, add it.
// Points are drawn from stream 0 of `seed`, strategy randomness from stream 1,
// so different strategies see identical offers for the same seed.
RunRecord run_online(std::uint64_t n, double r, Strategy& strategy, std::uint64_t seed,
                     const OnlineOptions& options = {});

}  // namespace geoach
