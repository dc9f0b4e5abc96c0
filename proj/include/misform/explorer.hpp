#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "misform/monitors.hpp"
#include "misform/scheduler.hpp"

namespace misform {

// Identity-free state: occupied cells with colors, sorted row-major.
struct CanonicalState {
  std::vector<std::pair<Coord, Color>> cells;
  friend bool operator==(const CanonicalState&, const CanonicalState&) = default;
};

CanonicalState canonicalize(const Configuration& c);
// Robots get ids 1..k in row-major order.
Configuration materialize(GridDims dims, const CanonicalState& s);

// The reachable transition graph. Each state remembers one predecessor and
// the activation subset that produced it, so any listed state can be
// replayed from its root.
class StateGraph {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  explicit StateGraph(GridDims dims) : dims_(dims) {}

  GridDims dims() const { return dims_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(states_.size()); }

  // Returns the state's id, interning it if new. `pred`/`mask` record how it
  // was first reached (kNone/0 for roots). The mask's bit b refers to the
  // robot with id b+1 in materialize(pred).
  std::uint32_t intern(const CanonicalState& s, std::uint32_t pred,
                       std::uint64_t mask);
  std::uint32_t find(const CanonicalState& s) const;

  const CanonicalState& state(std::uint32_t id) const { return states_[id]; }
  bool final_state(std::uint32_t id) const;
  std::string digest(std::uint32_t id) const;

  void add_edge(std::uint32_t from, std::uint32_t to);  // deduplicated
  const std::vector<std::uint32_t>& successors(std::uint32_t id) const {
    return succ_[id];
  }
  std::uint32_t predecessor(std::uint32_t id) const { return pred_[id]; }
  std::uint64_t predecessor_mask(std::uint32_t id) const { return mask_[id]; }
  std::uint64_t edge_count() const { return edges_; }

 private:
  GridDims dims_;
  std::vector<CanonicalState> states_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<std::uint32_t> pred_;
  std::vector<std::uint64_t> mask_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::uint64_t edges_ = 0;
};

struct ExploreOptions {
  int full_subset_limit = 6;   // robots above this use the sampled generator
  int sampled_per_state = 32;  // random subsets added to singletons + full set
  std::uint64_t sample_seed = 0x5eed;
  std::uint64_t max_states = 5'000'000;
  std::size_t max_recorded_violations = 64;
  int jobs = 1;
  DecideFn rule;  // empty = the shipped table
};

struct ExplorationReport {
  GridDims dims;
  std::uint64_t initials = 0;
  std::uint64_t states = 0;
  std::uint64_t final_states = 0;
  std::uint64_t transitions = 0;  // activation subsets applied
  std::uint64_t edges = 0;        // distinct state-to-state edges
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // capped sample, digests in detail
  std::uint64_t quiescent_count = 0;
  std::vector<std::string> quiescent_nonfinal;  // digests, capped
  bool final_reachability = false;
  std::string counterexample_digest;  // set when final_reachability is false
  std::uint64_t peak_frontier = 0;
  double wall_seconds = 0.0;
  bool sampled = false;
  bool truncated = false;  // hit max_states; results are a lower bound

  bool clean() const {
    return violation_count == 0 && quiescent_count == 0 && final_reachability &&
           !truncated;
  }
};

// Breadth-first closure of `initials` under every scheduler choice, checking
// every transition and state as it goes. Pass `out` to keep the graph.
ExplorationReport explore(GridDims dims,
                          const std::vector<Configuration>& initials,
                          const ExploreOptions& opt = {},
                          StateGraph* out = nullptr);

struct ReachabilityVerdict {
  bool ok = false;
  std::string counterexample_digest;
};

// True iff every state in the graph can still reach an all-red state.
// Throws std::invalid_argument on an empty graph.
ReachabilityVerdict verify_final_reachability(const StateGraph& g);

// All-green initial placements: every way to choose ceil(rows*cols/2) cells,
// enumerated in row-major combination order. Throws std::length_error when
// the count exceeds `budget`.
std::vector<Configuration> enumerate_initials(GridDims dims,
                                              std::uint64_t budget = 2'000'000);

struct Witness {
  Configuration root;
  std::vector<ActivationSet> schedule;
};

// The stored predecessor chain for `id`, translated into a concrete script
// replayable with run(root, scripted(schedule), schedule.size()).
Witness witness_schedule(const StateGraph& g, std::uint32_t id);

}  // namespace misform
