#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "misform/rules.hpp"
#include "misform/violations.hpp"

namespace misform {

// Nonempty, strictly ascending robot ids.
using ActivationSet = std::vector<RobotId>;

struct SchedulerSpec {
  enum class Kind { FullSync, RandomFair, RoundRobin, SingletonSweep, Scripted };
  Kind kind = Kind::FullSync;
  double p = 0.5;           // RandomFair inclusion probability
  std::uint64_t seed = 0;   // RandomFair
  int block = 1;            // RoundRobin block size
  std::vector<RobotId> order;        // SingletonSweep; empty = ascending ids
  std::vector<ActivationSet> script; // Scripted; FullSync once exhausted

  static SchedulerSpec full_sync() { return {}; }
  static SchedulerSpec random_fair(double p, std::uint64_t seed);
  static SchedulerSpec round_robin(int block);
  static SchedulerSpec singleton_sweep(std::vector<RobotId> order = {});
  static SchedulerSpec scripted(std::vector<ActivationSet> script);
};

struct MoveRecord {
  RobotId id = 0;
  GuardId guard = GuardId::GWait;
  Action action;
  Coord from, to;
  Color color_after = Color::Green;
  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct TraceEvent {
  int round = 0;
  ActivationSet activated;
  std::vector<MoveRecord> records;  // ascending id, one per activated robot
  std::string digest;               // canonical digest after the round
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Target conflicts the engine executes anyway so that a broken rule table is
// observable in the resulting state.
struct MoveConflict {
  enum class Kind { IntoOccupied, SharedTarget };
  Kind kind = Kind::SharedTarget;
  Coord target;
  std::vector<RobotId> ids;
};

using DecideFn = std::function<Decision(const View&)>;

struct StepResult {
  Configuration next;
  TraceEvent event;
  std::vector<MoveConflict> conflicts;
};

// One synchronous round. Every activated robot sees the same pre-round
// snapshot; all resulting actions land simultaneously. `rule` overrides the
// shipped decision table (used to exercise the monitors against broken
// tables); empty means decide().
StepResult step(const Configuration& pre, const ActivationSet& act,
                int round = 1, const DecideFn& rule = {});

// Which robots the scheduler activates this round. Deterministic in
// (spec, round, robot ids); RandomFair re-draws until nonempty.
ActivationSet next_activation(const SchedulerSpec& s, int round,
                              const Configuration& c);

ActivationSet all_ids(const Configuration& c);

bool is_final(const Configuration& c);  // every robot red

// "rows,cols|i,j,C;..." with robots sorted row-major; identity-free.
std::string canonical_string(const Configuration& c);
// 64-bit FNV-1a of the canonical string, 16 lowercase hex digits.
std::string canonical_digest(const Configuration& c);
std::uint64_t fnv1a64(const std::string& bytes);

int default_round_cap(GridDims d);  // 50 * rows * cols * (rows + cols)

struct Outcome {
  enum class Kind { Completed, RoundCapExceeded, InvariantViolation, QuiescentNonFinal };
  Kind kind = Kind::Completed;
  int round = 0;  // rounds run / the cap / round of the violation or stall
  std::string detail;

  static Outcome completed(int rounds) { return {Kind::Completed, rounds, ""}; }
  static Outcome cap_exceeded(int cap) { return {Kind::RoundCapExceeded, cap, ""}; }
  static Outcome violation(int round, std::string detail) {
    return {Kind::InvariantViolation, round, std::move(detail)};
  }
  static Outcome quiescent(int round) { return {Kind::QuiescentNonFinal, round, ""}; }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

const char* outcome_kind_name(Outcome::Kind k);

struct RunOptions {
  bool monitors = true;
  bool keep_trace = true;
  bool allow_nonstandard = false;
};

struct RunResult {
  Outcome outcome;
  Configuration final_config;
  std::vector<TraceEvent> trace;       // empty when keep_trace is off
  std::vector<Violation> violations;   // what stopped the run, if anything
  int max_rounds_seen = 0;
};

// Runs rounds until every robot is red, the cap is hit, a monitor fires, or
// a full-sync probe shows the configuration can no longer change. The
// initial configuration must have the standard robot count unless
// opt.allow_nonstandard is set.
RunResult run(const Configuration& initial, const SchedulerSpec& spec,
              int cap = -1, const RunOptions& opt = {});

}  // namespace misform
