#pragma once

#include "misform/scheduler.hpp"
#include "misform/violations.hpp"

namespace misform {

// Per-round legality: collisions, red permanence, color transitions, hop
// geometry, and phantom changes to robots that were never activated. The
// checks recompute everything from (pre, event, post); they share no logic
// with the engine they watch.
std::vector<Violation> check_step(const Configuration& pre,
                                  const TraceEvent& event,
                                  const Configuration& post);

// Static state legality: distinct in-grid cells, reds on the parity class,
// no two adjacent reds, and per-row reds-blues-greens ordering.
std::vector<Violation> check_state(const Configuration& c);

// Final-state verdict. Throws std::invalid_argument unless every robot is
// red. The red set must be a maximum independent set and must equal the
// reference target exactly.
std::vector<Violation> check_final(const Configuration& c);

}  // namespace misform
