#include "misform/scheduler.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "misform/monitors.hpp"
#include "misform/rng.hpp"

namespace misform {

SchedulerSpec SchedulerSpec::random_fair(double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("activation probability must be in (0,1]");
  SchedulerSpec s;
  s.kind = Kind::RandomFair;
  s.p = p;
  s.seed = seed;
  return s;
}

SchedulerSpec SchedulerSpec::round_robin(int block) {
  if (block < 1) throw std::invalid_argument("block size must be positive");
  SchedulerSpec s;
  s.kind = Kind::RoundRobin;
  s.block = block;
  return s;
}

SchedulerSpec SchedulerSpec::singleton_sweep(std::vector<RobotId> order) {
  SchedulerSpec s;
  s.kind = Kind::SingletonSweep;
  s.order = std::move(order);
  return s;
}

SchedulerSpec SchedulerSpec::scripted(std::vector<ActivationSet> script) {
  SchedulerSpec s;
  s.kind = Kind::Scripted;
  s.script = std::move(script);
  return s;
}

namespace {

// Flat occupancy index so view extraction does not rescan the robot map.
struct Board {
  GridDims dims;
  std::vector<std::int8_t> cells;

  explicit Board(const Configuration& c)
      : dims(c.dims), cells(c.dims.node_count(), -1) {
    for (const auto& [id, st] : c.robots)
      if (dims.contains(st.pos))
        cells[dims.index(st.pos)] = static_cast<std::int8_t>(st.color);
  }

  CellView at(Coord p) const {
    if (!dims.contains(p)) return CellView::offgrid();
    std::int8_t v = cells[dims.index(p)];
    if (v < 0) return CellView::vacant();
    return CellView::occupied(static_cast<Color>(v));
  }
};

View view_from(const Board& b, Coord at) {
  View v;
  v.self = b.at(at);
  v.l1 = b.at({at.i, at.j - 1});
  v.l2 = b.at({at.i, at.j - 2});
  v.r1 = b.at({at.i, at.j + 1});
  v.r2 = b.at({at.i, at.j + 2});
  v.u1 = b.at({at.i - 1, at.j});
  v.u2 = b.at({at.i - 2, at.j});
  v.d1 = b.at({at.i + 1, at.j});
  v.d2 = b.at({at.i + 2, at.j});
  v.nw = b.at({at.i - 1, at.j - 1});
  v.ne = b.at({at.i - 1, at.j + 1});
  v.sw = b.at({at.i + 1, at.j - 1});
  v.se = b.at({at.i + 1, at.j + 1});
  return v;
}

}  // namespace

StepResult step(const Configuration& pre, const ActivationSet& act, int round,
                const DecideFn& rule) {
  require_valid(pre.dims);
  if (act.empty()) throw std::invalid_argument("empty activation set");
  Board board(pre);
  StepResult res;
  res.next = pre;
  res.event.round = round;
  res.event.activated = act;
  res.event.records.reserve(act.size());
  RobotId prev = std::numeric_limits<RobotId>::min();
  for (RobotId id : act) {
    if (id <= prev)
      throw std::invalid_argument("activation ids must be strictly ascending");
    prev = id;
    auto it = pre.robots.find(id);
    if (it == pre.robots.end())
      throw std::invalid_argument("activated unknown robot " + std::to_string(id));
    const RobotState& st = it->second;
    if (!pre.dims.contains(st.pos))
      throw std::invalid_argument("robot " + std::to_string(id) + " off grid");
    Decision dec = rule ? rule(view_from(board, st.pos))
                        : decide(view_from(board, st.pos));
    Coord to = dec.action.moves() ? step_to(st.pos, dec.action.dir) : st.pos;
    Color after = (dec.action.kind == Action::Kind::SetColor ||
                   dec.action.kind == Action::Kind::SetColorAndMove)
                      ? dec.action.color
                      : st.color;
    res.event.records.push_back({id, dec.guard, dec.action, st.pos, to, after});
    res.next.robots[id] = {to, after};
  }
  std::map<Coord, std::vector<RobotId>> targets;
  std::set<RobotId> moved;
  for (const auto& r : res.event.records)
    if (r.to != r.from) {
      targets[r.to].push_back(r.id);
      moved.insert(r.id);
    }
  for (const auto& [cell, ids] : targets) {
    if (ids.size() > 1)
      res.conflicts.push_back({MoveConflict::Kind::SharedTarget, cell, ids});
    // Entering a cell whose occupant left this same round is a legal follow;
    // only a stationary occupant makes it a collision.
    for (const auto& [oid, ost] : pre.robots) {
      if (ost.pos == cell && !moved.count(oid)) {
        res.conflicts.push_back({MoveConflict::Kind::IntoOccupied, cell, ids});
        break;
      }
    }
  }
  res.event.digest = canonical_digest(res.next);
  return res;
}

ActivationSet all_ids(const Configuration& c) {
  ActivationSet ids;
  ids.reserve(c.robots.size());
  for (const auto& [id, st] : c.robots) ids.push_back(id);
  return ids;
}

ActivationSet next_activation(const SchedulerSpec& s, int round,
                              const Configuration& c) {
  if (round < 1) throw std::invalid_argument("rounds are 1-based");
  if (c.robots.empty()) throw std::invalid_argument("no robots to activate");
  ActivationSet ids = all_ids(c);
  switch (s.kind) {
    case SchedulerSpec::Kind::FullSync:
      return ids;
    case SchedulerSpec::Kind::RandomFair: {
      if (!(s.p > 0.0 && s.p <= 1.0))
        throw std::invalid_argument("activation probability must be in (0,1]");
      SplitMix64 g(mix_seed(s.seed, static_cast<std::uint64_t>(round)));
      ActivationSet act;
      do {
        act.clear();
        for (RobotId id : ids)
          if (g.unit() < s.p) act.push_back(id);
      } while (act.empty());
      return act;
    }
    case SchedulerSpec::Kind::RoundRobin: {
      int n = static_cast<int>(ids.size());
      int blocks = (n + s.block - 1) / s.block;
      int b = (round - 1) % blocks;
      int lo = b * s.block, hi = std::min(lo + s.block, n);
      return ActivationSet(ids.begin() + lo, ids.begin() + hi);
    }
    case SchedulerSpec::Kind::SingletonSweep: {
      const std::vector<RobotId>& order = s.order.empty() ? ids : s.order;
      RobotId pick = order[(round - 1) % order.size()];
      if (!c.robots.count(pick))
        throw std::invalid_argument("sweep order names unknown robot " +
                                    std::to_string(pick));
      return {pick};
    }
    case SchedulerSpec::Kind::Scripted: {
      if (static_cast<std::size_t>(round - 1) >= s.script.size()) return ids;
      const ActivationSet& act = s.script[round - 1];
      if (act.empty())
        throw std::invalid_argument("scripted round " + std::to_string(round) +
                                    " is empty");
      return act;
    }
  }
  throw std::invalid_argument("unknown scheduler kind");
}

bool is_final(const Configuration& c) {
  for (const auto& [id, st] : c.robots)
    if (st.color != Color::Red) return false;
  return true;
}

std::string canonical_string(const Configuration& c) {
  std::vector<std::pair<Coord, Color>> cells;
  cells.reserve(c.robots.size());
  for (const auto& [id, st] : c.robots) cells.emplace_back(st.pos, st.color);
  std::sort(cells.begin(), cells.end());
  std::string s = std::to_string(c.dims.rows) + "," +
                  std::to_string(c.dims.cols) + "|";
  bool first = true;
  for (const auto& [pos, color] : cells) {
    if (!first) s += ';';
    first = false;
    s += std::to_string(pos.i) + "," + std::to_string(pos.j) + ",";
    s += color_char(color);
  }
  return s;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string canonical_digest(const Configuration& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_string(c))));
  return buf;
}

int default_round_cap(GridDims d) {
  return 50 * d.rows * d.cols * (d.rows + d.cols);
}

const char* outcome_kind_name(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Completed: return "completed";
    case Outcome::Kind::RoundCapExceeded: return "round-cap-exceeded";
    case Outcome::Kind::InvariantViolation: return "invariant-violation";
    case Outcome::Kind::QuiescentNonFinal: return "quiescent-non-final";
  }
  return "?";
}

RunResult run(const Configuration& initial, const SchedulerSpec& spec, int cap,
              const RunOptions& opt) {
  require_valid(initial.dims);
  if (!initial.distinct_positions())
    throw std::invalid_argument("robots share a cell");
  for (const auto& [id, st] : initial.robots)
    if (!initial.dims.contains(st.pos))
      throw std::invalid_argument("robot " + std::to_string(id) + " off grid");
  if (initial.robots.empty()) throw std::invalid_argument("no robots");
  if (!opt.allow_nonstandard && !initial.standard_count())
    throw std::invalid_argument(
        "expected " + std::to_string(initial.dims.target_size()) +
        " robots, got " + std::to_string(initial.robots.size()));
  if (cap < 0) cap = default_round_cap(initial.dims);

  RunResult rr;
  Configuration cur = initial;
  int executed = 0;
  while (true) {
    if (is_final(cur)) {
      rr.outcome = Outcome::completed(executed);
      if (opt.monitors) {
        auto vs = check_final(cur);
        if (!vs.empty()) {
          for (auto& v : vs) v.round = executed;
          rr.violations = std::move(vs);
          rr.outcome = Outcome::violation(executed, describe(rr.violations[0]));
        }
      }
      break;
    }
    if (executed >= cap) {
      rr.outcome = Outcome::cap_exceeded(cap);
      break;
    }
    int round = executed + 1;
    ActivationSet act = next_activation(spec, round, cur);
    StepResult sr = step(cur, act, round);
    if (opt.keep_trace) rr.trace.push_back(sr.event);
    std::vector<Violation> vs;
    if (!sr.conflicts.empty() || opt.monitors) {
      vs = check_step(cur, sr.event, sr.next);
      if (opt.monitors) {
        auto ss = check_state(sr.next);
        vs.insert(vs.end(), ss.begin(), ss.end());
      }
      for (auto& v : vs) v.round = round;
    }
    if (!vs.empty()) {
      rr.violations = std::move(vs);
      rr.outcome = Outcome::violation(round, describe(rr.violations[0]));
      cur = sr.next;
      executed = round;
      break;
    }
    if (sr.next == cur) {
      StepResult probe = step(cur, all_ids(cur), round);
      if (probe.next == cur) {
        rr.outcome = Outcome::quiescent(round);
        executed = round;
        break;
      }
    }
    cur = sr.next;
    executed = round;
  }
  rr.final_config = cur;
  rr.max_rounds_seen = executed;
  return rr;
}

}  // namespace misform
