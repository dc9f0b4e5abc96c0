#include "misform/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "misform/rng.hpp"

namespace misform {

namespace {

std::string state_string(GridDims d, const CanonicalState& s) {
  std::string out = std::to_string(d.rows) + "," + std::to_string(d.cols) + "|";
  bool first = true;
  for (const auto& [pos, color] : s.cells) {
    if (!first) out += ';';
    first = false;
    out += std::to_string(pos.i) + "," + std::to_string(pos.j) + ",";
    out += color_char(color);
  }
  return out;
}

std::string digest_of(GridDims d, const CanonicalState& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(state_string(d, s))));
  return buf;
}

bool all_red(const CanonicalState& s) {
  for (const auto& [pos, color] : s.cells)
    if (color != Color::Red) return false;
  return true;
}

// Corrupt states (overlaps, off-grid cells) are kept as sinks: their
// violations are recorded but they are never expanded.
bool expandable(GridDims d, const CanonicalState& s) {
  for (std::size_t a = 0; a < s.cells.size(); ++a) {
    if (!d.contains(s.cells[a].first)) return false;
    if (a > 0 && !(s.cells[a - 1].first < s.cells[a].first)) return false;
  }
  return !s.cells.empty();
}

}  // namespace

CanonicalState canonicalize(const Configuration& c) {
  CanonicalState s;
  s.cells.reserve(c.robots.size());
  for (const auto& [id, st] : c.robots) s.cells.emplace_back(st.pos, st.color);
  std::sort(s.cells.begin(), s.cells.end());
  return s;
}

Configuration materialize(GridDims dims, const CanonicalState& s) {
  Configuration c;
  c.dims = dims;
  RobotId id = 1;
  for (const auto& [pos, color] : s.cells) c.robots[id++] = {pos, color};
  return c;
}

std::uint32_t StateGraph::intern(const CanonicalState& s, std::uint32_t pred,
                                 std::uint64_t mask) {
  std::string key = state_string(dims_, s);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(states_.size());
  states_.push_back(s);
  succ_.emplace_back();
  pred_.push_back(pred);
  mask_.push_back(mask);
  index_.emplace(std::move(key), id);
  return id;
}

std::uint32_t StateGraph::find(const CanonicalState& s) const {
  auto it = index_.find(state_string(dims_, s));
  return it == index_.end() ? kNone : it->second;
}

bool StateGraph::final_state(std::uint32_t id) const {
  return all_red(states_[id]);
}

std::string StateGraph::digest(std::uint32_t id) const {
  return digest_of(dims_, states_[id]);
}

void StateGraph::add_edge(std::uint32_t from, std::uint32_t to) {
  auto& list = succ_[from];
  if (std::find(list.begin(), list.end(), to) == list.end()) {
    list.push_back(to);
    ++edges_;
  }
}

namespace {

struct Expansion {
  std::uint64_t mask = 0;
  CanonicalState post;
  std::vector<Violation> step_violations;
  bool self_loop = false;
};

std::vector<std::uint64_t> subset_masks(int k, std::uint32_t state_id,
                                        const ExploreOptions& opt,
                                        bool* sampled) {
  if (k > 63) throw std::invalid_argument("more than 63 robots");
  std::uint64_t full = (k == 63) ? ~0ULL : ((1ULL << k) - 1);
  std::vector<std::uint64_t> masks;
  if (k <= opt.full_subset_limit) {
    masks.reserve(full);
    for (std::uint64_t m = 1; m <= full; ++m) masks.push_back(m);
    return masks;
  }
  *sampled = true;
  for (int b = 0; b < k; ++b) masks.push_back(1ULL << b);
  masks.push_back(full);
  SplitMix64 g(mix_seed(opt.sample_seed, state_id));
  for (int s = 0; s < opt.sampled_per_state; ++s)
    masks.push_back(1 + g.below(full));
  return masks;
}

}  // namespace

ExplorationReport explore(GridDims dims,
                          const std::vector<Configuration>& initials,
                          const ExploreOptions& opt, StateGraph* out) {
  require_valid(dims);
  auto t0 = std::chrono::steady_clock::now();

  StateGraph local(dims);
  StateGraph& g = out ? *out : local;

  ExplorationReport rep;
  rep.dims = dims;
  rep.initials = initials.size();

  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint32_t> queue;
  int in_flight = 0;
  bool sampled = false;

  auto record_violations = [&](std::vector<Violation>&& vs,
                               const std::string& pre_digest,
                               std::uint64_t mask) {
    for (auto& v : vs) {
      ++rep.violation_count;
      if (rep.violations.size() < opt.max_recorded_violations) {
        v.detail += (v.detail.empty() ? "" : "; ");
        v.detail += "pre=" + pre_digest + " mask=" + std::to_string(mask);
        rep.violations.push_back(std::move(v));
      }
    }
  };

  // Must hold the lock. Interns, records state-level checks, queues.
  auto admit = [&](const CanonicalState& s, std::uint32_t pred,
                   std::uint64_t mask) -> std::uint32_t {
    std::uint32_t known = g.find(s);
    if (known != StateGraph::kNone) return known;
    if (g.size() >= opt.max_states) {
      rep.truncated = true;
      return StateGraph::kNone;
    }
    std::uint32_t id = g.intern(s, pred, mask);
    record_violations(check_state(materialize(dims, s)), g.digest(id), 0);
    if (all_red(s)) {
      ++rep.final_states;
      g.add_edge(id, id);  // absorbing
    } else if (expandable(dims, s)) {
      queue.push_back(id);
      rep.peak_frontier = std::max<std::uint64_t>(rep.peak_frontier, queue.size());
    }
    return id;
  };

  {
    std::lock_guard<std::mutex> lk(mu);
    for (const Configuration& c : initials) {
      if (!(c.dims == dims))
        throw std::invalid_argument("initial configuration on a different grid");
      admit(canonicalize(c), StateGraph::kNone, 0);
    }
  }

  auto worker = [&]() {
    std::unique_lock<std::mutex> lk(mu);
    while (true) {
      cv.wait(lk, [&] { return !queue.empty() || in_flight == 0; });
      if (queue.empty()) {
        if (in_flight == 0) {
          cv.notify_all();
          return;
        }
        continue;
      }
      std::uint32_t id = queue.front();
      queue.pop_front();
      ++in_flight;
      CanonicalState pre = g.state(id);
      std::string pre_digest = g.digest(id);
      lk.unlock();

      Configuration cfg = materialize(dims, pre);
      int k = static_cast<int>(cfg.robots.size());
      bool used_sampling = false;
      std::vector<std::uint64_t> masks = subset_masks(k, id, opt, &used_sampling);
      std::uint64_t full = (k == 63) ? ~0ULL : ((1ULL << k) - 1);

      std::vector<Expansion> results;
      results.reserve(masks.size());
      for (std::uint64_t mask : masks) {
        ActivationSet act;
        for (int b = 0; b < k; ++b)
          if (mask & (1ULL << b)) act.push_back(b + 1);
        StepResult sr = step(cfg, act, 1, opt.rule);
        Expansion e;
        e.mask = mask;
        e.post = canonicalize(sr.next);
        e.step_violations = check_step(cfg, sr.event, sr.next);
        e.self_loop = (e.post == pre);
        results.push_back(std::move(e));
      }
      bool quiescent = false;
      for (const Expansion& e : results)
        if (e.mask == full && e.self_loop && !all_red(pre)) quiescent = true;

      lk.lock();
      if (used_sampling) sampled = true;
      rep.transitions += masks.size();
      for (Expansion& e : results) {
        record_violations(std::move(e.step_violations), pre_digest, e.mask);
        std::uint32_t succ = admit(e.post, id, e.mask);
        if (succ != StateGraph::kNone) g.add_edge(id, succ);
      }
      if (quiescent) {
        ++rep.quiescent_count;
        if (rep.quiescent_nonfinal.size() < opt.max_recorded_violations)
          rep.quiescent_nonfinal.push_back(pre_digest);
      }
      --in_flight;
      if (queue.empty() && in_flight == 0)
        cv.notify_all();
      else
        cv.notify_one();
    }
  };

  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  rep.states = g.size();
  rep.edges = g.edge_count();
  rep.sampled = sampled;
  if (!rep.truncated && g.size() > 0) {
    ReachabilityVerdict verdict = verify_final_reachability(g);
    rep.final_reachability = verdict.ok;
    rep.counterexample_digest = verdict.counterexample_digest;
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ReachabilityVerdict verify_final_reachability(const StateGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  std::vector<std::vector<std::uint32_t>> rev(g.size());
  std::vector<char> can_reach(g.size(), 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t id = 0; id < g.size(); ++id) {
    for (std::uint32_t s : g.successors(id)) rev[s].push_back(id);
    if (g.final_state(id)) {
      can_reach[id] = 1;
      queue.push_back(id);
    }
  }
  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop_front();
    for (std::uint32_t p : rev[id])
      if (!can_reach[p]) {
        can_reach[p] = 1;
        queue.push_back(p);
      }
  }
  for (std::uint32_t id = 0; id < g.size(); ++id)
    if (!can_reach[id]) return {false, g.digest(id)};
  return {true, ""};
}

std::vector<Configuration> enumerate_initials(GridDims dims,
                                              std::uint64_t budget) {
  require_valid(dims);
  const int p = dims.node_count();
  const int k = dims.target_size();
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) {
    count = count * static_cast<std::uint64_t>(p - i) / (i + 1);
    if (count > budget)
      throw std::length_error("placement enumeration exceeds budget");
  }
  std::vector<Coord> cells;
  cells.reserve(p);
  for (int i = 1; i <= dims.rows; ++i)
    for (int j = 1; j <= dims.cols; ++j) cells.push_back({i, j});

  std::vector<Configuration> out;
  out.reserve(count);
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    Configuration c;
    c.dims = dims;
    for (int i = 0; i < k; ++i)
      c.robots[i + 1] = {cells[pick[i]], Color::Green};
    out.push_back(std::move(c));
    int i = k - 1;
    while (i >= 0 && pick[i] == p - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

Witness witness_schedule(const StateGraph& g, std::uint32_t id) {
  if (id >= g.size()) throw std::invalid_argument("unknown state id");
  std::vector<std::pair<std::uint32_t, std::uint64_t>> chain;  // (pred, mask)
  std::uint32_t cur = id;
  while (g.predecessor(cur) != StateGraph::kNone) {
    chain.emplace_back(g.predecessor(cur), g.predecessor_mask(cur));
    cur = g.predecessor(cur);
  }
  std::reverse(chain.begin(), chain.end());

  Witness w;
  w.root = materialize(g.dims(), g.state(cur));
  Configuration cfg = w.root;  // stable ids from the root onward
  for (const auto& [pred, mask] : chain) {
    const CanonicalState& ps = g.state(pred);
    ActivationSet act;
    for (std::size_t b = 0; b < ps.cells.size(); ++b) {
      if (!(mask & (1ULL << b))) continue;
      Coord pos = ps.cells[b].first;
      for (const auto& [rid, st] : cfg.robots)
        if (st.pos == pos) {
          act.push_back(rid);
          break;
        }
    }
    std::sort(act.begin(), act.end());
    w.schedule.push_back(act);
    cfg = step(cfg, act).next;
  }
  return w;
}

}  // namespace misform
