#include "misform/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "misform/io.hpp"
#include "misform/monitors.hpp"
#include "misform/placements.hpp"

namespace misform {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

struct SimulateFlags {
  int rows = 0, cols = 0;
  std::string placement;
  std::string config_path;
  std::string scheduler;
  std::uint64_t seed = 1;
  double p = 0.5;
  int k = 2;
  long max_rounds = -1;
  std::string trace_path;
  std::string frames_path;
  bool no_monitors = false;
};

Configuration placement_by_name(const std::string& name, GridDims dims,
                                std::uint64_t seed) {
  if (name == "random") return random_placement(dims, seed);
  if (name == "packed-se") return packed_corner(dims, CornerAnchor::SE);
  if (name == "packed-ne") return packed_corner(dims, CornerAnchor::NE);
  if (name == "packed-sw") return packed_corner(dims, CornerAnchor::SW);
  if (name == "packed-nw") return packed_corner(dims, CornerAnchor::NW);
  if (name == "target") return target_preset(dims);
  throw std::runtime_error("unknown placement '" + name + "'");
}

SchedulerSpec scheduler_by_name(const SimulateFlags& f) {
  if (f.scheduler == "fullsync") return SchedulerSpec::full_sync();
  if (f.scheduler == "randomfair") return SchedulerSpec::random_fair(f.p, f.seed);
  if (f.scheduler == "roundrobin") return SchedulerSpec::round_robin(f.k);
  if (f.scheduler == "singleton") return SchedulerSpec::singleton_sweep({});
  throw std::runtime_error("unknown scheduler '" + f.scheduler + "'");
}

int do_simulate(const SimulateFlags& f, bool scheduler_flag_given) {
  RunSetup setup;
  if (!f.config_path.empty()) {
    setup = parse_run_config(slurp(f.config_path));
    if (f.rows && f.rows != setup.initial.dims.rows)
      throw std::runtime_error("--rows disagrees with the config file");
    if (f.cols && f.cols != setup.initial.dims.cols)
      throw std::runtime_error("--cols disagrees with the config file");
  } else {
    if (f.rows < 2 || f.cols < 2)
      throw std::runtime_error("--rows and --cols (both >= 2) are required");
    std::string placement = f.placement.empty() ? "random" : f.placement;
    setup.initial = placement_by_name(placement, {f.rows, f.cols}, f.seed);
  }

  SchedulerSpec spec = SchedulerSpec::full_sync();
  if (scheduler_flag_given)
    spec = scheduler_by_name(f);
  else if (setup.scheduler)
    spec = *setup.scheduler;

  long cap = f.max_rounds;
  if (cap < 0 && setup.max_rounds) cap = *setup.max_rounds;

  RunOptions opt;
  opt.monitors = f.no_monitors ? false : setup.monitors.value_or(true);

  std::string trace_path = !f.trace_path.empty()
                               ? f.trace_path
                               : setup.trace_path.value_or("");
  std::string frames_path = !f.frames_path.empty()
                                ? f.frames_path
                                : setup.frames_path.value_or("");

  RunResult res = run(setup.initial, spec, cap, opt);

  if (!trace_path.empty()) {
    auto out = open_out(trace_path);
    write_trace(out, setup.initial, res.trace);
  }
  if (!frames_path.empty()) {
    auto out = open_out(frames_path);
    if (frames_path.size() > 4 &&
        frames_path.compare(frames_path.size() - 4, 4, ".svg") == 0)
      write_frames_svg(out, setup.initial, res.trace);
    else
      write_frames_ascii(out, setup.initial, res.trace);
  }

  long moves = 0, recolors = 0;
  for (const TraceEvent& e : res.trace)
    for (const MoveRecord& r : e.records) {
      if (r.action.moves()) ++moves;
      if (r.action.kind == Action::Kind::SetColor ||
          r.action.kind == Action::Kind::SetColorAndMove)
        ++recolors;
    }

  switch (res.outcome.kind) {
    case Outcome::Kind::Completed:
      std::cout << "Completed in " << res.outcome.round << " rounds\n";
      break;
    case Outcome::Kind::RoundCapExceeded:
      std::cout << "Round cap exceeded after " << res.outcome.round << " rounds\n";
      break;
    case Outcome::Kind::InvariantViolation:
      std::cout << "Invariant violation at round " << res.outcome.round << "\n";
      break;
    case Outcome::Kind::QuiescentNonFinal:
      std::cout << "Quiescent but not final at round " << res.outcome.round << "\n";
      break;
  }
  std::cout << "moves: " << moves << "  color changes: " << recolors
            << "  violations: " << res.violations.size() << "\n";
  for (const Violation& v : res.violations) std::cout << "  " << describe(v) << "\n";
  std::cout << render_ascii(res.final_config) << "\n";

  switch (res.outcome.kind) {
    case Outcome::Kind::Completed: return 0;
    case Outcome::Kind::RoundCapExceeded: return 2;
    default: return 1;
  }
}

struct ExploreFlags {
  int rows = 0, cols = 0;
  bool all_initials = false;
  std::string initial_path;
  int subset_budget = 6;
  bool allow_sampled = false;
  std::uint64_t max_states = 5'000'000;
  int jobs = 1;
  std::string report_path;
};

int do_explore(const ExploreFlags& f) {
  if (f.rows < 2 || f.cols < 2)
    throw std::runtime_error("--rows and --cols (both >= 2) are required");
  GridDims dims{f.rows, f.cols};

  std::vector<Configuration> initials;
  if (!f.initial_path.empty()) {
    RunSetup setup = parse_run_config(slurp(f.initial_path));
    if (!(setup.initial.dims == dims))
      throw std::runtime_error("--initial file is for a different grid");
    initials.push_back(setup.initial);
  } else {
    try {
      initials = enumerate_initials(dims);
    } catch (const std::length_error& e) {
      std::cerr << "explore: " << e.what() << "\n";
      return 2;
    }
  }

  std::size_t max_robots = 0;
  for (const Configuration& c : initials)
    max_robots = std::max(max_robots, c.robots.size());
  if (static_cast<int>(max_robots) > f.subset_budget && !f.allow_sampled) {
    std::cerr << "explore: " << max_robots << " robots exceed the subset budget of "
              << f.subset_budget
              << "; pass --allow-sampled for a sampled (non-exhaustive) run\n";
    return 2;
  }

  ExploreOptions opt;
  opt.full_subset_limit = f.subset_budget;
  opt.max_states = f.max_states;
  opt.jobs = f.jobs;
  ExplorationReport rep = explore(dims, initials, opt);

  auto out = open_out(f.report_path);
  out << report_json(rep).dump(2) << "\n";

  std::cout << "states: " << rep.states << "  transitions: " << rep.transitions
            << "  violations: " << rep.violation_count
            << "  quiescent non-final: " << rep.quiescent_count
            << "  final reachability: " << (rep.final_reachability ? "yes" : "no")
            << (rep.sampled ? "  (sampled)" : "") << "\n";
  if (!rep.final_reachability && !rep.counterexample_digest.empty())
    std::cout << "counterexample: " << rep.counterexample_digest << "\n";

  if (rep.violation_count > 0) return 1;
  if (rep.truncated) {
    std::cerr << "explore: state budget exhausted before closure\n";
    return 2;
  }
  return rep.clean() ? 0 : 1;
}

struct VerifyFlags {
  int rows = 0, cols = 0;
  std::string nodes;
  std::string trace_path;
  bool oracle = false;
};

std::vector<Coord> parse_nodes(const std::string& text) {
  std::vector<Coord> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    int i = 0, j = 0;
    char comma = 0;
    std::stringstream pair(item);
    if (!(pair >> i >> comma >> j) || comma != ',')
      throw std::runtime_error("cannot parse node '" + item + "'");
    out.push_back({i, j});
  }
  if (out.empty()) throw std::runtime_error("--nodes is empty");
  return out;
}

int do_verify_mis(const VerifyFlags& f) {
  GridDims dims{f.rows, f.cols};
  std::vector<Coord> nodes;

  if (!f.trace_path.empty()) {
    std::ifstream in(f.trace_path);
    if (!in) throw std::runtime_error("cannot read " + f.trace_path);
    TraceFile tf = read_trace(in);
    if (f.rows == 0 && f.cols == 0) dims = tf.initial.dims;
    if (!(dims == tf.initial.dims))
      throw std::runtime_error("--rows/--cols disagree with the trace");
    Configuration last = replay_configs(tf.initial, tf.events).back();
    bool all_red = true;
    for (const auto& [id, st] : last.robots) {
      nodes.push_back(st.pos);
      if (st.color != Color::Red) all_red = false;
    }
    if (!all_red) {
      std::cout << "final configuration is not all red\n";
      return 1;
    }
  } else {
    if (f.rows < 2 || f.cols < 2)
      throw std::runtime_error("--rows and --cols (both >= 2) are required");
    nodes = parse_nodes(f.nodes);
  }

  require_valid(dims);
  bool ok = is_maximum_independent(dims, nodes);
  std::cout << "maximum independent set: " << (ok ? "yes" : "no") << " ("
            << nodes.size() << " nodes on " << dims.rows << "x" << dims.cols
            << ")\n";
  if (f.oracle) {
    if (dims.node_count() > 20)
      throw std::runtime_error("--oracle is limited to grids of at most 20 cells");
    int best = brute_force_max_independent_size(dims);
    std::cout << "brute-force maximum independent set size: " << best << "\n";
    if (best != dims.target_size()) return 1;
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"myopic luminous robots forming a maximum independent set on a grid"};
  app.require_subcommand(1);

  SimulateFlags sf;
  CLI::App* sim = app.add_subcommand("simulate", "run one schedule and report the outcome");
  sim->add_option("--rows", sf.rows, "grid rows (>= 2)");
  sim->add_option("--cols", sf.cols, "grid columns (>= 2)");
  auto* placement_opt =
      sim->add_option("--placement", sf.placement,
                      "random | packed-se | packed-ne | packed-sw | packed-nw | target")
          ->check(CLI::IsMember({"random", "packed-se", "packed-ne", "packed-sw",
                                 "packed-nw", "target"}));
  auto* config_opt = sim->add_option("--config", sf.config_path, "run-config JSON file");
  placement_opt->excludes(config_opt);
  config_opt->excludes(placement_opt);
  auto* sched_opt =
      sim->add_option("--scheduler", sf.scheduler,
                      "fullsync | randomfair | roundrobin | singleton")
          ->check(CLI::IsMember({"fullsync", "randomfair", "roundrobin", "singleton"}));
  sim->add_option("--seed", sf.seed, "seed for random placement and randomfair");
  sim->add_option("--p", sf.p, "randomfair activation probability (0, 1]");
  sim->add_option("--k", sf.k, "roundrobin block size");
  sim->add_option("--max-rounds", sf.max_rounds, "round cap (default 50*m*n*(m+n))");
  sim->add_option("--trace", sf.trace_path, "write a JSON Lines trace here");
  sim->add_option("--frames", sf.frames_path, "write frames here (.svg for SVG)");
  sim->add_flag("--no-monitors", sf.no_monitors, "skip per-round invariant checks");

  ExploreFlags ef;
  CLI::App* exp = app.add_subcommand("explore", "exhaustive scheduler-choice closure");
  exp->add_option("--rows", ef.rows, "grid rows (>= 2)")->required();
  exp->add_option("--cols", ef.cols, "grid columns (>= 2)")->required();
  auto* all_opt = exp->add_flag("--all-initials", ef.all_initials,
                                "every placement of ceil(mn/2) greens (default)");
  auto* init_opt = exp->add_option("--initial", ef.initial_path,
                                   "explore from this run-config JSON file only");
  all_opt->excludes(init_opt);
  init_opt->excludes(all_opt);
  exp->add_option("--subset-budget", ef.subset_budget,
                  "max robots for full 2^k-1 activation branching");
  exp->add_flag("--allow-sampled", ef.allow_sampled,
                "permit sampled branching past the subset budget");
  exp->add_option("--max-states", ef.max_states, "visited-state budget");
  exp->add_option("--jobs", ef.jobs, "worker threads");
  exp->add_option("--report", ef.report_path, "write the JSON report here")->required();

  VerifyFlags vf;
  CLI::App* ver = app.add_subcommand("verify-mis", "check a node set against the grid");
  ver->add_option("--rows", vf.rows, "grid rows (>= 2)");
  ver->add_option("--cols", vf.cols, "grid columns (>= 2)");
  auto* nodes_opt = ver->add_option("--nodes", vf.nodes, "semicolon-separated \"i,j\" list");
  auto* from_opt = ver->add_option("--from-final", vf.trace_path,
                                   "verify the final configuration of this trace");
  nodes_opt->excludes(from_opt);
  from_opt->excludes(nodes_opt);
  ver->add_flag("--oracle", vf.oracle, "cross-check with brute-force enumeration");

  int rc = 0;
  sim->callback([&] { rc = do_simulate(sf, sched_opt->count() > 0); });
  exp->callback([&] { rc = do_explore(ef); });
  ver->callback([&] {
    if (vf.nodes.empty() && vf.trace_path.empty())
      throw std::runtime_error("one of --nodes or --from-final is required");
    rc = do_verify_mis(vf);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}

}  // namespace misform
