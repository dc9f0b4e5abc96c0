#include "misform/io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace misform {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::runtime_error(msg); }

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) bad(std::string("unknown field '") + it.key() + "' in " + where);
  }
}

Color parse_color(const json& v, const char* where) {
  if (!v.is_string() || v.get<std::string>().size() != 1)
    bad(std::string(where) + ": color must be one of \"G\", \"B\", \"R\"");
  auto c = color_from_char(v.get<std::string>()[0]);
  if (!c) bad(std::string(where) + ": color must be one of \"G\", \"B\", \"R\"");
  return *c;
}

int parse_int(const json& v, const char* where) {
  if (!v.is_number_integer()) bad(std::string(where) + ": expected an integer");
  return v.get<int>();
}

SchedulerSpec parse_scheduler(const json& s) {
  if (!s.is_object()) bad("scheduler: expected an object");
  reject_unknown(s, "scheduler", {"type", "seed", "p", "k", "script"});
  if (!s.contains("type") || !s.at("type").is_string())
    bad("scheduler: missing string field 'type'");
  std::string type = s.at("type").get<std::string>();

  std::uint64_t seed = 0;
  if (s.contains("seed")) {
    if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer())
      bad("scheduler.seed: expected an integer");
    seed = s.at("seed").get<std::uint64_t>();
  }

  if (type == "fullsync") return SchedulerSpec::full_sync();
  if (type == "randomfair") {
    double p = 0.5;
    if (s.contains("p")) {
      if (!s.at("p").is_number()) bad("scheduler.p: expected a number");
      p = s.at("p").get<double>();
    }
    return SchedulerSpec::random_fair(p, seed);
  }
  if (type == "roundrobin") {
    int k = 2;
    if (s.contains("k")) k = parse_int(s.at("k"), "scheduler.k");
    return SchedulerSpec::round_robin(k);
  }
  if (type == "singleton") {
    std::vector<RobotId> order;
    if (s.contains("script")) {
      if (!s.at("script").is_array()) bad("scheduler.script: expected an array");
      for (const json& v : s.at("script"))
        order.push_back(parse_int(v, "scheduler.script"));
    }
    return SchedulerSpec::singleton_sweep(order);
  }
  if (type == "scripted") {
    if (!s.contains("script") || !s.at("script").is_array())
      bad("scheduler: type 'scripted' requires an array field 'script'");
    std::vector<ActivationSet> script;
    for (const json& roundv : s.at("script")) {
      if (!roundv.is_array()) bad("scheduler.script: expected arrays of ids");
      ActivationSet act;
      for (const json& v : roundv) act.push_back(parse_int(v, "scheduler.script"));
      script.push_back(std::move(act));
    }
    return SchedulerSpec::scripted(script);
  }
  bad("scheduler.type: unknown scheduler '" + type + "'");
}

// Each guard maps to one action shape, which lets traces round-trip without
// re-running the rule engine.
Action action_for(GuardId g) {
  switch (g) {
    case GuardId::GRed: return Action::set_color(Color::Red);
    case GuardId::GLeft: return Action::move(Direction::Left);
    case GuardId::GUp:
    case GuardId::GUpB: return Action::move(Direction::Up);
    case GuardId::GRightA:
    case GuardId::GRightB: return Action::move(Direction::Right);
    case GuardId::GDownA:
    case GuardId::GDownB:
    case GuardId::GDownU: return Action::move(Direction::Down);
    case GuardId::GBlueA:
    case GuardId::GBlueB:
    case GuardId::GBlueU: return Action::set_color(Color::Blue);
    case GuardId::BRight: return Action::set_color_and_move(Color::Green, Direction::Right);
    case GuardId::BLeft: return Action::set_color_and_move(Color::Green, Direction::Left);
    case GuardId::BDown: return Action::set_color_and_move(Color::Green, Direction::Down);
    case GuardId::BRevert: return Action::set_color(Color::Green);
    case GuardId::GWait:
    case GuardId::BWait:
    case GuardId::RFixed: return Action::noop();
  }
  throw std::logic_error("unhandled guard");
}

GuardId guard_from_name(const std::string& name) {
  for (int g = 0; g <= static_cast<int>(GuardId::RFixed); ++g)
    if (name == guard_name(static_cast<GuardId>(g)))
      return static_cast<GuardId>(g);
  bad("unknown guard '" + name + "'");
}

json coord_json(Coord c) { return json::array({c.i, c.j}); }

Coord parse_coord(const json& v, const char* where) {
  if (!v.is_array() || v.size() != 2)
    bad(std::string(where) + ": expected [i, j]");
  return {parse_int(v[0], where), parse_int(v[1], where)};
}

json event_json(const TraceEvent& e) {
  json moves = json::array();
  for (const MoveRecord& r : e.records) {
    moves.push_back({{"id", r.id},
                     {"guard", guard_name(r.guard)},
                     {"family", guard_family(r.guard)},
                     {"from", coord_json(r.from)},
                     {"to", coord_json(r.to)},
                     {"color", std::string(1, color_char(r.color_after))}});
  }
  return {{"round", e.round},
          {"activated", e.activated},
          {"moves", std::move(moves)},
          {"digest", e.digest}};
}

json init_json(const Configuration& c) {
  json robots = json::array();
  for (const auto& [id, st] : c.robots)
    robots.push_back({{"id", id},
                      {"r", st.pos.i},
                      {"c", st.pos.j},
                      {"color", std::string(1, color_char(st.color))}});
  return {{"rows", c.dims.rows}, {"cols", c.dims.cols}, {"robots", std::move(robots)}};
}

json violation_json(const Violation& v) {
  json ids = json::array();
  for (RobotId id : v.ids) ids.push_back(id);
  json coords = json::array();
  for (Coord c : v.coords) coords.push_back(coord_json(c));
  return {{"kind", violation_kind_name(v.kind)},
          {"round", v.round},
          {"ids", std::move(ids)},
          {"coords", std::move(coords)},
          {"detail", v.detail}};
}

}  // namespace

RunSetup parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("config: expected a JSON object");
  reject_unknown(doc, "config",
                 {"rows", "cols", "robots", "scheduler", "maxRounds", "monitors",
                  "trace", "frames"});
  if (!doc.contains("rows") || !doc.contains("cols") || !doc.contains("robots"))
    bad("config: 'rows', 'cols', and 'robots' are required");

  RunSetup setup;
  setup.initial.dims = {parse_int(doc.at("rows"), "rows"),
                        parse_int(doc.at("cols"), "cols")};
  require_valid(setup.initial.dims);

  if (!doc.at("robots").is_array() || doc.at("robots").empty())
    bad("robots: expected a nonempty array");
  RobotId next_id = 1;
  for (const json& rv : doc.at("robots")) {
    if (!rv.is_object()) bad("robots: expected objects {r, c, color}");
    reject_unknown(rv, "robots[]", {"r", "c", "color"});
    if (!rv.contains("r") || !rv.contains("c"))
      bad("robots[]: 'r' and 'c' are required");
    Coord pos{parse_int(rv.at("r"), "robots[].r"), parse_int(rv.at("c"), "robots[].c")};
    if (!setup.initial.dims.contains(pos)) bad("robots[]: position off the grid");
    Color color = rv.contains("color") ? parse_color(rv.at("color"), "robots[].color")
                                       : Color::Green;
    setup.initial.robots[next_id++] = {pos, color};
  }
  if (!setup.initial.distinct_positions()) bad("robots: positions must be distinct");

  if (doc.contains("scheduler")) setup.scheduler = parse_scheduler(doc.at("scheduler"));
  if (doc.contains("maxRounds")) {
    if (!doc.at("maxRounds").is_number_integer() || doc.at("maxRounds").get<long>() < 0)
      bad("maxRounds: expected a non-negative integer");
    setup.max_rounds = doc.at("maxRounds").get<long>();
  }
  if (doc.contains("monitors")) {
    if (!doc.at("monitors").is_boolean()) bad("monitors: expected true or false");
    setup.monitors = doc.at("monitors").get<bool>();
  }
  if (doc.contains("trace")) {
    if (!doc.at("trace").is_string()) bad("trace: expected a path string");
    setup.trace_path = doc.at("trace").get<std::string>();
  }
  if (doc.contains("frames")) {
    if (!doc.at("frames").is_string()) bad("frames: expected a path string");
    setup.frames_path = doc.at("frames").get<std::string>();
  }
  return setup;
}

void write_trace(std::ostream& os, const Configuration& initial,
                 const std::vector<TraceEvent>& events) {
  json head = {{"round", 0},
               {"init", init_json(initial)},
               {"digest", canonical_digest(initial)}};
  os << head.dump() << '\n';
  for (const TraceEvent& e : events) os << event_json(e).dump() << '\n';
}

TraceFile read_trace(std::istream& is) {
  TraceFile tf;
  std::string line;
  bool have_init = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      bad(std::string("trace line is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("round"))
      bad("trace line: expected an object with 'round'");
    if (!have_init) {
      if (doc.at("round").get<int>() != 0 || !doc.contains("init"))
        bad("trace: first line must carry round 0 with 'init'");
      const json& init = doc.at("init");
      reject_unknown(init, "init", {"rows", "cols", "robots"});
      tf.initial.dims = {parse_int(init.at("rows"), "init.rows"),
                         parse_int(init.at("cols"), "init.cols")};
      for (const json& rv : init.at("robots")) {
        RobotId id = parse_int(rv.at("id"), "init.robots[].id");
        Coord pos{parse_int(rv.at("r"), "init.robots[].r"),
                  parse_int(rv.at("c"), "init.robots[].c")};
        tf.initial.robots[id] = {pos, parse_color(rv.at("color"), "init.robots[].color")};
      }
      have_init = true;
      continue;
    }
    TraceEvent e;
    e.round = doc.at("round").get<long>();
    for (const json& v : doc.at("activated"))
      e.activated.push_back(parse_int(v, "activated"));
    for (const json& mv : doc.at("moves")) {
      MoveRecord r;
      r.id = parse_int(mv.at("id"), "moves[].id");
      r.guard = guard_from_name(mv.at("guard").get<std::string>());
      r.action = action_for(r.guard);
      r.from = parse_coord(mv.at("from"), "moves[].from");
      r.to = parse_coord(mv.at("to"), "moves[].to");
      r.color_after = parse_color(mv.at("color"), "moves[].color");
      e.records.push_back(r);
    }
    e.digest = doc.at("digest").get<std::string>();
    tf.events.push_back(std::move(e));
  }
  if (!have_init) bad("trace: empty file");
  return tf;
}

std::vector<Configuration> replay_configs(const Configuration& initial,
                                          const std::vector<TraceEvent>& events) {
  std::vector<Configuration> out;
  out.reserve(events.size() + 1);
  out.push_back(initial);
  Configuration cur = initial;
  for (const TraceEvent& e : events) {
    for (const MoveRecord& r : e.records) {
      auto it = cur.robots.find(r.id);
      if (it == cur.robots.end()) bad("trace replay: record for unknown robot");
      it->second.pos = r.to;
      it->second.color = r.color_after;
    }
    out.push_back(cur);
  }
  return out;
}

nlohmann::json report_json(const ExplorationReport& rep) {
  json violations = json::array();
  for (const Violation& v : rep.violations) violations.push_back(violation_json(v));
  json j = {{"rows", rep.dims.rows},
            {"cols", rep.dims.cols},
            {"initials", rep.initials},
            {"states", rep.states},
            {"finalStates", rep.final_states},
            {"transitions", rep.transitions},
            {"edges", rep.edges},
            {"violationCount", rep.violation_count},
            {"violations", std::move(violations)},
            {"quiescentCount", rep.quiescent_count},
            {"quiescentNonFinal", rep.quiescent_nonfinal},
            {"finalReachability", rep.final_reachability},
            {"peakFrontier", rep.peak_frontier},
            {"wallSeconds", rep.wall_seconds},
            {"sampled", rep.sampled},
            {"truncated", rep.truncated}};
  if (!rep.final_reachability && !rep.counterexample_digest.empty())
    j["counterexampleDigest"] = rep.counterexample_digest;
  return j;
}

std::string render_ascii(const Configuration& config) {
  std::vector<std::string> rows(config.dims.rows,
                                std::string(config.dims.cols, '.'));
  for (const auto& [id, st] : config.robots) {
    if (!config.dims.contains(st.pos)) continue;
    rows[st.pos.i - 1][st.pos.j - 1] = color_char(st.color);
  }
  std::string out;
  for (int i = 0; i < config.dims.rows; ++i) {
    if (i) out += '\n';
    out += rows[i];
  }
  return out;
}

void write_frames_ascii(std::ostream& os, const Configuration& initial,
                        const std::vector<TraceEvent>& events) {
  std::vector<Configuration> frames = replay_configs(initial, events);
  for (std::size_t r = 0; r < frames.size(); ++r) {
    if (r) os << '\n';
    os << "# round " << r << '\n' << render_ascii(frames[r]) << '\n';
  }
}

void write_frames_svg(std::ostream& os, const Configuration& initial,
                      const std::vector<TraceEvent>& events) {
  std::vector<Configuration> frames = replay_configs(initial, events);
  const int cell = 24, margin = 10, label = 18;
  const int m = initial.dims.rows, n = initial.dims.cols;
  const int fw = n * cell, fh = label + m * cell + margin;
  const int width = 2 * margin + fw;
  const int height = margin + static_cast<int>(frames.size()) * fh;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"12\">\n";
  for (std::size_t r = 0; r < frames.size(); ++r) {
    const int ox = margin;
    const int oy = margin + static_cast<int>(r) * fh;
    os << "<text x=\"" << ox << "\" y=\"" << oy + 12 << "\">round " << r
       << "</text>\n";
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        os << "<rect x=\"" << ox + j * cell << "\" y=\"" << oy + label + i * cell
           << "\" width=\"" << cell << "\" height=\"" << cell
           << "\" fill=\"white\" stroke=\"#bbbbbb\"/>\n";
    for (const auto& [id, st] : frames[r].robots) {
      if (!frames[r].dims.contains(st.pos)) continue;
      const char* fill = st.color == Color::Green   ? "#2e8b57"
                         : st.color == Color::Blue  ? "#1e64c8"
                                                    : "#c03232";
      os << "<circle cx=\"" << ox + (st.pos.j - 1) * cell + cell / 2 << "\" cy=\""
         << oy + label + (st.pos.i - 1) * cell + cell / 2 << "\" r=\""
         << cell / 2 - 3 << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace misform
