#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "misform/io.hpp"
#include "test_util.hpp"

using namespace misform;
using nlohmann::json;

namespace {

constexpr Color G = Color::Green;
constexpr Color R = Color::Red;

const char* kFullConfig = R"({
  "rows": 2, "cols": 3,
  "robots": [
    {"r": 1, "c": 2, "color": "G"},
    {"r": 2, "c": 1, "color": "B"},
    {"r": 1, "c": 1, "color": "R"}
  ],
  "scheduler": {"type": "randomfair", "p": 0.25, "seed": 9},
  "maxRounds": 50,
  "monitors": false,
  "trace": "out.jsonl",
  "frames": "out.txt"
})";

struct GoldenRun {
  Configuration initial;
  RunResult res;
};

GoldenRun golden_run() {
  auto c = make_config({2, 2}, {{{1, 2}, G}, {{2, 1}, G}});
  return {c, run(c, SchedulerSpec::full_sync())};
}

}  // namespace

TEST_CASE("run configs decode fully") {
  RunSetup s = parse_run_config(kFullConfig);
  CHECK(s.initial.dims == GridDims{2, 3});
  REQUIRE(s.initial.robots.size() == 3);
  CHECK(s.initial.robots.at(2).pos == Coord{2, 1});
  CHECK(s.initial.robots.at(2).color == Color::Blue);
  REQUIRE(s.scheduler.has_value());
  CHECK(s.scheduler->kind == SchedulerSpec::Kind::RandomFair);
  CHECK(s.max_rounds == 50);
  CHECK(s.monitors == false);
  CHECK(s.trace_path == "out.jsonl");
  CHECK(s.frames_path == "out.txt");
}

TEST_CASE("run configs decode every scheduler") {
  auto base = [](const std::string& sched) {
    return std::string(R"({"rows": 2, "cols": 2, "robots": [)"
                       R"({"r": 1, "c": 2}, {"r": 2, "c": 1}],)"
                       R"("scheduler": )") +
           sched + "}";
  };
  RunSetup plain = parse_run_config(base(R"({"type": "fullsync"})"));
  CHECK(plain.scheduler->kind == SchedulerSpec::Kind::FullSync);
  CHECK(plain.initial.robots.at(1).color == Color::Green);  // default
  CHECK(parse_run_config(base(R"({"type": "roundrobin", "k": 2})"))
            .scheduler->kind == SchedulerSpec::Kind::RoundRobin);
  CHECK(parse_run_config(base(R"({"type": "singleton", "script": [2, 1]})"))
            .scheduler->kind == SchedulerSpec::Kind::SingletonSweep);
  auto scripted =
      parse_run_config(base(R"({"type": "scripted", "script": [[1, 2], [2]]})"));
  REQUIRE(scripted.scheduler->kind == SchedulerSpec::Kind::Scripted);
  REQUIRE(scripted.scheduler->script.size() == 2);
  CHECK(scripted.scheduler->script[1] == ActivationSet{2});
  CHECK_THROWS_AS(parse_run_config(base(R"({"type": "lockstep"})")),
                  std::runtime_error);
}

TEST_CASE("run configs reject what they do not understand") {
  auto cfg = json::parse(kFullConfig);

  auto expect_reject = [](json j) {
    CHECK_THROWS_AS(parse_run_config(j.dump()), std::runtime_error);
  };

  json extra_top = cfg;
  extra_top["speed"] = 3;
  expect_reject(extra_top);

  json extra_robot = cfg;
  extra_robot["robots"][0]["name"] = "bob";
  expect_reject(extra_robot);

  json extra_sched = cfg;
  extra_sched["scheduler"]["alpha"] = 1;
  expect_reject(extra_sched);

  json no_rows = cfg;
  no_rows.erase("rows");
  expect_reject(no_rows);

  json no_robots = cfg;
  no_robots.erase("robots");
  expect_reject(no_robots);

  json bad_color = cfg;
  bad_color["robots"][0]["color"] = "purple";
  expect_reject(bad_color);

  json off_grid = cfg;
  off_grid["robots"][0]["c"] = 9;
  expect_reject(off_grid);

  json dup_cell = cfg;
  dup_cell["robots"][1]["r"] = 1;
  dup_cell["robots"][1]["c"] = 2;
  expect_reject(dup_cell);

  json neg_rounds = cfg;
  neg_rounds["maxRounds"] = -4;
  expect_reject(neg_rounds);

  expect_reject(json::parse(R"({"rows": 2})"));
  CHECK_THROWS_AS(parse_run_config("not json"), std::runtime_error);
}

TEST_CASE("traces survive a write and read back") {
  GoldenRun g = golden_run();
  REQUIRE(g.res.outcome.kind == Outcome::Kind::Completed);

  std::ostringstream os;
  write_trace(os, g.initial, g.res.trace);
  std::istringstream is(os.str());
  TraceFile t = read_trace(is);

  CHECK(t.initial.dims == g.initial.dims);
  CHECK(t.initial.robots.size() == g.initial.robots.size());
  for (const auto& [id, st] : g.initial.robots) {
    CHECK(t.initial.robots.at(id).pos == st.pos);
    CHECK(t.initial.robots.at(id).color == st.color);
  }
  REQUIRE(t.events.size() == g.res.trace.size());
  for (std::size_t i = 0; i < t.events.size(); ++i)
    CHECK(t.events[i] == g.res.trace[i]);
}

TEST_CASE("trace lines carry the documented fields") {
  GoldenRun g = golden_run();
  std::ostringstream os;
  write_trace(os, g.initial, g.res.trace);
  std::istringstream is(os.str());

  std::string line;
  REQUIRE(std::getline(is, line));
  json first = json::parse(line);
  CHECK(first["round"] == 0);
  CHECK(first["init"]["rows"] == 2);
  CHECK(first["init"]["cols"] == 2);
  CHECK(first["init"]["robots"].size() == 2);
  CHECK(first["digest"] == canonical_digest(g.initial));

  REQUIRE(std::getline(is, line));
  json second = json::parse(line);
  CHECK(second["round"] == 1);
  CHECK(second["activated"] == json::array({1, 2}));
  REQUIRE(second["moves"].size() == 2);
  const json& mv = second["moves"][0];
  CHECK(mv["id"] == 1);
  CHECK(mv["guard"] == "G-LEFT");
  CHECK(mv["family"] == "G1");
  CHECK(mv["from"] == json::array({1, 2}));
  CHECK(mv["to"] == json::array({1, 1}));
  CHECK(mv["color"] == "G");
  CHECK(second["digest"].is_string());
}

TEST_CASE("replay reconstructs every intermediate configuration") {
  GoldenRun g = golden_run();
  auto configs = replay_configs(g.initial, g.res.trace);
  REQUIRE(configs.size() == g.res.trace.size() + 1);
  CHECK(canonical_digest(configs.front()) == canonical_digest(g.initial));
  CHECK(canonical_digest(configs.back()) == canonical_digest(g.res.final_config));
  for (std::size_t i = 0; i < g.res.trace.size(); ++i)
    CHECK(canonical_digest(configs[i + 1]) == g.res.trace[i].digest);

  // Stepping each replayed configuration with the recorded activations
  // reproduces the recorded rounds exactly.
  for (std::size_t i = 0; i < g.res.trace.size(); ++i) {
    StepResult sr = step(configs[i], g.res.trace[i].activated);
    CHECK(canonical_digest(sr.next) == g.res.trace[i].digest);
  }
}

TEST_CASE("read_trace rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_trace(empty), std::runtime_error);

  std::istringstream no_init(R"({"round": 1, "activated": [1], "moves": []})");
  CHECK_THROWS_AS(read_trace(no_init), std::runtime_error);

  std::istringstream garbage("{]");
  CHECK_THROWS_AS(read_trace(garbage), std::runtime_error);
}

TEST_CASE("ascii rendering") {
  CHECK(render_ascii(make_config({2, 2}, {{{1, 1}, R}, {{2, 2}, R}})) ==
        "R.\n.R");
  CHECK(render_ascii(make_config({2, 2}, {{{1, 2}, G}})) == ".G\n..");
  CHECK(render_ascii(make_config({2, 3}, {{{2, 1}, Color::Blue}})) ==
        "...\nB..");
}

TEST_CASE("ascii frames cover every round") {
  GoldenRun g = golden_run();
  std::ostringstream os;
  write_frames_ascii(os, g.initial, g.res.trace);
  std::string text = os.str();

  std::size_t frames = 0;
  for (std::size_t at = text.find("# round "); at != std::string::npos;
       at = text.find("# round ", at + 1))
    ++frames;
  CHECK(frames == g.res.trace.size() + 1);
  CHECK(text.find("# round 0\n.G\nG.\n") != std::string::npos);
  CHECK(text.find("R.\n.R") != std::string::npos);
}

TEST_CASE("svg frames are one self-contained document") {
  GoldenRun g = golden_run();
  std::ostringstream os;
  write_frames_svg(os, g.initial, g.res.trace);
  std::string text = os.str();

  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find("round 0") != std::string::npos);
  CHECK(text.find("round 4") != std::string::npos);
  std::size_t rects = 0;
  for (std::size_t at = text.find("<rect"); at != std::string::npos;
       at = text.find("<rect", at + 1))
    ++rects;
  CHECK(rects >= (g.res.trace.size() + 1) * 4);
}

TEST_CASE("exploration reports serialize with stable keys") {
  auto c = make_config({2, 2}, {{{1, 2}, G}, {{2, 1}, G}});
  ExplorationReport rep = explore({2, 2}, {c});
  json j = report_json(rep);

  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 2);
  CHECK(j["initials"] == 1);
  CHECK(j["states"] == rep.states);
  CHECK(j["finalStates"] == rep.final_states);
  CHECK(j["transitions"] == rep.transitions);
  CHECK(j["edges"] == rep.edges);
  CHECK(j["violationCount"] == 0);
  CHECK(j["violations"].is_array());
  CHECK(j["quiescentCount"] == 0);
  CHECK(j["quiescentNonFinal"].is_array());
  CHECK(j["finalReachability"] == true);
  CHECK(j["peakFrontier"] == rep.peak_frontier);
  CHECK(j["wallSeconds"].is_number());
  CHECK(j["sampled"] == false);
  CHECK(j["truncated"] == false);
  CHECK_FALSE(j.contains("counterexampleDigest"));

  ExploreOptions stall;
  stall.rule = [](const View&) { return Decision{GuardId::GWait, Action::noop()}; };
  json bad = report_json(explore({2, 2}, {c}, stall));
  CHECK(bad["finalReachability"] == false);
  CHECK(bad["counterexampleDigest"] == canonical_digest(c));
  CHECK(bad["quiescentCount"] == 1);
}
