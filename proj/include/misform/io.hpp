#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "misform/explorer.hpp"
#include "misform/scheduler.hpp"

namespace misform {

// Decoded run-config file. Scheduler and the execution knobs are optional so
// command-line flags can fill the gaps.
struct RunSetup {
  Configuration initial;
  std::optional<SchedulerSpec> scheduler;
  std::optional<long> max_rounds;
  std::optional<bool> monitors;
  std::optional<std::string> trace_path;
  std::optional<std::string> frames_path;
};

// Throws std::runtime_error on malformed JSON, unknown fields, or values that
// do not decode into a configuration/scheduler.
RunSetup parse_run_config(const std::string& text);

struct TraceFile {
  Configuration initial;
  std::vector<TraceEvent> events;
};

// JSON Lines: one object per line. Line one carries round 0 with the initial
// configuration under "init"; each later line is one TraceEvent.
void write_trace(std::ostream& os, const Configuration& initial,
                 const std::vector<TraceEvent>& events);
TraceFile read_trace(std::istream& is);

// Configurations after 0..rounds rounds, reconstructed from the records.
std::vector<Configuration> replay_configs(const Configuration& initial,
                                          const std::vector<TraceEvent>& events);

nlohmann::json report_json(const ExplorationReport& rep);

// m lines of n chars, '.' for vacant and G/B/R by color; no trailing newline.
std::string render_ascii(const Configuration& config);

// One "# round N" header plus frame per configuration (rounds + 1 frames).
void write_frames_ascii(std::ostream& os, const Configuration& initial,
                        const std::vector<TraceEvent>& events);

// Same sequence as a single self-contained SVG, frames stacked vertically.
void write_frames_svg(std::ostream& os, const Configuration& initial,
                      const std::vector<TraceEvent>& events);

}  // namespace misform
