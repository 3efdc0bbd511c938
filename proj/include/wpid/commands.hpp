// Subcommands behind the wpid executable. Each returns the process exit code
// and throws wpid::Error subclasses on failure; data goes to `out`,
// diagnostics to `err`.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wpid {

struct CommandOptions {
  std::string config;  // scenario config (simulate) or run config (match, sweep)
  std::string input;   // directory written by simulate, used when config is empty
  std::string out;     // output directory
  std::string stage;   // raw | refined | both; empty keeps the config value
  std::vector<double> ts;
  std::optional<std::uint64_t> seed;
};

// Writes detections.jsonl, sensors/<id>.csv and truth.json.
int cmd_simulate(const CommandOptions& opt, std::ostream& out, std::ostream& err);
// Writes assignments.jsonl, summary.json (deterministic) and timing.json.
int cmd_match(const CommandOptions& opt, std::ostream& out, std::ostream& err);
// Writes sweep.csv and sweep.txt.
int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace wpid
