#include "wpid/commands.hpp"

#include <sstream>

#include "json.hpp"
#include "wpid/io.hpp"

namespace wpid {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void require_out(const CommandOptions& opt) {
  if (opt.out.empty()) throw ConfigError("an output directory is required");
}

io::RunConfig load_run_config(const CommandOptions& opt) {
  io::RunConfig config;
  if (!opt.config.empty()) {
    const fs::path path(opt.config);
    config = io::run_config_from_json(io::read_file(path), path.parent_path());
  } else if (!opt.input.empty()) {
    config = io::run_config_for_dir(opt.input);
  } else {
    throw ConfigError("either --config or --input is required");
  }
  if (!opt.stage.empty()) config.stage = opt.stage;
  if (config.stage != "raw" && config.stage != "refined" && config.stage != "both")
    throw FormatError("--stage must be raw, refined or both");
  return config;
}

std::vector<Stage> stages_of(const std::string& stage) {
  if (stage == "both") return {Stage::raw, Stage::refined};
  return {parse_stage(stage)};
}

ordered_json pairs_json(const Assignment& a) {
  ordered_json pairs = ordered_json::array();
  for (const auto& [t, s] : a.pairs) pairs.push_back({t, s});
  return pairs;
}

}  // namespace

int cmd_simulate(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  require_out(opt);
  ScenarioConfig config = opt.config.empty() ? default_scenario()
                                             : io::scenario_from_json(io::read_file(opt.config));
  if (opt.seed) config.seed = *opt.seed;
  const auto data = generate(config);
  io::save_scenario(opt.out, data);
  std::size_t boxes = 0;
  for (const auto& f : data.frames) boxes += f.boxes.size();
  err << "wrote " << data.frames.size() << " frames (" << boxes << " boxes), " << data.sensors.size()
      << " sensor streams\n";
  out << (fs::path(opt.out) / "detections.jsonl").string() << '\n';
  for (const auto& s : data.sensors) out << (fs::path(opt.out) / "sensors" / (s.sensor_id + ".csv")).string() << '\n';
  out << (fs::path(opt.out) / "truth.json").string() << '\n';
  return 0;
}

int cmd_match(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  require_out(opt);
  auto config = load_run_config(opt);
  if (opt.ts.size() > 1) throw FormatError("match takes a single --ts gate");
  if (opt.ts.size() == 1) config.pipeline.ts_gate = opt.ts.front();
  const auto data = io::load_run_inputs(config);
  const auto result = run_pipeline(data, config.pipeline);
  const auto stages = stages_of(config.stage);

  std::ostringstream log;
  for (const auto& frame : result.frames)
    for (Stage stage : stages) {
      ordered_json line;
      line["frame_index"] = frame.frame_index;
      line["stage"] = to_string(stage);
      line["pairs"] = pairs_json(stage == Stage::raw ? frame.raw : frame.refined);
      log << line.dump() << '\n';
    }
  io::write_file(fs::path(opt.out) / "assignments.jsonl", log.str());

  ordered_json summary;
  summary["frames"] = result.frames.size();
  summary["sensors"] = data.sensors.size();
  summary["ts_gate"] = config.pipeline.ts_gate;
  summary["pair_changes"] = {{"raw", result.raw_changes}, {"refined", result.refined_changes}};
  if (data.truth) {
    ordered_json rates, trace_side;
    for (Stage stage : stages) {
      const auto& counters = stage == Stage::raw ? *result.raw_counters : *result.refined_counters;
      const auto rate = stage_rate(result, stage);
      rates[to_string(stage)] = rate ? ordered_json(*rate) : ordered_json(nullptr);
      try {
        trace_side[to_string(stage)] = r_cd_trace_side(counters);
      } catch (const UndefinedRate&) {
        trace_side[to_string(stage)] = nullptr;
      }
    }
    summary["r_cd"] = rates;
    summary["r_cd_trace_side"] = trace_side;
  }
  io::write_file(fs::path(opt.out) / "summary.json", summary.dump(2) + "\n");

  ordered_json timing;
  timing["pipeline_seconds"] = result.pipeline_seconds;
  timing["throughput_fps"] = result.throughput_fps();
  io::write_file(fs::path(opt.out) / "timing.json", timing.dump(2) + "\n");

  err << "processed " << result.frames.size() << " frames at " << result.throughput_fps() << " fps\n";
  out << summary.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  require_out(opt);
  auto config = load_run_config(opt);
  if (!opt.ts.empty()) config.ts_values = opt.ts;
  if (config.ts_values.empty()) throw FormatError("ts list is empty");
  const auto data = io::load_run_inputs(config);
  const auto rows = ts_sweep(data, config.pipeline, config.ts_values, stages_of(config.stage), opt.seed.value_or(0));
  const auto table = format_sweep_table(rows);
  io::write_file(fs::path(opt.out) / "sweep.csv", format_sweep_csv(rows));
  io::write_file(fs::path(opt.out) / "sweep.txt", table);
  err << "swept " << config.ts_values.size() << " TS values\n";
  out << table;
  return 0;
}

}  // namespace wpid
