// External file formats.
//
//   detections.jsonl   one frame per line:
//                      {"frame":0,"ts_us":0,"boxes":[{"cx":1.0,"cy":2.0,"w":3.0,"h":4.0}]}
//   sensors/<id>.csv   header "ts_us,ax,ay,az"; the file stem is the sensor id
//   truth.json         {"sensor_to_person":{"<sensor>":"<person>"},
//                       "box_person":[{"frame":0,"persons":["p1","p2"]}]}
#pragma once

#include <filesystem>
#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpid/simulator.hpp"

namespace wpid::io {

namespace fs = std::filesystem;

std::string format_double(double x);  // shortest round-trip form

void write_detections(std::ostream& out, const std::vector<DetectionFrame>& frames);
std::vector<DetectionFrame> read_detections(std::istream& in);

void write_sensor_csv(std::ostream& out, const SensorStream& stream);
// nominal_rate is taken from the median sample spacing.
SensorStream read_sensor_csv(std::istream& in, const SensorId& id);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& content);

std::vector<DetectionFrame> load_detections(const fs::path& path);
SensorStream load_sensor(const fs::path& path);
GroundTruth load_truth(const fs::path& path);

// Writes detections.jsonl, sensors/<id>.csv and truth.json under dir.
void save_scenario(const fs::path& dir, const ScenarioData& data);

// Match/sweep inputs. JSON keys (all optional except the inputs):
//   detections, sensors (list of csv paths) or sensors_dir, truth,
//   fps, ts_gate, stage, tracer{radius_factor,max_gap},
//   filter{order,cutoff_hz}, similarity{d,extremum_window,
//   no_match_penalty_factor,zero_denominator_floor}, ts[]
// Relative paths resolve against the config file's directory.
struct RunConfig {
  fs::path detections;
  std::vector<fs::path> sensors;
  std::optional<fs::path> truth;
  PipelineConfig pipeline;
  std::string stage = "both";
  std::vector<double> ts_values{0.33, 1.0, 2.0, 3.0, 4.0};
};

RunConfig run_config_from_json(const std::string& text, const fs::path& base_dir);
// Layout written by save_scenario.
RunConfig run_config_for_dir(const fs::path& dir);

// Resolves sensor paths; throws IoError naming the first missing file.
ScenarioData load_run_inputs(const RunConfig& config);

}  // namespace wpid::io
