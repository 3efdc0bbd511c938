#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wpid/commands.hpp"
#include "wpid/io.hpp"

using namespace wpid;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("wpid_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void simulate_into(const fs::path& dir, const std::string& config_json = "") {
  CommandOptions opt;
  opt.out = dir.string();
  if (!config_json.empty()) {
    io::write_file(dir / "scenario.json", config_json);
    opt.config = (dir / "scenario.json").string();
  }
  std::ostringstream out, err;
  REQUIRE(cmd_simulate(opt, out, err) == 0);
}

}  // namespace

TEST_CASE("simulate writes detections, sensors and truth with the expected counts") {
  const auto dir = scratch("simulate");
  simulate_into(dir);
  CHECK(fs::exists(dir / "detections.jsonl"));
  CHECK(fs::exists(dir / "truth.json"));
  std::size_t sensors = 0;
  for (const auto& e : fs::directory_iterator(dir / "sensors")) sensors += e.path().extension() == ".csv";
  CHECK(sensors == 3);

  const auto frames = io::load_detections(dir / "detections.jsonl");
  CHECK(frames.size() == 2000);
  std::size_t boxes = 0;
  for (const auto& f : frames) boxes += f.boxes.size();
  // 6000 draws at p = 0.02: mean 5880, sd ~10.8; allow 5 sd.
  CHECK(boxes >= 5880 - 55);
  CHECK(boxes <= 5880 + 55);
}

TEST_CASE("simulate rejects fps 0") {
  const auto dir = scratch("badfps");
  CommandOptions opt;
  opt.out = dir.string();
  io::write_file(dir / "scenario.json", R"({"fps": 0, "persons": [{"id": "a", "path": [[0, 0]]}]})");
  opt.config = (dir / "scenario.json").string();
  std::ostringstream out, err;
  CHECK_THROWS_AS(cmd_simulate(opt, out, err), ConfigError);
}

TEST_CASE("match emits assignments and a summary with r_cd") {
  const auto dir = scratch("match");
  simulate_into(dir / "scene");
  CommandOptions opt;
  opt.input = (dir / "scene").string();
  opt.out = (dir / "out").string();
  std::ostringstream out, err;
  REQUIRE(cmd_match(opt, out, err) == 0);
  const auto summary = nlohmann::json::parse(io::read_file(dir / "out" / "summary.json"));
  CHECK(summary.at("r_cd").at("refined").get<double>() >= 0.9);
  CHECK(summary.at("r_cd").at("raw").get<double>() >= 0.9);
  CHECK(fs::exists(dir / "out" / "timing.json"));

  std::istringstream lines(io::read_file(dir / "out" / "assignments.jsonl"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("frame_index"));
    CHECK(j.contains("pairs"));
    ++count;
  }
  CHECK(count == 4000);  // both stages per frame
}

TEST_CASE("match without truth omits r_cd") {
  const auto dir = scratch("notruth");
  simulate_into(dir / "scene");
  fs::remove(dir / "scene" / "truth.json");
  CommandOptions opt;
  opt.input = (dir / "scene").string();
  opt.out = (dir / "out").string();
  opt.stage = "refined";
  std::ostringstream out, err;
  REQUIRE(cmd_match(opt, out, err) == 0);
  const auto summary = nlohmann::json::parse(io::read_file(dir / "out" / "summary.json"));
  CHECK_FALSE(summary.contains("r_cd"));
  CHECK_FALSE(io::read_file(dir / "out" / "assignments.jsonl").empty());
}

TEST_CASE("missing sensor file is an IoError naming the path") {
  const auto dir = scratch("missing");
  simulate_into(dir / "scene");
  io::write_file(dir / "run.json", R"({"detections": "scene/detections.jsonl",
                                       "sensors": ["scene/sensors/phone1.csv", "scene/sensors/nope.csv"]})");
  CommandOptions opt;
  opt.config = (dir / "run.json").string();
  opt.out = (dir / "out").string();
  std::ostringstream out, err;
  try {
    cmd_match(opt, out, err);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("nope.csv") != std::string::npos);
  }
}

TEST_CASE("sweep writes a 10-cell table and rejects an empty ts list") {
  const auto dir = scratch("sweep");
  simulate_into(dir / "scene");
  CommandOptions opt;
  opt.input = (dir / "scene").string();
  opt.out = (dir / "out").string();
  std::ostringstream out, err;
  REQUIRE(cmd_sweep(opt, out, err) == 0);
  std::istringstream csv(io::read_file(dir / "out" / "sweep.csv"));
  std::string line;
  std::size_t rows = 0;
  std::map<double, std::map<std::string, double>> cells;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string ts, stage, rate;
    std::getline(fields, ts, ',');
    std::getline(fields, stage, ',');
    std::getline(fields, rate, ',');
    cells[std::stod(ts)][stage] = std::stod(rate);
  }
  CHECK(rows == 10);
  for (const auto& [ts, by_stage] : cells) CHECK(by_stage.at("refined") >= by_stage.at("raw") - 0.02);
  CHECK(out.str().find("Refined") != std::string::npos);

  io::write_file(dir / "run.json", R"({"detections": "scene/detections.jsonl", "sensors_dir": "scene/sensors",
                                       "truth": "scene/truth.json", "ts": []})");
  CommandOptions empty;
  empty.config = (dir / "run.json").string();
  empty.out = (dir / "out2").string();
  CHECK_THROWS_AS(cmd_sweep(empty, out, err), FormatError);
}

TEST_CASE("simulate and match are byte-identical across runs") {
  const auto dir = scratch("determinism");
  simulate_into(dir / "a");
  simulate_into(dir / "b");
  for (const auto* name : {"detections.jsonl", "truth.json", "sensors/phone1.csv", "sensors/phone3.csv"})
    CHECK(io::read_file(dir / "a" / name) == io::read_file(dir / "b" / name));
  for (const auto* run : {"m1", "m2"}) {
    CommandOptions opt;
    opt.input = (dir / "a").string();
    opt.out = (dir / run).string();
    std::ostringstream out, err;
    REQUIRE(cmd_match(opt, out, err) == 0);
  }
  for (const auto* name : {"assignments.jsonl", "summary.json"})
    CHECK(io::read_file(dir / "m1" / name) == io::read_file(dir / "m2" / name));
}
