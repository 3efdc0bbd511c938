#include "wpid/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wpid::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw FormatError(where + ": cannot parse number '" + std::string(text) + "'");
  return value;
}

std::int64_t parse_int(std::string_view text, const std::string& where) {
  std::int64_t value = 0;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw FormatError(where + ": cannot parse integer '" + std::string(text) + "'");
  return value;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

void write_detections(std::ostream& out, const std::vector<DetectionFrame>& frames) {
  for (const auto& f : frames) {
    out << "{\"frame\":" << f.frame_index << ",\"ts_us\":" << f.timestamp.us << ",\"boxes\":[";
    for (std::size_t b = 0; b < f.boxes.size(); ++b) {
      const auto& box = f.boxes[b];
      if (b) out << ',';
      out << "{\"cx\":" << format_double(box.cx) << ",\"cy\":" << format_double(box.cy)
          << ",\"w\":" << format_double(box.w) << ",\"h\":" << format_double(box.h) << '}';
    }
    out << "]}\n";
  }
}

std::vector<DetectionFrame> read_detections(std::istream& in) {
  std::vector<DetectionFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      DetectionFrame f;
      f.frame_index = j.at("frame").get<FrameIndex>();
      f.timestamp = Timestamp{j.at("ts_us").get<std::int64_t>()};
      for (const auto& b : j.at("boxes"))
        f.boxes.push_back({b.at("cx").get<double>(), b.at("cy").get<double>(), b.at("w").get<double>(),
                           b.at("h").get<double>()});
      frames.push_back(std::move(f));
    } catch (const json::exception& e) {
      throw FormatError("detections line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return frames;
}

void write_sensor_csv(std::ostream& out, const SensorStream& stream) {
  out << "ts_us,ax,ay,az\n";
  for (const auto& s : stream.samples)
    out << s.timestamp.us << ',' << format_double(s.ax) << ',' << format_double(s.ay) << ','
        << format_double(s.az) << '\n';
}

SensorStream read_sensor_csv(std::istream& in, const SensorId& id) {
  SensorStream stream;
  stream.sensor_id = id;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("sensor '" + id + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "ts_us,ax,ay,az") throw FormatError("sensor '" + id + "': expected header ts_us,ax,ay,az");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "sensor '" + id + "' line " + std::to_string(line_no);
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
      fields.push_back(rest.substr(0, pos));
    fields.push_back(rest);
    if (fields.size() != 4) throw FormatError(where + ": expected 4 fields");
    stream.samples.push_back({Timestamp{parse_int(fields[0], where)}, parse_double(fields[1], where),
                              parse_double(fields[2], where), parse_double(fields[3], where)});
  }
  if (stream.samples.size() >= 2) {
    std::vector<std::int64_t> gaps;
    for (std::size_t k = 1; k < stream.samples.size(); ++k)
      gaps.push_back(stream.samples[k].timestamp.us - stream.samples[k - 1].timestamp.us);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    const auto median = gaps[gaps.size() / 2];
    if (median <= 0) throw FormatError("sensor '" + id + "': timestamps not increasing");
    stream.nominal_rate = 1e6 / static_cast<double>(median);
  }
  return stream;
}

std::string truth_to_json(const GroundTruth& truth) {
  json j;
  j["sensor_to_person"] = json::object();
  for (const auto& [s, p] : truth.sensor_to_person) j["sensor_to_person"][s] = p;
  j["box_person"] = json::array();
  for (const auto& [frame, persons] : truth.box_person)
    j["box_person"].push_back({{"frame", frame}, {"persons", persons}});
  return j.dump() + "\n";
}

GroundTruth truth_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    GroundTruth truth;
    for (const auto& [s, p] : j.at("sensor_to_person").items()) truth.sensor_to_person[s] = p.get<PersonId>();
    if (j.contains("box_person"))
      for (const auto& entry : j.at("box_person"))
        truth.box_person[entry.at("frame").get<FrameIndex>()] = entry.at("persons").get<std::vector<PersonId>>();
    return truth;
  } catch (const json::exception& e) {
    throw FormatError(std::string("truth: ") + e.what());
  }
}

ScenarioConfig scenario_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ScenarioConfig c;
    if (j.contains("persons")) c.persons.clear();
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.fps = get_or(j, "fps", c.fps);
    c.duration = get_or(j, "duration", c.duration);
    if (j.contains("frames")) c.duration = j.at("frames").get<double>() / c.fps;
    c.acc_rate = get_or(j, "acc_rate", c.acc_rate);
    c.box_noise = get_or(j, "box_noise", c.box_noise);
    c.dropout_prob = get_or(j, "dropout_prob", c.dropout_prob);
    for (const auto& pj : j.value("persons", json::array())) {
      PersonSpec p;
      p.person_id = pj.at("id").get<std::string>();
      p.sensor_id = get_or<std::string>(pj, "sensor_id", "");
      p.stride_frequency = get_or(pj, "stride_frequency", p.stride_frequency);
      p.phase = get_or(pj, "phase", p.phase);
      for (const auto& pt : pj.at("path")) p.path.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
      p.height = get_or(pj, "height", p.height);
      p.base_ratio = get_or(pj, "base_ratio", p.base_ratio);
      p.ratio_amplitude = get_or(pj, "ratio_amplitude", p.ratio_amplitude);
      p.ratio_cycles_per_stride = get_or(pj, "ratio_cycles_per_stride", p.ratio_cycles_per_stride);
      p.acc_peak = get_or(pj, "acc_peak", p.acc_peak);
      p.acc_phase_offset = get_or(pj, "acc_phase_offset", p.acc_phase_offset);
      p.carry_noise = get_or(pj, "carry_noise", p.carry_noise);
      c.persons.push_back(std::move(p));
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario config: ") + e.what());
  }
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["fps"] = c.fps;
  j["duration"] = c.duration;
  j["acc_rate"] = c.acc_rate;
  j["box_noise"] = c.box_noise;
  j["dropout_prob"] = c.dropout_prob;
  j["persons"] = json::array();
  for (const auto& p : c.persons) {
    json path = json::array();
    for (const auto& pt : p.path) path.push_back({pt.x, pt.y});
    j["persons"].push_back({{"id", p.person_id},
                            {"sensor_id", p.sensor_id},
                            {"stride_frequency", p.stride_frequency},
                            {"phase", p.phase},
                            {"path", path},
                            {"height", p.height},
                            {"base_ratio", p.base_ratio},
                            {"ratio_amplitude", p.ratio_amplitude},
                            {"ratio_cycles_per_stride", p.ratio_cycles_per_stride},
                            {"acc_peak", p.acc_peak},
                            {"acc_phase_offset", p.acc_phase_offset},
                            {"carry_noise", p.carry_noise}});
  }
  return j.dump(2) + "\n";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<DetectionFrame> load_detections(const fs::path& path) {
  std::istringstream in(read_file(path));
  return read_detections(in);
}

SensorStream load_sensor(const fs::path& path) {
  std::istringstream in(read_file(path));
  return read_sensor_csv(in, path.stem().string());
}

GroundTruth load_truth(const fs::path& path) { return truth_from_json(read_file(path)); }

void save_scenario(const fs::path& dir, const ScenarioData& data) {
  std::ostringstream det;
  write_detections(det, data.frames);
  write_file(dir / "detections.jsonl", det.str());
  for (const auto& s : data.sensors) {
    std::ostringstream csv;
    write_sensor_csv(csv, s);
    write_file(dir / "sensors" / (s.sensor_id + ".csv"), csv.str());
  }
  if (data.truth) write_file(dir / "truth.json", truth_to_json(*data.truth));
}

RunConfig run_config_from_json(const std::string& text, const fs::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  try {
    const json j = json::parse(text);
    RunConfig c;
    c.detections = resolve(j.at("detections").get<std::string>());
    if (j.contains("sensors")) {
      for (const auto& s : j.at("sensors")) c.sensors.push_back(resolve(s.get<std::string>()));
    } else {
      const fs::path dir = resolve(j.at("sensors_dir").get<std::string>());
      if (!fs::is_directory(dir)) throw IoError("sensor directory '" + dir.string() + "' does not exist");
      for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".csv") c.sensors.push_back(entry.path());
      std::sort(c.sensors.begin(), c.sensors.end());
    }
    if (j.contains("truth")) c.truth = resolve(j.at("truth").get<std::string>());
    auto& p = c.pipeline;
    p.fps = get_or(j, "fps", p.fps);
    p.ts_gate = get_or(j, "ts_gate", p.ts_gate);
    c.stage = get_or<std::string>(j, "stage", c.stage);
    if (j.contains("ts")) c.ts_values = j.at("ts").get<std::vector<double>>();
    if (j.contains("tracer")) {
      const auto& t = j.at("tracer");
      p.tracer.radius_factor = get_or(t, "radius_factor", p.tracer.radius_factor);
      p.tracer.max_gap = get_or(t, "max_gap", p.tracer.max_gap);
    }
    if (j.contains("filter")) {
      const auto& f = j.at("filter");
      p.filter.order = get_or(f, "order", p.filter.order);
      p.filter.cutoff_hz = get_or(f, "cutoff_hz", p.filter.cutoff_hz);
    }
    if (j.contains("similarity")) {
      const auto& s = j.at("similarity");
      p.similarity.d = get_or(s, "d", p.similarity.d);
      p.similarity.extremum_window = get_or(s, "extremum_window", p.similarity.extremum_window);
      p.similarity.no_match_penalty_factor =
          get_or(s, "no_match_penalty_factor", p.similarity.no_match_penalty_factor);
      p.similarity.zero_denominator_floor = get_or(s, "zero_denominator_floor", p.similarity.zero_denominator_floor);
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
}

RunConfig run_config_for_dir(const fs::path& dir) {
  json j;
  j["detections"] = "detections.jsonl";
  j["sensors_dir"] = "sensors";
  if (fs::exists(dir / "truth.json")) j["truth"] = "truth.json";
  return run_config_from_json(j.dump(), dir);
}

ScenarioData load_run_inputs(const RunConfig& config) {
  ScenarioData data;
  data.frames = load_detections(config.detections);
  const auto report = validate_detection_log(data.frames);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw FormatError("detection log invalid at frame " + std::to_string(v.frame_index) + ": " + v.message);
  }
  for (const auto& path : config.sensors) {
    if (!fs::exists(path)) throw IoError("sensor file '" + path.string() + "' does not exist");
    data.sensors.push_back(load_sensor(path));
  }
  if (data.sensors.empty()) throw ConfigError("no sensor streams given");
  if (config.truth) data.truth = load_truth(*config.truth);
  return data;
}

}  // namespace wpid::io
