#include "wpid/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace wpid {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct PathWalker {
  std::vector<Point> points;
  std::vector<double> cumulative;

  explicit PathWalker(std::vector<Point> pts) : points(std::move(pts)) {
    cumulative.push_back(0.0);
    for (std::size_t k = 1; k < points.size(); ++k)
      cumulative.push_back(cumulative.back() +
                           std::hypot(points[k].x - points[k - 1].x, points[k].y - points[k - 1].y));
  }

  // u in [0, 1] is the fraction of total path length.
  Point at(double u) const {
    if (points.size() == 1 || cumulative.back() == 0.0) return points.front();
    const double s = std::clamp(u, 0.0, 1.0) * cumulative.back();
    std::size_t k = 1;
    while (k + 1 < points.size() && cumulative[k] < s) ++k;
    const double seg = cumulative[k] - cumulative[k - 1];
    const double v = seg > 0.0 ? (s - cumulative[k - 1]) / seg : 0.0;
    return {points[k - 1].x + v * (points[k].x - points[k - 1].x),
            points[k - 1].y + v * (points[k].y - points[k - 1].y)};
  }
};

std::int64_t to_us(double seconds) { return static_cast<std::int64_t>(std::llround(seconds * 1e6)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal(double mean, double stddev) {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

std::size_t ScenarioConfig::frame_count() const {
  return static_cast<std::size_t>(std::llround(duration * fps));
}

void ScenarioConfig::check() const {
  if (!(fps > 0.0)) throw ConfigError("fps must be positive");
  if (!(duration > 0.0)) throw ConfigError("duration must be positive");
  if (!(acc_rate >= fps)) throw ConfigError("acc_rate must be at least the frame rate");
  if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) throw ConfigError("dropout_prob must be in [0, 1)");
  if (!(box_noise >= 0.0)) throw ConfigError("box_noise must be non-negative");
  if (persons.empty()) throw ConfigError("scenario has no persons");
  std::set<std::string> ids, sensors;
  for (const auto& p : persons) {
    if (p.person_id.empty()) throw ConfigError("person_id must not be empty");
    if (!ids.insert(p.person_id).second) throw ConfigError("duplicate person_id '" + p.person_id + "'");
    const std::string sensor = p.sensor_id.empty() ? "s-" + p.person_id : p.sensor_id;
    if (!sensors.insert(sensor).second) throw ConfigError("duplicate sensor_id '" + sensor + "'");
    if (!(p.stride_frequency > 0.3 && p.stride_frequency < 3.0))
      throw ConfigError("stride_frequency of '" + p.person_id + "' must be in (0.3, 3.0) Hz");
    if (!(p.ratio_amplitude >= 0.0 && p.ratio_amplitude < p.base_ratio))
      throw ConfigError("ratio_amplitude of '" + p.person_id + "' must be below base_ratio");
    if (p.ratio_cycles_per_stride < 1) throw ConfigError("ratio_cycles_per_stride must be >= 1");
    if (!(p.height > 0.0)) throw ConfigError("height must be positive");
    if (p.path.empty()) throw ConfigError("path of '" + p.person_id + "' is empty");
    if (!(p.carry_noise >= 0.0) || !(p.acc_peak >= 0.0)) throw ConfigError("acc parameters must be non-negative");
  }
}

ScenarioConfig default_scenario(std::uint64_t seed) {
  ScenarioConfig config;
  config.seed = seed;
  config.dropout_prob = 0.02;
  const double frequencies[] = {0.8, 1.0, 1.2};
  for (int k = 0; k < 3; ++k) {
    PersonSpec p;
    p.person_id = "p" + std::to_string(k + 1);
    p.sensor_id = "phone" + std::to_string(k + 1);
    p.stride_frequency = frequencies[k];
    p.phase = 0.7 * k;
    const double lane = 120.0 + 170.0 * k;
    const double x0 = k % 2 == 0 ? 80.0 : 560.0;
    const double x1 = k % 2 == 0 ? 560.0 : 80.0;
    p.path = {{x0, lane}, {x1, lane + 20.0}, {x0, lane}};
    config.persons.push_back(p);
  }
  return config;
}

ScenarioData generate(const ScenarioConfig& config) {
  config.check();
  ScenarioData data;
  GroundTruth truth;
  Rng rng(config.seed);
  const std::size_t frames = config.frame_count();
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<PathWalker> walkers;
  for (const auto& p : config.persons) walkers.emplace_back(p.path);

  data.frames.reserve(frames);
  for (std::size_t k = 0; k < frames; ++k) {
    const double t = static_cast<double>(k) / config.fps;
    DetectionFrame frame;
    frame.frame_index = static_cast<FrameIndex>(k);
    frame.timestamp = Timestamp{to_us(t)};
    std::vector<std::pair<BoundingBox, PersonId>> boxes;
    for (std::size_t i = 0; i < config.persons.size(); ++i) {
      const auto& p = config.persons[i];
      const double cycles = static_cast<double>(p.ratio_cycles_per_stride);
      const double ratio = p.base_ratio + p.ratio_amplitude * std::cos(two_pi * cycles * p.stride_frequency * t +
                                                                      cycles * p.phase);
      const Point c = walkers[i].at(frames > 1 ? static_cast<double>(k) / static_cast<double>(frames - 1) : 0.0);
      BoundingBox box;
      box.cx = c.x + rng.normal(0.0, config.box_noise);
      box.cy = c.y + rng.normal(0.0, config.box_noise);
      box.h = std::max(1.0, p.height + rng.normal(0.0, config.box_noise));
      box.w = std::max(1.0, p.height / ratio + rng.normal(0.0, config.box_noise));
      const bool dropped = rng.uniform() < config.dropout_prob;
      if (!dropped) boxes.emplace_back(box, p.person_id);
    }
    for (std::size_t b = boxes.size(); b > 1; --b) std::swap(boxes[b - 1], boxes[rng.below(b)]);
    auto& labels = truth.box_person[frame.frame_index];
    for (auto& [box, person] : boxes) {
      frame.boxes.push_back(box);
      labels.push_back(person);
    }
    data.frames.push_back(std::move(frame));
  }

  const auto samples = static_cast<std::size_t>(std::floor(config.duration * config.acc_rate)) + 1;
  for (const auto& p : config.persons) {
    SensorStream stream;
    stream.sensor_id = p.sensor_id.empty() ? "s-" + p.person_id : p.sensor_id;
    stream.nominal_rate = config.acc_rate;
    stream.samples.reserve(samples);
    const double tilt = rng.uniform() * std::numbers::pi;
    const double spin = 0.05 + 0.1 * rng.uniform();  // rad/s
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) / config.acc_rate;
      const double m = kGravity +
                       p.acc_peak * std::abs(std::cos(two_pi * p.stride_frequency * t + p.phase + p.acc_phase_offset)) +
                       rng.normal(0.0, p.carry_noise);
      const double azimuth = spin * t;
      AccSampleRaw s;
      s.timestamp = Timestamp{to_us(t)};
      s.ax = m * std::sin(tilt) * std::cos(azimuth);
      s.ay = m * std::sin(tilt) * std::sin(azimuth);
      s.az = m * std::cos(tilt);
      stream.samples.push_back(s);
    }
    truth.sensor_to_person[stream.sensor_id] = p.person_id;
    data.sensors.push_back(std::move(stream));
  }
  data.truth = std::move(truth);
  return data;
}

}  // namespace wpid
