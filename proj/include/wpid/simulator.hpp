// Synthetic walking scenes: detection logs and phone accelerometer streams
// that share a gait phase per person, with ground truth.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wpid/pipeline.hpp"

namespace wpid {

// xoshiro256** (Blackman & Vigna), state seeded by splitmix64:
//   splitmix64: z = (x += 0x9e3779b97f4a7c15);
//               z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
//               z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31)
//   next:       r = rotl(s1 * 5, 7) * 9; t = s1 << 17;
//               s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
// uniform() = (next() >> 11) * 2^-53; normal() is Box-Muller on two uniforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double normal(double mean = 0.0, double stddev = 1.0);
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 4> s_{};
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PersonSpec {
  PersonId person_id;
  SensorId sensor_id;             // defaults to "s-" + person_id when empty
  double stride_frequency = 1.0;  // Hz
  double phase = 0.0;             // radians
  std::vector<Point> path;        // pixels, walked at constant speed over the scenario
  double height = 180.0;          // pixels
  double base_ratio = 2.6;
  double ratio_amplitude = 0.35;
  // Ratio oscillations per stride: 2 puts one box-shape cycle on every step,
  // 1 gives one cycle per stride.
  int ratio_cycles_per_stride = 2;
  double acc_peak = 3.0;          // m/s^2
  double acc_phase_offset = 0.0;  // radians
  double carry_noise = 0.3;       // m/s^2 std-dev
};

struct ScenarioConfig {
  std::vector<PersonSpec> persons;
  double duration = 2000.0 / 30.0;  // seconds
  double fps = kDefaultFps;
  double acc_rate = 100.0;  // Hz
  double box_noise = 2.0;   // pixels std-dev
  double dropout_prob = 0.0;
  std::uint64_t seed = 1;

  std::size_t frame_count() const;
  // Throws ConfigError on an invariant breach.
  void check() const;
};

// Default acceptance scene: three persons on separate lanes with stride
// frequencies 0.8, 1.0 and 1.2 Hz, 2 px box noise, 0.3 m/s^2 carry noise,
// 2% dropout, 2000 frames.
ScenarioConfig default_scenario(std::uint64_t seed = 1);

// Box: center on the path; h = height + noise, w = height / ratio + noise with
// ratio = base + amplitude * cos(2 pi c f t + c phase), c = cycles per stride.
// Acc magnitude: g + acc_peak * |cos(2 pi f t + phase + acc_phase_offset)| + noise,
// spread over a slowly rotating device axis. Box order within a frame is
// shuffled; dropped boxes are omitted.
ScenarioData generate(const ScenarioConfig& config);

inline constexpr double kGravity = 9.81;

}  // namespace wpid
