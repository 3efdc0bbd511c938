// Shared data model for the walking person identification pipeline.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpid {

using FrameIndex = std::int64_t;
using PersonId = std::string;
using TraceId = std::string;
using SensorId = std::string;

// Microseconds since epoch. All devices share one synchronized time base.
struct Timestamp {
  std::int64_t us = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
  double seconds() const { return static_cast<double>(us) * 1e-6; }
};

struct BoundingBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct DetectionFrame {
  FrameIndex frame_index = 0;
  Timestamp timestamp;
  std::vector<BoundingBox> boxes;

  friend bool operator==(const DetectionFrame&, const DetectionFrame&) = default;
};

struct AccSampleRaw {
  Timestamp timestamp;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  friend bool operator==(const AccSampleRaw&, const AccSampleRaw&) = default;
};

struct SensorStream {
  SensorId sensor_id;
  std::vector<AccSampleRaw> samples;
  double nominal_rate = 0.0;  // Hz

  friend bool operator==(const SensorStream&, const SensorStream&) = default;
};

// Frame rate is configuration, never inferred from timestamps.
inline constexpr double kDefaultFps = 30.0;

struct GroundTruth {
  // Person of every box, in the box order of the detection log frame.
  std::map<FrameIndex, std::vector<PersonId>> box_person;
  std::map<SensorId, PersonId> sensor_to_person;

  std::optional<PersonId> person_of_box(FrameIndex frame, std::size_t ordinal) const;
  // Throws ConfigError when two sensors map to the same person.
  void check() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConfigError : public Error {
  using Error::Error;
};
class IoError : public Error {
  using Error::Error;
};
class FormatError : public Error {
  using Error::Error;
};

struct Violation {
  FrameIndex frame_index = 0;
  std::optional<std::size_t> box_ordinal;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Reports non-monotone frame indices / timestamps and non-positive box dims.
ValidationReport validate_detection_log(const std::vector<DetectionFrame>& frames);

// Throws ConfigError on an empty stream, non-increasing timestamps or a
// nominal rate below the frame rate.
void validate_sensor_stream(const SensorStream& stream, double fps = kDefaultFps);

}  // namespace wpid
