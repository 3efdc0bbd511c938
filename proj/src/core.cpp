#include "wpid/core.hpp"

#include <cmath>
#include <set>

namespace wpid {

std::optional<PersonId> GroundTruth::person_of_box(FrameIndex frame, std::size_t ordinal) const {
  auto it = box_person.find(frame);
  if (it == box_person.end() || ordinal >= it->second.size()) return std::nullopt;
  return it->second[ordinal];
}

void GroundTruth::check() const {
  std::set<PersonId> seen;
  for (const auto& [sensor, person] : sensor_to_person) {
    if (!seen.insert(person).second)
      throw ConfigError("person '" + person + "' carries more than one sensor");
  }
}

ValidationReport validate_detection_log(const std::vector<DetectionFrame>& frames) {
  ValidationReport report;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& frame = frames[k];
    if (k > 0) {
      const auto& prev = frames[k - 1];
      if (frame.frame_index <= prev.frame_index)
        report.violations.push_back({frame.frame_index, std::nullopt,
                                     "frame_index not strictly increasing (previous " +
                                         std::to_string(prev.frame_index) + ")"});
      else if (frame.timestamp <= prev.timestamp)
        report.violations.push_back(
            {frame.frame_index, std::nullopt, "timestamp not strictly increasing"});
    }
    if (frame.timestamp.us < 0)
      report.violations.push_back({frame.frame_index, std::nullopt, "negative timestamp"});
    for (std::size_t b = 0; b < frame.boxes.size(); ++b) {
      const auto& box = frame.boxes[b];
      if (!(box.w > 0.0) || !(box.h > 0.0) || !std::isfinite(box.w) || !std::isfinite(box.h))
        report.violations.push_back({frame.frame_index, b, "box has non-positive width or height"});
      else if (!std::isfinite(box.cx) || !std::isfinite(box.cy))
        report.violations.push_back({frame.frame_index, b, "box center is not finite"});
    }
  }
  return report;
}

void validate_sensor_stream(const SensorStream& stream, double fps) {
  if (stream.samples.empty()) throw ConfigError("sensor '" + stream.sensor_id + "' has no samples");
  if (stream.nominal_rate < fps)
    throw ConfigError("sensor '" + stream.sensor_id + "' nominal rate below frame rate");
  for (std::size_t k = 1; k < stream.samples.size(); ++k) {
    if (stream.samples[k].timestamp <= stream.samples[k - 1].timestamp)
      throw ConfigError("sensor '" + stream.sensor_id + "' timestamps not strictly increasing at sample " +
                        std::to_string(k));
  }
}

}  // namespace wpid
