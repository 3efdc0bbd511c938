// Accelerometer step feature: magnitude, Butterworth low-pass, resampling
// onto the camera frame clock.
#pragma once

#include <utility>
#include <vector>

#include "wpid/core.hpp"

namespace wpid {

struct MagnitudeSample {
  Timestamp timestamp;
  double value = 0.0;
};

struct MagnitudeSequence {
  SensorId sensor_id;
  double rate = 0.0;  // Hz
  std::vector<MagnitudeSample> samples;

  std::vector<double> values() const;
};

struct FilterSpec {
  int order = 10;
  double cutoff_hz = 15.0;
};

class NyquistViolation : public Error {
  using Error::Error;
};
class EmptyOverlap : public Error {
  using Error::Error;
};

// Transposed direct form II second-order section; a2 == b2 == 0 for the
// first-order section of odd orders.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double z1 = 0.0, z2 = 0.0;

  double process(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
  // Complex frequency response at normalized angular frequency w (rad/sample).
  std::pair<double, double> response(double w) const;
};

// Digital Butterworth low-pass built from bilinear-transformed analog pole
// pairs (cutoff prewarped), cascaded as second-order sections.
class ButterworthLowpass {
 public:
  ButterworthLowpass(const FilterSpec& spec, double sample_rate);

  double process(double x);
  void reset();
  // Sets every section to the steady state of a constant input x.
  void prime(double x);
  // |H(e^{jw})| at frequency hz.
  double magnitude_response(double hz) const;

  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  double rate_;
  std::vector<Biquad> sections_;
};

MagnitudeSequence magnitude(const SensorStream& stream);

// Causal low-pass at the sequence's own rate. Throws NyquistViolation unless
// rate > 2 * cutoff.
MagnitudeSequence lowpass(const MagnitudeSequence& seq, const FilterSpec& spec);

struct FrameTick {
  FrameIndex frame_index = 0;
  Timestamp timestamp;
};

struct AccFeatureSequence {
  SensorId sensor_id;
  FrameIndex first_frame = 0;  // frame of values[0]
  std::vector<double> values;  // one per frame tick
  // Frames whose timestamp falls inside the sensor's sample span; values
  // outside it are clamped edge values.
  FrameIndex first_covered = 0;
  FrameIndex last_covered = -1;

  FrameIndex last_frame() const { return first_frame + static_cast<FrameIndex>(values.size()) - 1; }
};

// Linear interpolation of the two samples bracketing each frame timestamp.
// The frame clock must be contiguous in frame_index. Throws EmptyOverlap when
// no frame falls inside the sensor span.
AccFeatureSequence resample_to_frames(const MagnitudeSequence& seq, const std::vector<FrameTick>& clock);

// magnitude -> lowpass -> resample_to_frames.
AccFeatureSequence acc_feature(const SensorStream& stream, const FilterSpec& spec,
                               const std::vector<FrameTick>& clock);

}  // namespace wpid
