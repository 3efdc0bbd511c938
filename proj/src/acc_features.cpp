#include "wpid/acc_features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace wpid {

std::vector<double> MagnitudeSequence::values() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.value);
  return out;
}

std::pair<double, double> Biquad::response(double w) const {
  const std::complex<double> z1inv = std::polar(1.0, -w);
  const std::complex<double> z2inv = z1inv * z1inv;
  const auto h = (b0 + b1 * z1inv + b2 * z2inv) / (1.0 + a1 * z1inv + a2 * z2inv);
  return {h.real(), h.imag()};
}

ButterworthLowpass::ButterworthLowpass(const FilterSpec& spec, double sample_rate) : rate_(sample_rate) {
  if (spec.order < 1) throw ConfigError("filter order must be >= 1");
  if (!(spec.cutoff_hz > 0.0)) throw ConfigError("filter cutoff must be positive");
  if (!(sample_rate > 2.0 * spec.cutoff_hz))
    throw NyquistViolation("sample rate must exceed twice the cutoff frequency");

  const double k = std::tan(std::numbers::pi * spec.cutoff_hz / sample_rate);
  const double k2 = k * k;
  const int n = spec.order;
  for (int p = 1; p <= n / 2; ++p) {
    // Analog pole pair damping: s^2 + 2 sin(theta) s + 1 with theta = (2p-1)pi/(2n).
    const double damping = 2.0 * std::sin((2.0 * p - 1.0) * std::numbers::pi / (2.0 * n));
    const double norm = 1.0 / (1.0 + damping * k + k2);
    Biquad s;
    s.b0 = k2 * norm;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (k2 - 1.0) * norm;
    s.a2 = (1.0 - damping * k + k2) * norm;
    sections_.push_back(s);
  }
  if (n % 2 == 1) {
    Biquad s;
    s.b0 = k / (1.0 + k);
    s.b1 = s.b0;
    s.a1 = (k - 1.0) / (k + 1.0);
    sections_.push_back(s);
  }
}

double ButterworthLowpass::process(double x) {
  for (auto& s : sections_) x = s.process(x);
  return x;
}

void ButterworthLowpass::reset() {
  for (auto& s : sections_) s.z1 = s.z2 = 0.0;
}

void ButterworthLowpass::prime(double x) {
  // Unit DC gain per section, so every section sees x at its input and output.
  for (auto& s : sections_) {
    s.z2 = (s.b2 - s.a2) * x;
    s.z1 = (s.b1 - s.a1) * x + s.z2;
  }
}

double ButterworthLowpass::magnitude_response(double hz) const {
  const double w = 2.0 * std::numbers::pi * hz / rate_;
  double mag = 1.0;
  for (const auto& s : sections_) {
    const auto [re, im] = s.response(w);
    mag *= std::hypot(re, im);
  }
  return mag;
}

MagnitudeSequence magnitude(const SensorStream& stream) {
  MagnitudeSequence out;
  out.sensor_id = stream.sensor_id;
  out.rate = stream.nominal_rate;
  out.samples.reserve(stream.samples.size());
  for (const auto& s : stream.samples)
    out.samples.push_back({s.timestamp, std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az)});
  return out;
}

MagnitudeSequence lowpass(const MagnitudeSequence& seq, const FilterSpec& spec) {
  ButterworthLowpass filter(spec, seq.rate);
  MagnitudeSequence out = seq;
  if (out.samples.empty()) return out;
  filter.prime(out.samples.front().value);
  for (auto& s : out.samples) s.value = filter.process(s.value);
  return out;
}

AccFeatureSequence resample_to_frames(const MagnitudeSequence& seq, const std::vector<FrameTick>& clock) {
  AccFeatureSequence out;
  out.sensor_id = seq.sensor_id;
  if (seq.samples.empty() || clock.empty()) throw EmptyOverlap("sensor '" + seq.sensor_id + "' has no data");
  const auto& samples = seq.samples;
  const Timestamp t0 = samples.front().timestamp;
  const Timestamp t1 = samples.back().timestamp;
  if (clock.back().timestamp < t0 || clock.front().timestamp > t1)
    throw EmptyOverlap("sensor '" + seq.sensor_id + "' does not overlap the frame clock");

  out.first_frame = clock.front().frame_index;
  out.values.reserve(clock.size());
  bool any_covered = false;
  std::size_t hi = 0;
  for (std::size_t k = 0; k < clock.size(); ++k) {
    const auto& tick = clock[k];
    if (k > 0 && tick.frame_index != clock[k - 1].frame_index + 1)
      throw FormatError("frame clock must have contiguous frame indices");
    const Timestamp t = tick.timestamp;
    if (t <= t0) {
      out.values.push_back(samples.front().value);
    } else if (t >= t1) {
      out.values.push_back(samples.back().value);
    } else {
      while (samples[hi].timestamp < t) ++hi;
      const auto& b = samples[hi];
      const auto& a = samples[hi - 1];
      const double u = static_cast<double>(t.us - a.timestamp.us) /
                       static_cast<double>(b.timestamp.us - a.timestamp.us);
      out.values.push_back(a.value + u * (b.value - a.value));
    }
    if (t >= t0 && t <= t1) {
      if (!any_covered) out.first_covered = tick.frame_index;
      out.last_covered = tick.frame_index;
      any_covered = true;
    }
  }
  if (!any_covered) throw EmptyOverlap("sensor '" + seq.sensor_id + "' does not overlap the frame clock");
  return out;
}

AccFeatureSequence acc_feature(const SensorStream& stream, const FilterSpec& spec,
                               const std::vector<FrameTick>& clock) {
  return resample_to_frames(lowpass(magnitude(stream), spec), clock);
}

}  // namespace wpid
