// Height/width ratio feature of a trace.
#pragma once

#include <vector>

#include "wpid/tracer.hpp"

namespace wpid {

struct RatioSample {
  FrameIndex frame_index = 0;
  double ratio = 0.0;
  bool synthetic = false;  // filled by interpolation across a detection gap
};

struct RatioSequence {
  TraceId trace_id;
  std::vector<RatioSample> samples;  // one per frame, first..last entry

  std::vector<double> values() const;
};

// One sample per frame between the trace's first and last entry; frames the
// trace skipped are linearly interpolated and flagged synthetic.
RatioSequence ratio_sequence(const Trace& trace);

// Incremental form of ratio_sequence for the streaming pipeline. Values already
// appended never change.
class RatioBuilder {
 public:
  void append(FrameIndex frame, const BoundingBox& box);

  bool empty() const { return values_.empty(); }
  FrameIndex first_frame() const { return first_; }
  FrameIndex last_frame() const { return first_ + static_cast<FrameIndex>(values_.size()) - 1; }
  const std::vector<double>& values() const { return values_; }

 private:
  FrameIndex first_ = 0;
  std::vector<double> values_;
};

}  // namespace wpid
