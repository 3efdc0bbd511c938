#include "wpid/video_features.hpp"

namespace wpid {

std::vector<double> RatioSequence::values() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.ratio);
  return out;
}

RatioSequence ratio_sequence(const Trace& trace) {
  RatioSequence seq;
  seq.trace_id = trace.trace_id;
  for (std::size_t k = 0; k < trace.entries.size(); ++k) {
    const auto& e = trace.entries[k];
    const double ratio = e.box.h / e.box.w;
    if (k > 0) {
      const auto& prev = seq.samples.back();
      const FrameIndex span = e.frame_index - prev.frame_index;
      for (FrameIndex g = 1; g < span; ++g) {
        const double u = static_cast<double>(g) / static_cast<double>(span);
        seq.samples.push_back({prev.frame_index + g, prev.ratio + u * (ratio - prev.ratio), true});
      }
    }
    seq.samples.push_back({e.frame_index, ratio, false});
  }
  return seq;
}

void RatioBuilder::append(FrameIndex frame, const BoundingBox& box) {
  const double ratio = box.h / box.w;
  if (values_.empty()) {
    first_ = frame;
    values_.push_back(ratio);
    return;
  }
  const FrameIndex last = last_frame();
  const double prev = values_.back();
  const FrameIndex span = frame - last;
  for (FrameIndex g = 1; g < span; ++g) {
    const double u = static_cast<double>(g) / static_cast<double>(span);
    values_.push_back(prev + u * (ratio - prev));
  }
  values_.push_back(ratio);
}

}  // namespace wpid
