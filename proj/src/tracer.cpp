#include "wpid/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace wpid {

double search_radius(const BoundingBox& box, FrameIndex gap, double radius_factor) {
  return radius_factor * box.h * static_cast<double>(gap);
}

TraceId make_trace_id(std::uint64_t serial) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "T%06llu", static_cast<unsigned long long>(serial));
  return buf;
}

namespace {

struct Candidate {
  double distance;
  std::uint64_t serial;
  std::size_t trace_pos;
  std::size_t box;
};

}  // namespace

TraceUpdate update_traces(std::vector<Trace> traces, const DetectionFrame& frame,
                          const TracerParams& params, std::uint64_t& next_serial) {
  TraceUpdate out;
  const FrameIndex f = frame.frame_index;

  std::vector<Candidate> candidates;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const Trace& trace = traces[t];
    if (!trace.active()) continue;
    const FrameIndex gap = f - trace.last_seen;
    const double radius = search_radius(trace.last_box(), gap, params.radius_factor);
    for (std::size_t b = 0; b < frame.boxes.size(); ++b) {
      const auto& box = frame.boxes[b];
      const double dist =
          std::hypot(box.cx - trace.last_box().cx, box.cy - trace.last_box().cy);
      if (dist <= radius) candidates.push_back({dist, trace.serial, t, b});
    }
  }
  // Globally nearest first; ties go to the older trace, then the lower box ordinal.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.distance, a.serial, a.box) < std::tie(b.distance, b.serial, b.box);
  });

  std::vector<bool> trace_taken(traces.size(), false);
  std::vector<bool> box_taken(frame.boxes.size(), false);
  for (const auto& c : candidates) {
    if (trace_taken[c.trace_pos] || box_taken[c.box]) continue;
    trace_taken[c.trace_pos] = true;
    box_taken[c.box] = true;
    Trace& trace = traces[c.trace_pos];
    trace.entries.push_back({f, frame.boxes[c.box], c.box});
    trace.last_seen = f;
    out.assignments[c.box] = trace.trace_id;
  }

  for (auto& trace : traces) {
    if (trace.active() && f - trace.last_seen > params.max_gap) trace.state = TraceState::terminated;
  }

  for (std::size_t b = 0; b < frame.boxes.size(); ++b) {
    if (box_taken[b]) continue;
    Trace trace;
    trace.serial = next_serial++;
    trace.trace_id = make_trace_id(trace.serial);
    trace.entries.push_back({f, frame.boxes[b], b});
    trace.last_seen = f;
    out.assignments[b] = trace.trace_id;
    traces.push_back(std::move(trace));
  }

  out.traces = std::move(traces);
  return out;
}

const std::map<std::size_t, TraceId>& Tracer::update(const DetectionFrame& frame) {
  auto result = update_traces(std::move(traces_), frame, params_, next_serial_);
  traces_ = std::move(result.traces);
  last_assignments_ = std::move(result.assignments);
  return last_assignments_;
}

const Trace* Tracer::find(const TraceId& id) const {
  for (const auto& t : traces_)
    if (t.trace_id == id) return &t;
  return nullptr;
}

}  // namespace wpid
