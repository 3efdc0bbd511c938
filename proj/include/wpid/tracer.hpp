// Frame-to-frame linking of human boxes into traces, bounded by how far a
// walking person can move between frames.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "wpid/core.hpp"

namespace wpid {

struct TracerParams {
  double radius_factor = 0.1;  // fraction of box height per frame
  FrameIndex max_gap = 15;     // frames a trace may go unseen before termination
};

enum class TraceState { active, terminated };

struct TraceEntry {
  FrameIndex frame_index = 0;
  BoundingBox box;
  std::size_t box_ordinal = 0;  // position of the box in its detection frame
};

struct Trace {
  TraceId trace_id;
  std::uint64_t serial = 0;  // creation order, smaller is older
  std::vector<TraceEntry> entries;
  FrameIndex last_seen = 0;
  TraceState state = TraceState::active;

  FrameIndex first_frame() const { return entries.front().frame_index; }
  const BoundingBox& last_box() const { return entries.back().box; }
  bool active() const { return state == TraceState::active; }
};

double search_radius(const BoundingBox& box, FrameIndex gap, double radius_factor = 0.1);

struct TraceUpdate {
  std::vector<Trace> traces;
  // Box ordinal in the frame -> trace id it was attached to.
  std::map<std::size_t, TraceId> assignments;
};

// Pure step: extend/create/terminate traces for one detection frame.
// `next_serial` is the counter for fresh trace ids and is advanced in place.
TraceUpdate update_traces(std::vector<Trace> traces, const DetectionFrame& frame,
                          const TracerParams& params, std::uint64_t& next_serial);

// Stateful wrapper used by the streaming pipeline. Terminated traces are kept.
class Tracer {
 public:
  explicit Tracer(TracerParams params = {}) : params_(params) {}

  const std::map<std::size_t, TraceId>& update(const DetectionFrame& frame);

  const std::vector<Trace>& traces() const { return traces_; }
  const Trace* find(const TraceId& id) const;
  const TracerParams& params() const { return params_; }

 private:
  TracerParams params_;
  std::vector<Trace> traces_;
  std::map<std::size_t, TraceId> last_assignments_;
  std::uint64_t next_serial_ = 1;
};

TraceId make_trace_id(std::uint64_t serial);

}  // namespace wpid
