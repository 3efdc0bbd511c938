#include "wpid/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace wpid {

void PipelineConfig::check() const {
  if (!(fps > 0.0)) throw ConfigError("fps must be positive");
  if (!(tracer.radius_factor > 0.0)) throw ConfigError("radius_factor must be positive");
  if (tracer.max_gap < 1) throw ConfigError("max_gap must be >= 1");
  if (ts_gate < 0.0) throw ConfigError("ts gate must be non-negative");
  similarity.check();
}

std::vector<FrameTick> frame_clock(const std::vector<DetectionFrame>& frames) {
  std::vector<FrameTick> clock;
  clock.reserve(frames.size());
  for (const auto& f : frames) clock.push_back({f.frame_index, f.timestamp});
  return clock;
}

Pipeline::Pipeline(PipelineConfig config, const std::vector<SensorStream>& sensors,
                   const std::vector<FrameTick>& clock)
    : config_(std::move(config)), tracer_(config_.tracer) {
  config_.check();
  gate_ = gate_frames(config_.ts_gate, config_.fps);
  for (const auto& stream : sensors) {
    validate_sensor_stream(stream, config_.fps);
    SensorState state;
    state.feature = acc_feature(stream, config_.filter, clock);
    state.ternary = detect_extremes(state.feature.values, config_.similarity.extremum_window);
    sensors_.push_back(std::move(state));
  }
}

double Pipeline::pair_score(const PairAccumulator& acc) const {
  if (acc.extremes == 0) return 0.0;
  return static_cast<double>(acc.extremes) /
         std::max(acc.total_dif, config_.similarity.zero_denominator_floor);
}

FrameResult Pipeline::step(const DetectionFrame& frame) {
  const FrameIndex f = frame.frame_index;
  const auto& params = config_.similarity;
  const auto half = static_cast<FrameIndex>(params.extremum_half_window());

  for (const auto& [ordinal, id] : tracer_.update(frame)) {
    auto& track = tracks_[id];
    if (track.per_sensor.empty()) track.per_sensor.resize(sensors_.size());
    track.ratio.append(f, frame.boxes[ordinal]);
  }

  sim_ = SimilarityMatrix{};
  sim_.as_of_frame = f;
  active_.clear();
  for (const auto& trace : tracer_.traces()) {
    if (!trace.active()) continue;
    active_.push_back(trace.trace_id);
    auto& track = tracks_.at(trace.trace_id);
    const auto& values = track.ratio.values();

    // Ratio extremum at x needs values up to x + half.
    while (static_cast<FrameIndex>(track.ternary.size()) + half < static_cast<FrameIndex>(values.size()))
      track.ternary.push_back(extremum_at(values, track.ternary.size(), params.extremum_window));

    const FrameIndex first = track.ratio.first_frame();
    const FrameIndex length = track.ratio.last_frame() - first + 1;
    for (std::size_t j = 0; j < sensors_.size(); ++j) {
      const auto& sensor = sensors_[j];
      auto& acc = track.per_sensor[j];
      const std::ptrdiff_t offset = first - sensor.feature.first_frame;
      // A dif term is final once the acc window and its extremum neighbors are observed.
      while (acc.next_x < track.ternary.size() &&
             first + static_cast<FrameIndex>(acc.next_x) + params.d + half <= f) {
        if (track.ternary[acc.next_x] != 0) {
          ++acc.extremes;
          acc.total_dif += dif(acc.next_x, track.ternary, sensor.ternary, params.d,
                               params.no_match_penalty_factor, offset);
        }
        ++acc.next_x;
      }
      const FrameIndex covered =
          std::min(f, sensor.feature.last_covered) - sensor.feature.first_covered + 1;
      if (length >= gate_ && covered >= gate_)
        sim_.scores[{trace.trace_id, sensor.feature.sensor_id}] = pair_score(acc);
    }
  }
  std::sort(active_.begin(), active_.end());

  FrameResult result;
  result.frame_index = f;
  result.raw = raw_pair(sim_);
  refined_ = update_rsim(std::move(refined_), result.raw);
  result.refined = refined_pair(refined_, &active_);
  return result;
}

std::optional<double> Pipeline::score(const TraceId& trace, const SensorId& sensor) const {
  auto it = tracks_.find(trace);
  if (it == tracks_.end()) return std::nullopt;
  for (std::size_t j = 0; j < sensors_.size(); ++j)
    if (sensors_[j].feature.sensor_id == sensor) return pair_score(it->second.per_sensor[j]);
  return std::nullopt;
}

std::size_t Pipeline::finalized_extremes(const TraceId& trace) const {
  auto it = tracks_.find(trace);
  return it == tracks_.end() ? 0 : it->second.ternary.size();
}

double RunResult::throughput_fps() const {
  return pipeline_seconds > 0.0 ? static_cast<double>(frames.size()) / pipeline_seconds : 0.0;
}

RunResult run_pipeline(const ScenarioData& data, const PipelineConfig& config) {
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  Pipeline pipeline(config, data.sensors, frame_clock(data.frames));
  if (data.truth) {
    data.truth->check();
    result.raw_counters.emplace();
    result.refined_counters.emplace();
  }
  result.frames.reserve(data.frames.size());
  for (const auto& frame : data.frames) {
    auto frame_result = pipeline.step(frame);
    if (!result.frames.empty()) {
      result.raw_changes += pair_changes(result.frames.back().raw, frame_result.raw);
      result.refined_changes += pair_changes(result.frames.back().refined, frame_result.refined);
    }
    if (data.truth) {
      std::map<TraceId, PersonId> trace_person;
      for (const auto& trace : pipeline.tracer().traces()) {
        if (!trace.active()) continue;
        const auto& last = trace.entries.back();
        if (auto person = data.truth->person_of_box(last.frame_index, last.box_ordinal))
          trace_person[trace.trace_id] = *person;
      }
      *result.raw_counters =
          accumulate(std::move(*result.raw_counters), frame_result.raw, trace_person, data.truth->sensor_to_person);
      *result.refined_counters = accumulate(std::move(*result.refined_counters), frame_result.refined,
                                            trace_person, data.truth->sensor_to_person);
    }
    result.frames.push_back(std::move(frame_result));
  }
  result.pipeline_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::optional<double> stage_rate(const RunResult& result, Stage stage) {
  const auto& counters = stage == Stage::raw ? result.raw_counters : result.refined_counters;
  if (!counters) return std::nullopt;
  try {
    return r_cd(*counters);
  } catch (const UndefinedRate&) {
    return std::nullopt;
  }
}

std::vector<TsSweepRow> ts_sweep(const ScenarioData& data, const PipelineConfig& base,
                                 const std::vector<double>& ts_values, const std::vector<Stage>& stages,
                                 std::uint64_t seed) {
  if (ts_values.empty()) throw FormatError("ts list is empty");
  if (!data.truth) throw ConfigError("ts sweep requires ground truth");
  std::vector<TsSweepRow> rows;
  for (double ts : ts_values) {
    if (!(ts > 0.0)) throw ConfigError("ts values must be positive");
    PipelineConfig config = base;
    config.ts_gate = ts;
    const auto result = run_pipeline(data, config);
    for (Stage stage : stages) {
      const auto rate = stage_rate(result, stage);
      rows.push_back({ts, stage, rate.value_or(std::nan("")), seed});
    }
  }
  return rows;
}

}  // namespace wpid
