// Streaming identification pipeline: tracing, ratio and acc features,
// incremental similarity, raw and refined pairing, per frame.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wpid/evaluation.hpp"

namespace wpid {

struct PipelineConfig {
  double fps = kDefaultFps;
  TracerParams tracer;
  FilterSpec filter;
  SimilarityParams similarity;
  double ts_gate = 2.0;  // seconds

  void check() const;
};

struct ScenarioData {
  std::vector<DetectionFrame> frames;
  std::vector<SensorStream> sensors;
  std::optional<GroundTruth> truth;
};

struct FrameResult {
  FrameIndex frame_index = 0;
  Assignment raw;
  Assignment refined;
};

std::vector<FrameTick> frame_clock(const std::vector<DetectionFrame>& frames);

class Pipeline {
 public:
  // Acc features are computed once over the whole frame clock; the causal
  // filter makes every prefix identical to a streamed computation.
  Pipeline(PipelineConfig config, const std::vector<SensorStream>& sensors, const std::vector<FrameTick>& clock);

  FrameResult step(const DetectionFrame& frame);

  const Tracer& tracer() const { return tracer_; }
  const RefinedState& refined_state() const { return refined_; }
  const SimilarityMatrix& similarity() const { return sim_; }
  // Sorted ids of traces that are still active.
  const std::vector<TraceId>& active_traces() const { return active_; }

  // Current score for a pair, gated or not; nullopt for unknown ids.
  std::optional<double> score(const TraceId& trace, const SensorId& sensor) const;
  // Finalized prefix length of a trace's ternary sequence.
  std::size_t finalized_extremes(const TraceId& trace) const;

 private:
  struct PairAccumulator {
    std::size_t next_x = 0;
    std::size_t extremes = 0;
    double total_dif = 0.0;
  };
  struct TrackState {
    RatioBuilder ratio;
    TernarySequence ternary;  // finalized positions only
    std::vector<PairAccumulator> per_sensor;
  };
  struct SensorState {
    AccFeatureSequence feature;
    TernarySequence ternary;
  };

  double pair_score(const PairAccumulator& acc) const;

  PipelineConfig config_;
  Tracer tracer_;
  std::vector<SensorState> sensors_;
  std::map<TraceId, TrackState> tracks_;
  RefinedState refined_;
  SimilarityMatrix sim_;
  std::vector<TraceId> active_;
  FrameIndex gate_ = 0;
};

struct RunResult {
  std::vector<FrameResult> frames;
  std::optional<EvalCounters> raw_counters;
  std::optional<EvalCounters> refined_counters;
  std::size_t raw_changes = 0;
  std::size_t refined_changes = 0;
  double pipeline_seconds = 0.0;  // wall clock of the per-frame loop

  double throughput_fps() const;
};

// Runs every frame. Counters are filled when ground truth is present; a
// trace's true person at frame f is the label of its most recent box.
RunResult run_pipeline(const ScenarioData& data, const PipelineConfig& config);

// R_cd of one stage; nullopt when the stage never identified anyone.
std::optional<double> stage_rate(const RunResult& result, Stage stage);

// One pipeline run per TS value, rows for each requested stage.
std::vector<TsSweepRow> ts_sweep(const ScenarioData& data, const PipelineConfig& base,
                                 const std::vector<double>& ts_values, const std::vector<Stage>& stages,
                                 std::uint64_t seed = 0);

}  // namespace wpid
