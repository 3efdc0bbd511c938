// Extremum-position similarity between a ratio feature and an acc feature.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "wpid/acc_features.hpp"
#include "wpid/video_features.hpp"

namespace wpid {

// Values in {-1, 0, +1}: local minimum, neither, local maximum.
using TernarySequence = std::vector<std::int8_t>;

struct SimilarityParams {
  int d = 10;                // dif search range, per side
  int extremum_window = 10;  // neighbors compared in extremum detection, split evenly per side
  double no_match_penalty_factor = 1.5;
  double zero_denominator_floor = 0.5;

  int extremum_half_window() const { return (extremum_window + 1) / 2; }
  void check() const;
};

// x is +1 when seq[x] is strictly greater than every one of its ceil(window/2)
// nearest neighbors on each side (truncated at the ends), -1 when strictly
// smaller, else 0. A point with no neighbors at all is 0.
TernarySequence detect_extremes(std::span<const double> seq, int window);

// Single position of detect_extremes; only reads seq[x - half .. x + half].
std::int8_t extremum_at(std::span<const double> seq, std::size_t x, int window);

// Distance from x to the nearest y in [x-d, x+d] with a[y] == t[x], where
// index x of t corresponds to index x + offset of a. 0 when t[x] == 0 and
// penalty * d when no such y exists.
double dif(std::size_t x, std::span<const std::int8_t> t, std::span<const std::int8_t> a, int d,
           double penalty_factor = 1.5, std::ptrdiff_t offset = 0);

// n / max(sum of dif, floor), n = number of extremums in t; 0 when n = 0.
double sim(std::span<const std::int8_t> t, std::span<const std::int8_t> a, const SimilarityParams& params,
           std::ptrdiff_t offset = 0);

struct SimilarityMatrix {
  std::map<std::pair<TraceId, SensorId>, double> scores;
  FrameIndex as_of_frame = 0;
};

// Frames needed for a sequence to pass the TS gate.
FrameIndex gate_frames(double ts_seconds, double fps);

// Batch scoring of complete sequences; pairs where either side is shorter than
// the gate are absent.
SimilarityMatrix score_all(const std::vector<RatioSequence>& ratio_features,
                           const std::vector<AccFeatureSequence>& acc_features, const SimilarityParams& params,
                           double ts_seconds, double fps = kDefaultFps);

}  // namespace wpid
