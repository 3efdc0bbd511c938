#include "wpid/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace wpid {

void SimilarityParams::check() const {
  if (d < 2) throw ConfigError("similarity window d must be >= 2");
  if (extremum_window < 2) throw ConfigError("extremum window must be >= 2");
  if (!(no_match_penalty_factor > 0.0) || !(zero_denominator_floor > 0.0))
    throw ConfigError("similarity factors must be positive");
}

std::int8_t extremum_at(std::span<const double> seq, std::size_t x, int window) {
  const auto n = static_cast<std::ptrdiff_t>(seq.size());
  const auto pos = static_cast<std::ptrdiff_t>(x);
  const std::ptrdiff_t half = (window + 1) / 2;
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, pos - half);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, pos + half);
  if (lo == hi) return 0;
  bool is_max = true, is_min = true;
  for (std::ptrdiff_t y = lo; y <= hi && (is_max || is_min); ++y) {
    if (y == pos) continue;
    if (!(seq[pos] > seq[y])) is_max = false;
    if (!(seq[pos] < seq[y])) is_min = false;
  }
  return is_max ? 1 : (is_min ? -1 : 0);
}

TernarySequence detect_extremes(std::span<const double> seq, int window) {
  TernarySequence out(seq.size(), 0);
  for (std::size_t x = 0; x < seq.size(); ++x) out[x] = extremum_at(seq, x, window);
  return out;
}

double dif(std::size_t x, std::span<const std::int8_t> t, std::span<const std::int8_t> a, int d,
           double penalty_factor, std::ptrdiff_t offset) {
  const std::int8_t want = t[x];
  if (want == 0) return 0.0;
  const std::ptrdiff_t center = static_cast<std::ptrdiff_t>(x) + offset;
  const auto na = static_cast<std::ptrdiff_t>(a.size());
  for (std::ptrdiff_t k = 0; k <= d; ++k) {
    const std::ptrdiff_t left = center - k;
    const std::ptrdiff_t right = center + k;
    if ((left >= 0 && left < na && a[left] == want) || (right >= 0 && right < na && a[right] == want))
      return static_cast<double>(k);
  }
  return penalty_factor * d;
}

double sim(std::span<const std::int8_t> t, std::span<const std::int8_t> a, const SimilarityParams& params,
           std::ptrdiff_t offset) {
  std::size_t n = 0;
  double total = 0.0;
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x] == 0) continue;
    ++n;
    total += dif(x, t, a, params.d, params.no_match_penalty_factor, offset);
  }
  if (n == 0) return 0.0;
  return static_cast<double>(n) / std::max(total, params.zero_denominator_floor);
}

FrameIndex gate_frames(double ts_seconds, double fps) {
  return static_cast<FrameIndex>(std::ceil(ts_seconds * fps - 1e-9));
}

SimilarityMatrix score_all(const std::vector<RatioSequence>& ratio_features,
                           const std::vector<AccFeatureSequence>& acc_features, const SimilarityParams& params,
                           double ts_seconds, double fps) {
  params.check();
  SimilarityMatrix out;
  const FrameIndex gate = gate_frames(ts_seconds, fps);

  std::vector<TernarySequence> acc_ternary;
  for (const auto& acc : acc_features) {
    acc_ternary.push_back(detect_extremes(acc.values, params.extremum_window));
    out.as_of_frame = std::max(out.as_of_frame, acc.last_frame());
  }
  for (const auto& ratio : ratio_features) {
    if (ratio.samples.empty()) continue;
    const auto length = static_cast<FrameIndex>(ratio.samples.size());
    out.as_of_frame = std::max(out.as_of_frame, ratio.samples.back().frame_index);
    if (length < gate) continue;
    const auto t = detect_extremes(ratio.values(), params.extremum_window);
    for (std::size_t j = 0; j < acc_features.size(); ++j) {
      const auto& acc = acc_features[j];
      if (acc.last_covered - acc.first_covered + 1 < gate) continue;
      const std::ptrdiff_t offset = ratio.samples.front().frame_index - acc.first_frame;
      out.scores[{ratio.trace_id, acc.sensor_id}] = sim(t, acc_ternary[j], params, offset);
    }
  }
  return out;
}

}  // namespace wpid
