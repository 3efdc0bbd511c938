// Raw and refined trace <-> sensor assignment.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "wpid/similarity.hpp"

namespace wpid {

// Dense non-negative weights; rows are traces, columns sensors.
struct WeightTable {
  std::vector<TraceId> rows;
  std::vector<SensorId> cols;
  std::vector<std::vector<double>> weights;  // [row][col], 0 = cannot pair

  static WeightTable from_scores(const std::map<std::pair<TraceId, SensorId>, double>& scores);
};

struct Assignment {
  std::vector<std::pair<TraceId, SensorId>> pairs;  // sorted
  double objective = 0.0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Maximum total weight of a matching where each row and column is used at
// most once. Kuhn-Munkres on the zero-padded square matrix, O(n^3).
double max_matching_value(const std::vector<std::vector<double>>& weights);

// Optimal matching on positive weights. Among equal optima the
// lexicographically smallest (row id, col id) pair list wins; zero-weight
// matches are reported as unpaired.
Assignment solve_lsap(const WeightTable& table);

// P_f: assignment maximizing total similarity.
Assignment raw_pair(const SimilarityMatrix& sim);

struct RefinedState {
  std::map<std::pair<TraceId, SensorId>, long long> counts;
  long long frames_processed = 0;
};

RefinedState update_rsim(RefinedState state, const Assignment& p);

// RP_f: assignment maximizing sum of log2(1 + count). When `rows` (sorted)
// is given, only those traces take part.
Assignment refined_pair(const RefinedState& state, const std::vector<TraceId>* rows = nullptr);

// Number of traces whose partner differs between consecutive assignments.
std::size_t pair_changes(const Assignment& before, const Assignment& after);

}  // namespace wpid
