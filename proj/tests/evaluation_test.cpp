#include <cmath>

#include "doctest.h"
#include "wpid/evaluation.hpp"

using namespace wpid;

namespace {

EvalCounters counters_of(std::vector<std::pair<long long, long long>> id_cd) {
  EvalCounters c;
  for (std::size_t k = 0; k < id_cd.size(); ++k)
    c.by_sensor_person["p" + std::to_string(k)] = {id_cd[k].first, id_cd[k].second};
  return c;
}

const std::map<SensorId, PersonId> kSensors = {{"s1", "p1"}, {"s2", "p2"}};

}  // namespace

TEST_CASE("r_cd ratios") {
  CHECK(r_cd(counters_of({{100, 100}, {100, 100}})) == 1.0);
  CHECK(r_cd(counters_of({{100, 70}, {100, 82}})) == doctest::Approx(0.76));
  CHECK_THROWS_AS(r_cd(counters_of({{0, 0}})), UndefinedRate);
  CHECK_THROWS_AS(r_cd(EvalCounters{}), UndefinedRate);
}

TEST_CASE("correct pairs count as identified and correct") {
  EvalCounters c;
  const std::map<TraceId, PersonId> traces = {{"T1", "p1"}};
  for (int k = 0; k < 10; ++k) c = accumulate(c, {{{"T1", "s1"}}, 1.0}, traces, kSensors);
  CHECK(c.by_sensor_person["p1"] == PersonCounts{10, 10});
  CHECK(c.persons_seen.size() == 1);
}

TEST_CASE("swapped pairs are identified but never correct") {
  EvalCounters c;
  const std::map<TraceId, PersonId> traces = {{"T1", "p1"}, {"T2", "p2"}};
  for (int k = 0; k < 10; ++k) c = accumulate(c, {{{"T1", "s2"}, {"T2", "s1"}}, 1.0}, traces, kSensors);
  CHECK(c.by_sensor_person["p1"] == PersonCounts{10, 0});
  CHECK(c.by_sensor_person["p2"] == PersonCounts{10, 0});
  CHECK(r_cd(c) == 0.0);
}

TEST_CASE("mixed run and order independence") {
  const std::map<TraceId, PersonId> traces = {{"T1", "p1"}, {"T2", "p2"}};
  const Assignment good{{{"T1", "s1"}}, 1.0}, bad{{{"T2", "s1"}}, 1.0};
  EvalCounters forward, backward;
  for (int k = 0; k < 10; ++k) forward = accumulate(forward, k < 7 ? good : bad, traces, kSensors);
  for (int k = 9; k >= 0; --k) backward = accumulate(backward, k < 7 ? good : bad, traces, kSensors);
  CHECK(forward.by_sensor_person["p1"] == PersonCounts{10, 7});
  CHECK(r_cd(forward) == doctest::Approx(0.7));
  CHECK(forward == backward);
  // Trace-side reading attributes the 3 wrong frames to p2.
  CHECK(forward.by_trace_person["p2"] == PersonCounts{3, 0});
  CHECK(r_cd_trace_side(forward) == doctest::Approx(0.7));
}

TEST_CASE("unknown ids are rejected") {
  const std::map<TraceId, PersonId> traces = {{"T1", "p1"}};
  CHECK_THROWS_AS(accumulate({}, {{{"T9", "s1"}}, 1.0}, traces, kSensors), UnknownId);
  CHECK_THROWS_AS(accumulate({}, {{{"T1", "s9"}}, 1.0}, traces, kSensors), UnknownId);
}

TEST_CASE("sweep table layout") {
  std::vector<TsSweepRow> rows;
  for (double ts : {0.33, 1.0, 2.0, 3.0, 4.0}) {
    rows.push_back({ts, Stage::raw, 0.75, 1});
    rows.push_back({ts, Stage::refined, 0.76, 1});
  }
  const auto table = format_sweep_table(rows);
  CHECK(table == "Stage \\ TS/s | 0.33 | 1 | 2 | 3 | 4\n"
                 "Raw          | 0.75 | 0.75 | 0.75 | 0.75 | 0.75\n"
                 "Refined      | 0.76 | 0.76 | 0.76 | 0.76 | 0.76\n");
  const auto csv = format_sweep_csv({{2.0, Stage::refined, 0.5, 3}});
  CHECK(csv == "ts_seconds,stage,r_cd,seed\n2,refined,0.500000,3\n");
  CHECK(parse_stage("raw") == Stage::raw);
  CHECK_THROWS_AS(parse_stage("fast"), FormatError);
}
