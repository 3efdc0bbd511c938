// Correct-identification rate against ground truth.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wpid/pairing.hpp"

namespace wpid {

class UndefinedRate : public Error {
  using Error::Error;
};
class UnknownId : public Error {
  using Error::Error;
};

struct PersonCounts {
  long long n_id = 0;  // frames identified as this person
  long long n_cd = 0;  // frames correctly identified

  friend bool operator==(const PersonCounts&, const PersonCounts&) = default;
};

struct EvalCounters {
  // Primary: the identified person is the owner of the paired sensor.
  std::map<PersonId, PersonCounts> by_sensor_person;
  // Alternative reading: counted against the true person of the paired trace.
  std::map<PersonId, PersonCounts> by_trace_person;
  std::set<PersonId> persons_seen;

  friend bool operator==(const EvalCounters&, const EvalCounters&) = default;
};

// Sum N_CD / sum N_ID over the sensor-side counters. Throws UndefinedRate when
// nothing was identified.
double r_cd(const EvalCounters& counters);
double r_cd_trace_side(const EvalCounters& counters);

// Adds one frame of pairs. Throws UnknownId when a trace or sensor has no
// ground-truth person.
EvalCounters accumulate(EvalCounters counters, const Assignment& frame_pairs,
                        const std::map<TraceId, PersonId>& trace_person,
                        const std::map<SensorId, PersonId>& sensor_person);

enum class Stage { raw, refined };

std::string to_string(Stage stage);
Stage parse_stage(const std::string& text);

struct TsSweepRow {
  double ts = 0.0;
  Stage stage = Stage::raw;
  double r_cd = 0.0;
  std::uint64_t seed = 0;
};

// Plain-text table: one row per stage, one column per TS value.
std::string format_sweep_table(const std::vector<TsSweepRow>& rows);
std::string format_sweep_csv(const std::vector<TsSweepRow>& rows);

}  // namespace wpid
