#include "wpid/evaluation.hpp"

#include <cstdio>
#include <sstream>

namespace wpid {

namespace {

double rate_of(const std::map<PersonId, PersonCounts>& counts) {
  long long id = 0, cd = 0;
  for (const auto& [person, c] : counts) {
    id += c.n_id;
    cd += c.n_cd;
  }
  if (id == 0) throw UndefinedRate("no identifications were made");
  return static_cast<double>(cd) / static_cast<double>(id);
}

std::string fmt(double x, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

double r_cd(const EvalCounters& counters) { return rate_of(counters.by_sensor_person); }
double r_cd_trace_side(const EvalCounters& counters) { return rate_of(counters.by_trace_person); }

EvalCounters accumulate(EvalCounters counters, const Assignment& frame_pairs,
                        const std::map<TraceId, PersonId>& trace_person,
                        const std::map<SensorId, PersonId>& sensor_person) {
  for (const auto& [trace, sensor] : frame_pairs.pairs) {
    const auto t = trace_person.find(trace);
    if (t == trace_person.end()) throw UnknownId("no ground truth for trace '" + trace + "'");
    const auto s = sensor_person.find(sensor);
    if (s == sensor_person.end()) throw UnknownId("no ground truth for sensor '" + sensor + "'");
    const bool correct = t->second == s->second;
    auto& claimed = counters.by_sensor_person[s->second];
    ++claimed.n_id;
    if (correct) ++claimed.n_cd;
    auto& actual = counters.by_trace_person[t->second];
    ++actual.n_id;
    if (correct) ++actual.n_cd;
  }
  for (const auto& [trace, person] : trace_person) counters.persons_seen.insert(person);
  return counters;
}

std::string to_string(Stage stage) { return stage == Stage::raw ? "raw" : "refined"; }

Stage parse_stage(const std::string& text) {
  if (text == "raw") return Stage::raw;
  if (text == "refined") return Stage::refined;
  throw FormatError("unknown stage '" + text + "'");
}

std::string format_sweep_table(const std::vector<TsSweepRow>& rows) {
  std::vector<double> ts_values;
  for (const auto& r : rows) {
    bool known = false;
    for (double t : ts_values) known = known || t == r.ts;
    if (!known) ts_values.push_back(r.ts);
  }
  // Mean over seeds per (stage, ts) cell.
  auto cell = [&](Stage stage, double ts) -> std::string {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : rows)
      if (r.stage == stage && r.ts == ts) {
        sum += r.r_cd;
        ++count;
      }
    return count ? fmt(sum / count, "%.2f") : std::string("-");
  };
  std::ostringstream out;
  out << "Stage \\ TS/s";
  for (double t : ts_values) out << " | " << fmt(t, "%g");
  out << '\n';
  for (Stage stage : {Stage::raw, Stage::refined}) {
    bool present = false;
    for (const auto& r : rows) present = present || r.stage == stage;
    if (!present) continue;
    out << (stage == Stage::raw ? "Raw         " : "Refined     ");
    for (double t : ts_values) out << " | " << cell(stage, t);
    out << '\n';
  }
  return out.str();
}

std::string format_sweep_csv(const std::vector<TsSweepRow>& rows) {
  std::ostringstream out;
  out << "ts_seconds,stage,r_cd,seed\n";
  for (const auto& r : rows)
    out << fmt(r.ts, "%g") << ',' << to_string(r.stage) << ',' << fmt(r.r_cd, "%.6f") << ',' << r.seed << '\n';
  return out.str();
}

}  // namespace wpid
