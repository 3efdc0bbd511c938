#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "wpid/tracer.hpp"

using namespace wpid;

namespace {

DetectionFrame frame_of(FrameIndex f, std::vector<BoundingBox> boxes) {
  return {f, Timestamp{f * 33333}, std::move(boxes)};
}

std::vector<Trace> run(const std::vector<DetectionFrame>& log, TracerParams params = {}) {
  Tracer tracer(params);
  for (const auto& f : log) tracer.update(f);
  return tracer.traces();
}

}  // namespace

TEST_CASE("search radius is 0.1 of height per elapsed frame") {
  CHECK(search_radius({0, 0, 50, 200}, 1) == doctest::Approx(20.0));
  CHECK(search_radius({0, 0, 50, 200}, 3) == doctest::Approx(60.0));
}

TEST_CASE("stationary box yields one trace") {
  std::vector<DetectionFrame> log;
  for (int f = 0; f < 10; ++f) log.push_back(frame_of(f, {{100, 100, 40, 100}}));
  const auto traces = run(log);
  REQUIRE(traces.size() == 1);
  CHECK(traces[0].entries.size() == 10);
  CHECK(traces[0].active());
}

TEST_CASE("two drifting boxes 300 px apart never swap") {
  std::vector<DetectionFrame> log;
  for (int f = 0; f < 40; ++f) {
    // Shuffle box order every other frame so ordinals carry no identity.
    BoundingBox a{100.0 + 5.0 * f, 200, 40, 100}, b{400.0 + 5.0 * f, 200, 40, 100};
    log.push_back(frame_of(f, f % 2 ? std::vector{b, a} : std::vector{a, b}));
  }
  // Exhaustive check of the scenario: every same-person step is within the
  // radius, every cross-person distance is outside it.
  for (int f = 1; f < 40; ++f)
    for (const auto& now : log[f].boxes)
      for (const auto& prev : log[f - 1].boxes) {
        const double dist = std::hypot(now.cx - prev.cx, now.cy - prev.cy);
        const bool same = std::abs(dist - 5.0) < 1e-9;
        CHECK((same ? dist <= search_radius(prev, 1) : dist > search_radius(prev, 1)));
      }
  const auto traces = run(log);
  REQUIRE(traces.size() == 2);
  for (const auto& t : traces) {
    CHECK(t.entries.size() == 40);
    const double start = t.entries.front().box.cx;
    for (std::size_t k = 0; k < t.entries.size(); ++k)
      CHECK(t.entries[k].box.cx == doctest::Approx(start + 5.0 * static_cast<double>(k)));
  }
}

TEST_CASE("a jump beyond the radius starts a new trace and the old one ages out") {
  std::vector<DetectionFrame> log = {frame_of(0, {{100, 100, 50, 200}}), frame_of(1, {{125, 100, 50, 200}})};
  auto traces = run(log);
  REQUIRE(traces.size() == 2);
  CHECK(traces[0].entries.size() == 1);
  CHECK(traces[1].entries.size() == 1);

  for (int f = 2; f < 20; ++f) log.push_back(frame_of(f, {{125, 100, 50, 200}}));
  traces = run(log, {0.1, 15});
  CHECK(traces[0].state == TraceState::terminated);
  CHECK(traces[1].active());
  CHECK(traces[1].entries.size() == 19);
}

TEST_CASE("a trace recaptures its person after a short gap with a widened radius") {
  std::vector<DetectionFrame> log = {frame_of(0, {{100, 100, 50, 200}}), frame_of(1, {}), frame_of(2, {}),
                                     frame_of(3, {{150, 100, 50, 200}})};
  const auto traces = run(log);
  REQUIRE(traces.size() == 1);  // 50 px <= 0.1 * 200 * 3
  CHECK(traces[0].entries.size() == 2);
}

TEST_CASE("equal distances go to the older trace") {
  // Two traces equidistant from one new box: the first-created trace wins.
  std::vector<DetectionFrame> log = {frame_of(0, {{90, 100, 50, 200}, {110, 100, 50, 200}}),
                                     frame_of(1, {{100, 100, 50, 200}})};
  const auto traces = run(log);
  REQUIRE(traces.size() == 2);
  CHECK(traces[0].entries.size() == 2);
  CHECK(traces[1].entries.size() == 1);
}

TEST_CASE("random logs respect tracing invariants and are deterministic") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> coord(0.0, 400.0), jitter(-12.0, 12.0), height(60.0, 200.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DetectionFrame> log;
    std::vector<BoundingBox> people;
    for (std::size_t p = 1 + gen() % 5; p > 0; --p) people.push_back({coord(gen), coord(gen), 40, height(gen)});
    for (int f = 0; f < 60; ++f) {
      std::vector<BoundingBox> boxes;
      for (auto& b : people) {
        b.cx += jitter(gen);
        b.cy += jitter(gen);
        if (gen() % 10 != 0) boxes.push_back(b);
      }
      log.push_back(frame_of(f, boxes));
    }
    Tracer tracer;
    for (const auto& frame : log) {
      const auto& assigned = tracer.update(frame);
      CHECK(assigned.size() == frame.boxes.size());
      std::set<TraceId> ids;
      for (const auto& [box, id] : assigned) CHECK(ids.insert(id).second);
    }
    for (const auto& t : tracer.traces()) {
      for (std::size_t k = 1; k < t.entries.size(); ++k) {
        const auto& a = t.entries[k - 1];
        const auto& b = t.entries[k];
        CHECK(b.frame_index > a.frame_index);
        CHECK(std::hypot(b.box.cx - a.box.cx, b.box.cy - a.box.cy) <=
              search_radius(a.box, b.frame_index - a.frame_index) + 1e-12);
      }
    }
    const auto again = run(log);
    REQUIRE(again.size() == tracer.traces().size());
    for (std::size_t k = 0; k < again.size(); ++k) {
      CHECK(again[k].trace_id == tracer.traces()[k].trace_id);
      CHECK(again[k].entries.size() == tracer.traces()[k].entries.size());
    }
  }
}
