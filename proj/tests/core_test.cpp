#include <random>
#include <sstream>

#include "doctest.h"
#include "wpid/io.hpp"

using namespace wpid;

TEST_CASE("well-formed log has no violations") {
  std::vector<DetectionFrame> frames = {
      {0, {0}, {{10, 10, 20, 40}}}, {1, {33333}, {}}, {2, {66667}, {{11, 10, 20, 41}, {200, 10, 20, 40}}}};
  CHECK(validate_detection_log(frames).ok());
  // Pure: same input, same report.
  CHECK(validate_detection_log(frames).violations.size() == validate_detection_log(frames).violations.size());
}

TEST_CASE("zero-height box is reported with frame and ordinal") {
  std::vector<DetectionFrame> frames = {{7, {100}, {{10, 10, 20, 40}, {50, 50, 20, 0}}}};
  const auto report = validate_detection_log(frames);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].frame_index == 7);
  CHECK(report.violations[0].box_ordinal == std::optional<std::size_t>(1));
}

TEST_CASE("decreasing frame index is a monotonicity violation at the second frame") {
  std::vector<DetectionFrame> frames = {{5, {100}, {}}, {4, {200}, {}}};
  const auto report = validate_detection_log(frames);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].frame_index == 4);
  CHECK_FALSE(report.violations[0].box_ordinal.has_value());
}

TEST_CASE("sensor stream validation") {
  SensorStream s{"a", {{{0}, 0, 0, 9.81}, {{10000}, 0, 0, 9.81}}, 100.0};
  CHECK_NOTHROW(validate_sensor_stream(s));
  s.nominal_rate = 20.0;
  CHECK_THROWS_AS(validate_sensor_stream(s), ConfigError);
  s.nominal_rate = 100.0;
  s.samples[1].timestamp = Timestamp{0};
  CHECK_THROWS_AS(validate_sensor_stream(s), ConfigError);
}

TEST_CASE("ground truth rejects two sensors on one person") {
  GroundTruth truth;
  truth.sensor_to_person = {{"s1", "p1"}, {"s2", "p2"}};
  CHECK_NOTHROW(truth.check());
  truth.sensor_to_person["s3"] = "p1";
  CHECK_THROWS_AS(truth.check(), ConfigError);
}

TEST_CASE("detection log and sensor stream survive a write/read round trip") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> pos(-1e3, 1e3), dim(1e-3, 500.0), acc(-50.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<DetectionFrame> frames;
    for (int f = 0; f < 30; ++f) {
      DetectionFrame frame{f, {static_cast<std::int64_t>(f) * 33333}, {}};
      for (std::size_t b = gen() % 4; b > 0; --b) frame.boxes.push_back({pos(gen), pos(gen), dim(gen), dim(gen)});
      frames.push_back(frame);
    }
    std::stringstream det;
    io::write_detections(det, frames);
    CHECK(io::read_detections(det) == frames);

    SensorStream stream{"phone-" + std::to_string(trial), {}, 100.0};
    for (int k = 0; k < 50; ++k) stream.samples.push_back({{k * 10000}, acc(gen), acc(gen), acc(gen)});
    std::stringstream csv;
    io::write_sensor_csv(csv, stream);
    CHECK(io::read_sensor_csv(csv, stream.sensor_id) == stream);
  }
}

TEST_CASE("malformed inputs raise FormatError") {
  std::stringstream det("{\"frame\":0,\"ts_us\":0,\"boxes\":[{\"cx\":1}]}\n");
  CHECK_THROWS_AS(io::read_detections(det), FormatError);
  std::stringstream csv("ts_us,ax,ay,az\n0,1,2\n");
  CHECK_THROWS_AS(io::read_sensor_csv(csv, "x"), FormatError);
  std::stringstream header("t,x,y,z\n");
  CHECK_THROWS_AS(io::read_sensor_csv(header, "x"), FormatError);
}

TEST_CASE("truth round trip") {
  GroundTruth truth;
  truth.sensor_to_person = {{"s1", "p1"}};
  truth.box_person[0] = {"p1", "p2"};
  truth.box_person[3] = {};
  const auto back = io::truth_from_json(io::truth_to_json(truth));
  CHECK(back.sensor_to_person == truth.sensor_to_person);
  CHECK(back.box_person == truth.box_person);
  CHECK(back.person_of_box(0, 1) == std::optional<PersonId>("p2"));
  CHECK_FALSE(back.person_of_box(3, 0).has_value());
}
