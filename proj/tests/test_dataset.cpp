#include "doctest.h"

#include <fstream>
#include <random>

#include "gavo/dataset.hpp"
#include "gavo/errors.hpp"
#include "gavo/png_io.hpp"
#include "synthetic.hpp"

using namespace gavo;
namespace fs = std::filesystem;

namespace {

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text)
{
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<IndexEntry> entries_at(std::initializer_list<double> times)
{
  std::vector<IndexEntry> out;
  for (double t : times)
    out.push_back({t, "f" + std::to_string(out.size())});
  return out;
}

}  // namespace

TEST_CASE("parse_index_file")
{
  const auto dir = gavo::testing::scratch_dir("index");

  const auto one = parse_index_file(
      write_file(dir, "rgb.txt", "# header\n1305031102.175304 rgb/1305031102.175304.png\n"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].timestamp == 1305031102.175304);
  CHECK(one[0].path == "rgb/1305031102.175304.png");

  CHECK(parse_index_file(write_file(dir, "empty.txt", "")).empty());

  try {
    parse_index_file(write_file(dir, "bad.txt", "abc def ghi\n"));
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line() == 1);
  }

  try {
    parse_index_file(write_file(dir, "bad3.txt", "# c\n\n1.0 a.png\nnope\n"));
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line() == 4);
  }

  CHECK_THROWS_AS(parse_index_file(dir / "does_not_exist.txt"), MissingFile);
  fs::remove_all(dir);
}

TEST_CASE("index files survive parse, format, parse")
{
  const auto dir = gavo::testing::scratch_dir("index_rt");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> step(0.01, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    std::string text = "# timestamp filename\n";
    double t = 1305031102.0 + trial;
    char line[96];
    for (int i = 0; i < 30; ++i) {
      t += step(gen);
      std::snprintf(line, sizeof(line), "%.6f rgb/%.6f.png\n", t, t);
      text += line;
    }
    const auto first = parse_index_file(write_file(dir, "a.txt", text));
    const auto second = parse_index_file(write_file(dir, "b.txt", format_index(first)));
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].timestamp == second[i].timestamp);
      CHECK(first[i].path == second[i].path);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("associate")
{
  const auto exact = associate(entries_at({1.00}), entries_at({1.00}), 0.02);
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].timestamp == 1.00);

  const auto nearest = associate(entries_at({1.00}), entries_at({1.015, 1.05}), 0.02);
  REQUIRE(nearest.size() == 1);
  CHECK(nearest[0].depth_path == "f0");

  CHECK(associate(entries_at({1.00}), entries_at({1.50}), 0.02).empty());

  // Greedy by smallest gap: depth 1.01 goes to rgb 1.012, not rgb 1.00.
  const auto greedy = associate(entries_at({1.00, 1.012}), entries_at({1.01}), 0.02);
  REQUIRE(greedy.size() == 1);
  CHECK(greedy[0].timestamp == 1.012);

  // Each record is used at most once and output follows rgb order.
  const auto many = associate(entries_at({0.0, 0.033, 0.066, 0.1}),
                              entries_at({0.004, 0.037, 0.070, 0.104}), 0.02);
  REQUIRE(many.size() == 4);
  for (std::size_t i = 0; i < many.size(); ++i)
    CHECK(many[i].depth_path == "f" + std::to_string(i));
}

TEST_CASE("associate pairs the same number of records in either direction")
{
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> gap(0.0, 0.06);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IndexEntry> a, b;
    double ta = 0, tb = 0;
    for (int i = 0; i < 25; ++i) {
      ta += gap(gen);
      tb += gap(gen);
      a.push_back({ta, "a"});
      b.push_back({tb, "b"});
    }
    CHECK(associate(a, b, 0.02).size() == associate(b, a, 0.02).size());
  }
}

TEST_CASE("load_rgbd_frame decodes intensity and metric depth")
{
  const auto dir = gavo::testing::scratch_dir("frame");
  Rgb8Image rgb{3, 2, {255, 255, 255, 30, 60, 90, 0, 0, 0, 10, 20, 30, 1, 2, 3, 200, 100, 50}};
  Gray16Image depth{3, 2, {5000, 10000, 0, 65535, 1, 2500}};
  write_png_rgb8((dir / "rgb.png").string(), rgb);
  write_png_gray16((dir / "depth.png").string(), depth);

  const FrameRecord record{1.0, (dir / "rgb.png").string(), (dir / "depth.png").string()};
  const auto k = preset_intrinsics(IntrinsicsPreset::Freiburg1);
  const RgbdFrame frame = load_rgbd_frame(record, k, 5000.0);

  CHECK(frame.width() == 3);
  CHECK(frame.height() == 2);
  CHECK(frame.intrinsics == k);
  CHECK(frame.intensity(0, 0) == 1.0);
  CHECK(frame.intensity(0, 1) == doctest::Approx(180.0 / 765.0).epsilon(1e-12));
  CHECK(frame.intensity(0, 1) == doctest::Approx(0.23529).epsilon(1e-4));
  CHECK(frame.depth(0, 0) == 1.0);
  CHECK(frame.depth(0, 1) == 2.0);
  CHECK(frame.depth(0, 2) == 0.0);
  CHECK(frame.intensity.minCoeff() >= 0.0);
  CHECK(frame.intensity.maxCoeff() <= 1.0);
  CHECK(frame.depth.minCoeff() >= 0.0);

  SUBCASE("errors")
  {
    Gray16Image small{2, 2, {1, 2, 3, 4}};
    write_png_gray16((dir / "small.png").string(), small);
    CHECK_THROWS_AS(load_rgbd_frame({1.0, record.rgb_path, (dir / "small.png").string()}, k),
                    DimensionMismatch);
    CHECK_THROWS_AS(load_rgbd_frame({1.0, (dir / "nope.png").string(), record.depth_path}, k),
                    MissingFile);
    // Swapped: the depth file is not 8-bit RGB.
    CHECK_THROWS_AS(load_rgbd_frame({1.0, record.depth_path, record.rgb_path}, k),
                    UnsupportedPixelFormat);
    std::ofstream(dir / "junk.png") << "not a png";
    CHECK_THROWS_AS(load_rgbd_frame({1.0, (dir / "junk.png").string(), record.depth_path}, k),
                    UnsupportedPixelFormat);
  }
  fs::remove_all(dir);
}

TEST_CASE("load_groundtruth")
{
  const auto dir = gavo::testing::scratch_dir("gt");

  const auto poses = load_groundtruth(write_file(
      dir, "gt.txt",
      "# ground truth\n1.0 1 2 3 0 0 0.7071068 0.7071068\n0.0 0 0 0 0 0 0 1\n"));
  REQUIRE(poses.size() == 2);
  CHECK(poses[0].timestamp == 0.0);
  CHECK(poses[0].translation.isZero(0));
  CHECK(poses[0].rotation_xyzw == Eigen::Vector4d(0, 0, 0, 1));
  CHECK(poses[1].translation == Eigen::Vector3d(1, 2, 3));
  CHECK(std::abs(poses[1].rotation_xyzw.norm() - 1.0) < 1e-15);

  const auto g = from_quaternion(poses[1].rotation_xyzw, poses[1].translation);
  CHECK((g.R * Eigen::Vector3d(1, 0, 0) - Eigen::Vector3d(0, 1, 0)).norm() < 1e-6);

  CHECK_THROWS_AS(load_groundtruth(write_file(dir, "seven.txt", "1.0 1 2 3 0 0 0\n")),
                  MalformedLine);
  CHECK_THROWS_AS(load_groundtruth(write_file(dir, "nonunit.txt", "1.0 1 2 3 0 0 0 1.2\n")),
                  NonUnitQuaternion);
  // Small deviations are renormalized.
  const auto close = load_groundtruth(write_file(dir, "close.txt", "1.0 0 0 0 0 0 0 1.005\n"));
  CHECK(close[0].rotation_xyzw[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(load_groundtruth(dir / "missing.txt"), MissingFile);
  fs::remove_all(dir);
}

TEST_CASE("intrinsics presets")
{
  const auto fr1 = preset_intrinsics(parse_preset("fr1"));
  CHECK(fr1 == CameraIntrinsicsd{517.3, 516.5, 318.6, 255.3});
  const auto fr2 = preset_intrinsics(parse_preset("freiburg2"));
  CHECK(fr2 == CameraIntrinsicsd{520.9, 521.0, 325.1, 249.7});
  CHECK_THROWS_AS(parse_preset("fr9"), ConfigError);
}

TEST_CASE("load_sequence_index resolves paths of a synthetic sequence")
{
  const auto dir = gavo::testing::scratch_dir("seq");
  gavo::testing::SequenceSpec spec;
  spec.frames = 4;
  spec.width = 32;
  spec.height = 24;
  gavo::testing::write_synthetic_sequence(dir, spec, gavo::testing::scaled_intrinsics(32));

  const auto records = load_sequence_index(dir);
  REQUIRE(records.size() == 4);
  for (const auto& r : records) {
    CHECK(fs::exists(r.rgb_path));
    CHECK(fs::exists(r.depth_path));
  }
  const auto frame = load_rgbd_frame(records[0], gavo::testing::scaled_intrinsics(32));
  CHECK(frame.depth.minCoeff() > 0);
  fs::remove_all(dir);
}
