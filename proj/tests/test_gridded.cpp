#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "lawpca/error.hpp"
#include "lawpca/gridded.hpp"

namespace lawpca {
namespace {

GriddedStack make_stack(Eigen::Index n_time, Eigen::Index nlat, Eigen::Index nlon,
                        std::vector<std::string> names, std::uint64_t seed = 1) {
  GriddedStack s;
  for (auto& n : names) s.fields.push_back({n, "u"});
  s.nlat = nlat;
  s.nlon = nlon;
  s.lat0 = 90.0;
  s.dlat = -2.5;
  s.lon0 = 0.0;
  s.dlon = 2.5;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  s.values.resize(n_time, s.n_fields() * nlat * nlon);
  for (Eigen::Index i = 0; i < s.values.size(); ++i) s.values.data()[i] = g(rng);
  return s;
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("lawpca_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(Flatten, ThreeFieldSegments) {
  const auto s = make_stack(3, 17, 144, {"T_v", "H", "V"});
  const auto [table, segs] = flatten_stack(s);
  ASSERT_EQ(segs.segments().size(), 3u);
  EXPECT_EQ(segs.segments()[0].first_one_based(), 1);
  EXPECT_EQ(segs.segments()[0].last_one_based(), 2448);
  EXPECT_EQ(segs.segments()[1].first_one_based(), 2449);
  EXPECT_EQ(segs.segments()[1].last_one_based(), 4896);
  EXPECT_EQ(segs.segments()[2].first_one_based(), 4897);
  EXPECT_EQ(segs.segments()[2].last_one_based(), 7344);
  EXPECT_EQ(table.n_variables(), 7344);
  EXPECT_EQ(table.variable_names()[2449 - 1], "H[0,0]");
  EXPECT_EQ(table.variable_names()[145], "T_v[1,1]");
}

TEST(Flatten, OneByOneIsTheSeries) {
  const auto s = make_stack(5, 1, 1, {"x"});
  const auto [table, segs] = flatten_stack(s);
  EXPECT_EQ(table.values(), s.values);
  EXPECT_EQ(segs.total_length(), 1);
}

TEST(Flatten, LonFastestOrdering) {
  auto s = make_stack(2, 2, 3, {"a", "b"});
  s.at(1, 1, 1, 2) = 42.0;
  const auto [table, segs] = flatten_stack(s);
  EXPECT_EQ(table.values()(1, 6 + 1 * 3 + 2), 42.0);
}

TEST(Flatten, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = make_stack(4, 1 + seed % 4, 2 + seed % 3, {"p", "q"}, seed);
    const auto [table, segs] = flatten_stack(s);
    EXPECT_TRUE(unflatten(table, s) == s);
  }
}

TEST(DifferenceFilter, CaseCount) {
  const auto s = make_stack(530, 1, 2, {"x"});
  EXPECT_EQ(difference_filter(s, 12).n_time(), 518);
}

TEST(DifferenceFilter, LinearRamp) {
  GriddedStack s = make_stack(14, 1, 1, {"x"});
  for (int t = 0; t < 14; ++t) s.values(t, 0) = t + 1;
  const auto d = difference_filter(s, 12);
  ASSERT_EQ(d.n_time(), 2);
  EXPECT_EQ(d.values(0, 0), 12.0);
  EXPECT_EQ(d.values(1, 0), 12.0);
}

TEST(DifferenceFilter, RemovesPeriodicComponent) {
  GriddedStack s = make_stack(60, 2, 2, {"x"});
  for (int t = 0; t < 60; ++t) {
    for (int g = 0; g < 4; ++g) s.values(t, g) = std::sin(2 * M_PI * t / 12.0 + g);
  }
  const auto d = difference_filter(s, 12);
  EXPECT_LT(d.values.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DifferenceFilter, Errors) {
  const auto s = make_stack(12, 1, 1, {"x"});
  EXPECT_THROW(difference_filter(s, 12), InputError);
  EXPECT_THROW(difference_filter(s, 0), InputError);
}

TEST(CropLatitudes, SeventeenRows) {
  const auto s = make_stack(2, 73, 4, {"a", "b"});
  const auto c = crop_latitudes(s, 37.5, 77.5);
  EXPECT_EQ(c.nlat, 17);
  EXPECT_DOUBLE_EQ(c.lat0, 77.5);
  EXPECT_DOUBLE_EQ(c.latitude(16), 37.5);
  // values of field b at the first kept row come from row 5 of the source
  EXPECT_EQ(c.at(1, 1, 0, 3), s.at(1, 1, 5, 3));
}

TEST(CropLatitudes, FullRangeIsIdentity) {
  const auto s = make_stack(2, 73, 2, {"a"});
  EXPECT_TRUE(crop_latitudes(s, -90, 90) == s);
}

TEST(CropLatitudes, SingleRowAndEmpty) {
  const auto s = make_stack(2, 73, 2, {"a"});
  EXPECT_EQ(crop_latitudes(s, 45.0, 45.0).nlat, 1);
  EXPECT_THROW(crop_latitudes(s, 46.0, 47.0), InputError);
  EXPECT_THROW(crop_latitudes(s, 50.0, 40.0), InputError);
}

TEST(VirtualTemperature, DryAir) {
  Eigen::Array3d t(250, 280, 300);
  EXPECT_TRUE((virtual_temperature(t, Eigen::Array3d::Zero()) == t).all());
}

TEST(VirtualTemperature, KnownValues) {
  EXPECT_NEAR(virtual_temperature(Eigen::Array<double, 1, 1>(300.0), Eigen::Array<double, 1, 1>(0.01))(0),
              301.8051, 1e-4);
  // 280 * (1 + 0.005 / 0.622) / 1.005
  EXPECT_NEAR(virtual_temperature(Eigen::Array<double, 1, 1>(280.0), Eigen::Array<double, 1, 1>(0.005))(0),
              280.84657, 1e-5);
}

TEST(VirtualTemperature, Errors) {
  EXPECT_THROW(virtual_temperature(Eigen::Array2d(-1, 300), Eigen::Array2d(0, 0)), InputError);
  EXPECT_THROW(virtual_temperature(Eigen::Array2d(1, 300), Eigen::Array2d(-0.1, 0)), InputError);
}

TEST(VirtualTemperature, StackFieldReplacement) {
  auto s = make_stack(3, 2, 2, {"T", "q", "H"});
  s.values.middleCols(0, 4).array() = 280.0;
  s.values.middleCols(4, 4).array() = 0.005;
  const auto out = with_virtual_temperature(s, "T", "q");
  ASSERT_EQ(out.n_fields(), 2);
  EXPECT_EQ(out.fields[0].name, "T_v");
  EXPECT_EQ(out.fields[1].name, "H");
  EXPECT_NEAR(out.values(0, 0), 280.84657, 1e-5);
  EXPECT_EQ(out.values.middleCols(4, 4), s.values.middleCols(8, 4));
}

TEST(StackDir, RoundTripExact) {
  auto s = make_stack(7, 3, 4, {"T_v", "H"}, 99);
  s.values(0, 0) = 0.1 + 0.2;  // needs all 17 digits
  const auto dir = scratch("roundtrip");
  write_stack_dir(s, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "meta.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "H.csv"));
  EXPECT_TRUE(read_stack_dir(dir) == s);
  std::filesystem::remove_all(dir);
}

TEST(StackDir, ReportsLineNumbers) {
  const auto s = make_stack(3, 1, 2, {"a"});
  const auto dir = scratch("badline");
  write_stack_dir(s, dir);
  {
    std::ofstream out(dir / "a.csv");
    out << "1,2\n3,oops\n5,6\n";
  }
  try {
    read_stack_dir(dir);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  std::filesystem::remove_all(dir);
}

TEST(StackDir, MissingAndMalformedMeta) {
  const auto dir = scratch("nometa");
  std::filesystem::create_directories(dir);
  EXPECT_THROW(read_stack_dir(dir), InputError);
  {
    std::ofstream out(dir / "meta.json");
    out << "{ not json";
  }
  EXPECT_THROW(read_stack_dir(dir), InputError);
  {
    std::ofstream out(dir / "meta.json");
    out << R"({"fields":[{"name":"../x"}],"nlat":1,"nlon":1,"lat0":0,"dlat":1,"lon0":0,"dlon":1,"n_time":1})";
  }
  EXPECT_THROW(read_stack_dir(dir), InputError);
  std::filesystem::remove_all(dir);
}

TEST(StackValidate, RejectsBadShapes) {
  auto s = make_stack(2, 2, 2, {"a"});
  s.nlat = 3;
  EXPECT_THROW(s.validate(), InputError);
  auto d = make_stack(2, 1, 1, {"a", "a"});
  EXPECT_THROW(d.validate(), InputError);
}

}  // namespace
}  // namespace lawpca
