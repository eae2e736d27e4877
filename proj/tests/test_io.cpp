#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>

#include "mvquant/csv.hpp"
#include "mvquant/distributions.hpp"
#include "mvquant/rng.hpp"

using namespace mvq;

TEST(FormatDouble, RoundTripsBitExactly) {
  Rng rng(1);
  for (int i = 0; i < 20000; ++i) {
    double v = std::bit_cast<double>(rng.next_u64());
    if (!std::isfinite(v)) continue;
    ASSERT_EQ(std::bit_cast<std::uint64_t>(parse_double(format_double(v))), std::bit_cast<std::uint64_t>(v));
  }
  for (double v : {0.0, -0.0, 0.1, 1e-310, std::numeric_limits<double>::max(), 2400.0}) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(parse_double(format_double(v))), std::bit_cast<std::uint64_t>(v));
  }
  EXPECT_EQ(format_double(0.25), "0.25");
}

TEST(ParseDouble, Strict) {
  EXPECT_THROW(parse_double(""), std::invalid_argument);
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_double("abc"), std::invalid_argument);
  EXPECT_DOUBLE_EQ(parse_double("-2.5e3"), -2500.0);
}

TEST(Csv, EscapeAndParse) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_line({"a", "b,c"}), "a,\"b,c\"\r\n");
  const auto rows = parse_csv("h1,h2\r\n\"x,1\",\"multi\nline\"\r\n3,\"q\"\"q\"\r\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "x,1");
  EXPECT_EQ(rows[1][1], "multi\nline");
  EXPECT_EQ(rows[2][1], "q\"q");
  EXPECT_THROW(parse_csv("\"unterminated"), std::invalid_argument);
}

TEST(Csv, TableRoundTrip) {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x y"}, {"2", "\"z\""}};
  const auto rows = parse_csv(to_csv_text(t));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], t.header);
  EXPECT_EQ(rows[2], t.rows[1]);
}

TEST(Csv, WriteCreatesDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "mvquant_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text_file(dir / "f.txt", "hello");
  EXPECT_EQ(read_text_file(dir / "f.txt"), "hello");
  std::filesystem::remove_all(dir.parent_path());
  EXPECT_THROW(read_text_file(dir / "missing.txt"), std::runtime_error);
}

TEST(SpecConfig, PresetsRoundTrip) {
  for (const std::string& name : DistributionSpec::preset_names()) {
    const DistributionSpec spec = DistributionSpec::preset(name);
    const std::string text = to_config_text(spec);
    const DistributionSpec back = parse_distribution_config(text);
    EXPECT_EQ(to_config_text(back), text) << name;
    // Same parameters draw the same sample.
    const SampleSet a = sample(spec, 20, 3), b = sample(back, 20, 3);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(a.point(i), b.point(i)) << name;
  }
}

TEST(SpecConfig, CustomMixtureRoundTrip) {
  Eigen::MatrixXd c0(2, 2), c1(2, 2);
  c0 << 1.0 / 3.0, 0.1, 0.1, 2.0;
  c1 << 0.5, 0.0, 0.0, 0.25;
  const DistributionSpec spec = DistributionSpec::custom_mixture(
      {0.3, 0.7}, {GaussianSpec{Vector{0.1, -1.0 / 7.0}, c0}, GaussianSpec{Vector{2.0, 2.0}, c1}});
  const std::string text = to_config_text(spec);
  EXPECT_EQ(to_config_text(parse_distribution_config(text)), text);
}

TEST(SpecConfig, Errors) {
  EXPECT_THROW(parse_distribution_config("kind=gaussian\nmean=0,0\n"), std::invalid_argument);
  EXPECT_THROW(parse_distribution_config("kind=weird\n"), std::invalid_argument);
  EXPECT_THROW(parse_distribution_config("kind=banana_mixture\nkind=banana_mixture\n"), std::invalid_argument);
  EXPECT_THROW(parse_distribution_config("kind=banana_mixture\nextra=1\n"), std::invalid_argument);
  EXPECT_THROW(parse_distribution_config("kind=skew_t\ndof=4\nslant=1,x\n"), std::invalid_argument);
  EXPECT_NO_THROW(parse_distribution_config("# comment\n\nkind=skew_t\ndof=4\nslant=1,2\n"));
}
