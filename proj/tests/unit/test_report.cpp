#include <gtest/gtest.h>

#include <filesystem>

#include "modroots/errors.hpp"
#include "modroots/report.hpp"

using namespace modroots;

namespace {

ReportRow sample() {
  ReportRow r;
  r.check = "t22-bound";
  r.params = {{"q", "101"}, {"N", "8"}, {"note", "a,b \"c\""}};
  r.measured = "1234";
  r.bound = format_decimal(2.0 / 3.0);
  r.ratio = format_rational(Rational(6, 4));
  r.pass = true;
  r.ms = 1.5;
  return r;
}

}  // namespace

TEST(Format, Numbers) {
  EXPECT_EQ(format_decimal(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(format_decimal(1e20), "1e+20");
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  EXPECT_EQ(format_integer(BigInt("-123456789012345678901234567890")), "-123456789012345678901234567890");
}

TEST(Csv, EmptyIsHeaderOnly) { EXPECT_EQ(to_csv({}), "check,params,measured,bound,ratio,pass,ms\n"); }

TEST(Csv, RoundTrip) {
  const std::vector<ReportRow> rows{sample()};
  const std::string text = to_csv(rows);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(parse_csv(text), rows);
  ReportRow open = sample();
  open.pass.reset();
  EXPECT_EQ(parse_csv(to_csv({open})), std::vector<ReportRow>{open});
}

TEST(Json, RoundTripAndShape) {
  std::vector<ReportRow> rows;
  for (int i = 0; i < 1000; ++i) {
    auto r = sample();
    r.params[1].second = std::to_string(i);
    if (i % 3 == 0) r.pass.reset();
    rows.push_back(r);
  }
  const std::string text = to_json(rows);
  EXPECT_EQ(parse_json(text), rows);
  EXPECT_EQ(parse_json(text).size(), 1000u);
  EXPECT_EQ(to_json(rows), text);
  EXPECT_EQ(to_json({}), "[]\n");
}

TEST(Formats, Parse) {
  EXPECT_EQ(parse_format("csv"), ReportFormat::Csv);
  EXPECT_EQ(parse_format("json"), ReportFormat::Json);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Files, WriteReadAndErrors) {
  const auto path = (std::filesystem::temp_directory_path() / "modroots_report_test.csv").string();
  emit({sample()}, ReportFormat::Csv, path);
  EXPECT_EQ(parse_csv(read_file(path)), std::vector<ReportRow>{sample()});
  std::filesystem::remove(path);
  try {
    write_file("/nonexistent-dir/x.csv", "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}
