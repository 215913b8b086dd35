#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modroots/numeric.hpp"

namespace modroots {

struct ReportRow {
  std::string check;
  // Ordered name/value pairs, rendered "name=value;name=value".
  std::vector<std::pair<std::string, std::string>> params;
  std::string measured;
  std::string bound;
  std::string ratio;
  std::optional<bool> pass;  // empty for reported-only rows
  double ms = 0;

  std::string params_string() const;
  bool operator==(const ReportRow&) const = default;
};

// Value rendering shared by every report: 12 significant digits for
// decimals, "num/den" for rationals.
std::string format_decimal(double x);
std::string format_rational(const Rational& r);
std::string format_integer(const BigInt& z);

enum class ReportFormat { Csv, Json };

ReportFormat parse_format(const std::string& name);  // "csv" or "json"

std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_json(const std::vector<ReportRow>& rows);
std::string render(const std::vector<ReportRow>& rows, ReportFormat format);

std::vector<ReportRow> parse_csv(const std::string& text);
std::vector<ReportRow> parse_json(const std::string& text);

// File helpers; failures raise Error naming the path.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

void emit(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path);

}  // namespace modroots
