#include "modroots/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "modroots/errors.hpp"

namespace modroots {

namespace {

const char* const kHeader = "check,params,measured,bound,ratio,pass,ms";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::pair<std::string, std::string>> parse_params(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    const std::string item = s.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw InvalidParameter("report: malformed parameter '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string ReportRow::params_string() const {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ';';
    out += params[i].first + '=' + params[i].second;
  }
  return out;
}

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_rational(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}
std::string format_integer(const BigInt& z) { return z.get_str(); }

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError("unknown report format '" + name + "' (expected csv or json)");
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& r : rows) {
    out += csv_field(r.check) + ',' + csv_field(r.params_string()) + ',' + csv_field(r.measured) + ',' +
           csv_field(r.bound) + ',' + csv_field(r.ratio) + ',' + (r.pass ? (*r.pass ? "true" : "false") : "") + ',' +
           format_decimal(r.ms) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["check"] = r.check;
    o["params"] = r.params_string();
    o["measured"] = r.measured;
    o["bound"] = r.bound;
    o["ratio"] = r.ratio;
    o["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json(nullptr);
    o["ms"] = r.ms;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string render(const std::vector<ReportRow>& rows, ReportFormat format) {
  return format == ReportFormat::Csv ? to_csv(rows) : to_json(rows);
}

std::vector<ReportRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw InvalidParameter("report: missing CSV header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw InvalidParameter("report: expected 7 CSV fields in '" + line + "'");
    ReportRow r;
    r.check = f[0];
    r.params = parse_params(f[1]);
    r.measured = f[2];
    r.bound = f[3];
    r.ratio = f[4];
    if (f[5] == "true") r.pass = true;
    else if (f[5] == "false") r.pass = false;
    else if (!f[5].empty()) throw InvalidParameter("report: bad pass field '" + f[5] + "'");
    r.ms = std::stod(f[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> parse_json(const std::string& text) {
  std::vector<ReportRow> rows;
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("report: invalid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw InvalidParameter("report: JSON report must be an array");
  for (const auto& o : arr) {
    ReportRow r;
    r.check = o.at("check").get<std::string>();
    r.params = parse_params(o.at("params").get<std::string>());
    r.measured = o.at("measured").get<std::string>();
    r.bound = o.at("bound").get<std::string>();
    r.ratio = o.at("ratio").get<std::string>();
    if (!o.at("pass").is_null()) r.pass = o.at("pass").get<bool>();
    r.ms = o.at("ms").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path) {
  const std::string text = render(rows, format);
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  write_file(path, text);
}

}  // namespace modroots
