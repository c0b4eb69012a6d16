#include "fwlab/report.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fwlab/errors.hpp"

namespace fwlab {

namespace {

// Shortest decimal string that parses back to the same double.
std::string shortest(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += report.columns[i];
  }
  out += '\n';
  for (const std::vector<double>& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += shortest(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config_echo) j["config"][key] = value;
  j["columns"] = report.columns;
  j["rows"] = report.rows;
  j["derived"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.derived) j["derived"][key] = value;
  j["verdicts"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.verdicts) j["verdicts"][key] = value;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, const std::string& path,
                 ReportFormat format) {
  const std::string body =
      format == ReportFormat::csv ? to_csv(report) : to_json(report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_failure("cannot open " + path + " for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out.good()) throw io_failure("short write to " + path);
}

}  // namespace fwlab
