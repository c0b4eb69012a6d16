#pragma once

#include <string>

#include "fwlab/experiments.hpp"

namespace fwlab {

/// CSV serialization: header row plus one line per record, '.' decimal
/// separator, LF line endings, shortest round-trip float formatting.
std::string to_csv(const ExperimentReport& report);

/// JSON serialization: single object with config echo, column names, rows,
/// derived scalars and verdicts.  Key order and float formatting are
/// deterministic for a fixed config.
std::string to_json(const ExperimentReport& report);

/// Writes the chosen serialization to path; throws io_failure when the
/// file cannot be written.
void emit_report(const ExperimentReport& report, const std::string& path, ReportFormat format);

}  // namespace fwlab
