#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace planarstack::cli {

// Exit codes shared by every subcommand.
enum ExitCode {
  kOk = 0,
  kValidationFailed = 1,
  kParseError = 2,
  kEvaluationError = 3,
  kUnreachableParameter = 4,
  kConvergenceError = 5,
};

enum class Format { csv, jsonl };

Format parse_format(const std::string& name);

// Round-trip-exact formatting for doubles (17 significant digits).
std::string fmt_double(double v);

using Cell = std::variant<double, long long, std::string>;

// Streams rows as CSV (header + comma-separated values) or JSON lines
// (one object per row keyed by column names). Numeric cells are
// formatted identically in both formats.
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format,
              std::vector<std::string> columns);

  void note(const std::string& key, const std::string& value);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
  std::vector<std::pair<std::string, std::string>> notes_;

  void write_header_if_needed();
};

struct SweepSpec {
  std::string axis;
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log = false;

  std::vector<double> values() const;
};

// Parses "axis:min:max:points[:log|:linear]" against a list of legal
// axis names. Throws planarstack::ParseError on malformed input.
SweepSpec parse_sweep(const std::string& text,
                      const std::vector<std::string>& axes);

// Evaluates fn(i) for i in [0, n) on `threads` workers and returns the
// results in index order; the first exception (by index) is rethrown.
std::vector<std::vector<Cell>> parallel_rows(
    int n, int threads,
    const std::function<std::vector<Cell>(int)>& fn);

}  // namespace planarstack::cli
