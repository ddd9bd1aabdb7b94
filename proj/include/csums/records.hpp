// records.hpp
//
// Experiment output rows and their CSV / JSON writers. CSV columns are
// command, the sorted union of parameter keys, then the fixed statistic
// columns; wall_ms is always last.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace csums {

struct ExperimentRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::string statistic;
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::int64_t wall_ms = 0;

  ExperimentRecord& param(std::string key, std::string value);
  ExperimentRecord& param(std::string key, std::uint64_t value);
  ExperimentRecord& param(std::string key, double value);

  /// Throws std::logic_error when value is not finite or the stderr/trials
  /// pairing is broken.
  void validate() const;
};

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_records_json(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Minimal CSV table writer for fixed-schema outputs.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void write(std::ostream& out) const;
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace csums
