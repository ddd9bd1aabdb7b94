#include "csums/records.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace csums {

ExperimentRecord& ExperimentRecord::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
  return *this;
}

ExperimentRecord& ExperimentRecord::param(std::string key, std::uint64_t value) {
  return param(std::move(key), std::to_string(value));
}

ExperimentRecord& ExperimentRecord::param(std::string key, double value) {
  return param(std::move(key), format_double(value));
}

void ExperimentRecord::validate() const {
  if (!std::isfinite(value)) throw std::logic_error("record '" + statistic + "' has non-finite value");
  const bool wants_stderr = trials && *trials > 1;
  if (std_error.has_value() != wants_stderr) {
    throw std::logic_error("record '" + statistic + "': stderr must be present iff trials > 1");
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  std::set<std::string> keys;
  for (const auto& r : records) {
    r.validate();
    for (const auto& [k, v] : r.params) keys.insert(k);
  }
  out << "command";
  for (const auto& k : keys) out << ',' << csv_escape(k);
  out << ",statistic,value,stderr,trials,seed,wall_ms\n";
  for (const auto& r : records) {
    out << csv_escape(r.command);
    for (const auto& k : keys) {
      out << ',';
      for (const auto& [pk, pv] : r.params) {
        if (pk == k) {
          out << csv_escape(pv);
          break;
        }
      }
    }
    out << ',' << csv_escape(r.statistic) << ',' << format_double(r.value) << ',';
    if (r.std_error) out << format_double(*r.std_error);
    out << ',';
    if (r.trials) out << *r.trials;
    out << ',';
    if (r.seed) out << *r.seed;
    out << ',' << r.wall_ms << '\n';
  }
}

void write_records_json(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    r.validate();
    nlohmann::ordered_json j;
    j["command"] = r.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["statistic"] = r.statistic;
    j["value"] = r.value;
    j["stderr"] = r.std_error ? nlohmann::ordered_json(*r.std_error) : nlohmann::ordered_json(nullptr);
    j["trials"] = r.trials ? nlohmann::ordered_json(*r.trials) : nlohmann::ordered_json(nullptr);
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    j["wall_ms"] = r.wall_ms;
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(cells[i]);
    }
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

}  // namespace csums
