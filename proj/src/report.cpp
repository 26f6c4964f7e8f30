#include "folia/report.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

namespace folia {

nlohmann::json report_envelope(const std::string& tool) {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return nlohmann::json{
      {"schema_version", kSchemaVersion},
      {"tool", tool},
      {"generated_at", stamp},
  };
}

void write_json(std::ostream& os, const nlohmann::json& doc) {
  os << doc.dump(2) << '\n';
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void csv_row(std::ostream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << csv_field(row[i]);
  }
  os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  csv_row(os, header);
  for (const auto& row : rows) csv_row(os, row);
}

}  // namespace folia
