#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace folia {

inline constexpr const char* kSchemaVersion = "1.0.0";

// Shared report envelope: schema version, tool name, and an RFC 3339 UTC
// timestamp. generated_at is the one deliberately non-reproducible field;
// everything else in a report must be byte-stable for fixed inputs.
nlohmann::json report_envelope(const std::string& tool);

// Two-space indent and a trailing newline; object keys come out sorted
// (nlohmann objects are ordered maps).
void write_json(std::ostream& os, const nlohmann::json& doc);

// Minimal CSV writer: fields holding commas, quotes, or newlines are
// quoted, embedded quotes doubled.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace folia
