#pragma once

#include <json.hpp>

#include "cechdr/theorems.hpp"

namespace cechdr {

using Json = nlohmann::ordered_json;

inline constexpr const char* kEngineName = "cechdr";
inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

Json schedule_to_json(const WindowSchedule& s);
Json window_to_json(const TruncationWindow& w);
Json derham_to_json(const DeRhamResult& r);
Json geometry_to_json(const CurveGeometry& g);
Json form_to_json(const GenericLinearForm& f);
Json verification_to_json(const VerificationReport& v);

// {schema_version, engine, command, inputs, result}
Json report_envelope(const std::string& command, Json inputs, Json result);

// Human-readable rendering of a report; JSON output is report.dump(2).
std::string render_text(const Json& report);

}  // namespace cechdr
