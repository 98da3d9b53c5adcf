#pragma once

#include <string>

#include <json.hpp>

#include "qkd/entropy.hpp"
#include "qkd/pipeline.hpp"

namespace qkd {

/// Value formatted with `sig` significant digits ("%.{sig}g").
std::string format_sig(double v, int sig);

/// Double re-parsed from format_sig, so that serialized JSON numbers carry
/// exactly the requested precision and print back identically.
double quantize_sig(double v, int sig);

nlohmann::ordered_json rate_report_json(const RateReport& r, int sig);
nlohmann::ordered_json protocol_report_json(const ProtocolReport& r, int sig);

/// Single-line JSON with a trailing newline, the CLI wire format.
std::string to_json_line(const nlohmann::ordered_json& j);

/// CSV rows for a flat JSON object or a homogeneous array of flat objects;
/// header first. Nested objects flatten with dotted keys.
std::string to_csv(const nlohmann::ordered_json& j);

}  // namespace qkd
