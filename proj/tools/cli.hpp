#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "solvloop/report.hpp"

namespace solvloop::cli {

using Json = nlohmann::ordered_json;

/// Runs one subcommand. `args` excludes the program name. Returns 0 when the
/// report passes (warnings included), 1 when it fails and 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Serializes with stable key order, two-space indentation and doubles at 17
/// significant digits; non-finite doubles become null.
std::string to_json_text(const Json& j);

Json checks_json(const VerificationReport& r);

/// Writes `report` to `path`, or to `out` when path is empty or "-".
void emit_report(const Json& report, const std::string& path, std::ostream& out);

}  // namespace solvloop::cli
