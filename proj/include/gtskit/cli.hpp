#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtskit/audit.hpp"
#include "gtskit/dsl.hpp"
#include "json.hpp"

namespace gtskit::cli {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

struct Options {
    std::uint64_t budget = 1000;
    std::uint64_t seed = 0;
    std::string format = "text";
    /// "yes" or "no": the command's primary verdicts are asserted.
    std::optional<std::string> expect;
};

struct CommandResult {
    Json report;
    int exit_code = 0;
};

/// Exit codes: 0 verdict delivered, 1 violation or a verdict contradicting
/// --expect, 2 parse, validation or reference errors.
const std::vector<std::string>& commands();
/// Throws DslError (Resolution) for unknown commands and bad references and
/// (Validation) when the library rejects the request.
CommandResult run_command(const std::string& cmd, const dsl::Workspace& ws, const std::vector<std::string>& names,
                          const Options& opt);

/// Deterministic rendering; text is a header line plus one `path: value`
/// line per leaf of `results`.
std::string emit_report(const Json& report, const std::string& format);

Json verdict_json(const Verdict& v);
/// Tallies and replayable violation instances (sets and families in DSL syntax).
Json audit_json(const AuditReport& r);

/// Full driver: argument parsing, document loading, dispatch, output.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtskit::cli
