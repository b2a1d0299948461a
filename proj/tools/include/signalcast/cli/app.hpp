#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "signalcast/cli/config.hpp"

namespace signalcast::cli {

/// Stage names in pipeline order (excluding "pipeline" itself).
const std::vector<std::string>& stage_names();

/// Runs one stage against the config. Exceptions propagate.
void run_stage(std::string_view name, const PipelineConfig& config, std::ostream& log);

/// Entry point behind the `signalcast` binary: parses arguments, runs the
/// subcommand and maps failures to exit codes (1 validation, 2 numeric).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace signalcast::cli
