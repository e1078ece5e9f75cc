#pragma once

#include <iosfwd>

#include "nullcong/congruence.hpp"
#include "nullcong_cli/config.hpp"

namespace nullcong::cli {

inline constexpr const char* kReportSchema = "nullcong-report-v1";

enum ExitCode : int { kPass = 0, kToleranceFailure = 1, kConfigError = 2 };

// Builds the configured family. Throws ConfigError on bad parameters or an
// impossible differentiation request.
CongruenceField make_congruence(const RunConfig& cfg);

// Grid used when none is configured.
GridSpec default_grid(const RunConfig& cfg);

// Runs one subcommand. JSON goes to <out>/<subcommand>.json, or to `out`
// when cfg.out is empty; CSV files are written only with an output directory.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace nullcong::cli
