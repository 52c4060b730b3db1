#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace longrun::cli {

/// Exit statuses of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_arguments = 2;
inline constexpr int exit_module = 3;

/// Runs one invocation. args excludes the program name. Results go to out as
/// a single JSON document (or CSV with a header); failures also go to out as
/// a JSON error object, with a one-line message on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies LONGRUN_MAX_N, when set, to the process-wide resource caps.
/// Throws std::invalid_argument on a malformed value.
void apply_environment();

}  // namespace longrun::cli
