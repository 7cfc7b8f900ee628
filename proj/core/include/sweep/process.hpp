#pragma once

#include <string>

namespace sweep {

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

/// Runs a shell command, capturing its combined output. exit_code is the
/// command's exit status, or -1 when it terminated abnormally. Throws
/// EnvironmentError when the shell itself cannot be spawned.
CommandResult run_command(const std::string& shell_command);

/// True when `name` resolves to an executable via PATH.
bool executable_on_path(const std::string& name);

} // namespace sweep
