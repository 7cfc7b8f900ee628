#include "sweep/process.hpp"

#include "sweep/errors.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace sweep {

CommandResult run_command(const std::string& shell_command) {
    const std::string wrapped = "( " + shell_command + " ) 2>&1";
    FILE* pipe = ::popen(wrapped.c_str(), "r");
    if (pipe == nullptr) {
        throw EnvironmentError("cannot spawn shell for command: " + shell_command);
    }
    CommandResult result;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    const int status = ::pclose(pipe);
    if (status >= 0 && WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else {
        result.exit_code = -1;
    }
    return result;
}

bool executable_on_path(const std::string& name) {
    const char* path_env = std::getenv("PATH");
    if (path_env == nullptr || name.empty()) {
        return false;
    }
    std::istringstream entries(path_env);
    std::string dir;
    while (std::getline(entries, dir, ':')) {
        if (dir.empty()) {
            continue;
        }
        std::error_code ec;
        const auto candidate = std::filesystem::path(dir) / name;
        if (std::filesystem::is_regular_file(candidate, ec) &&
            ::access(candidate.c_str(), X_OK) == 0) {
            return true;
        }
    }
    return false;
}

} // namespace sweep
