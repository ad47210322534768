#pragma once

#include "vfde/io.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vfde::cli {

enum ExitCode : int { Ok = 0, InvalidConfig = 2, SolverFailure = 3 };

struct CommandResult {
    int exit_code = Ok;
    Json summary = Json::object();
    Json diagnostics = Json::object();
    std::vector<std::string> outputs;
};

/// Runs one subcommand on a merged configuration, writing artifacts and
/// manifest.json into `out`. Errors are mapped to exit codes, never thrown.
int run_command(const std::string& command, const Json& config, const std::string& preset,
                const std::filesystem::path& out);

/// Entry point behind the executable; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args);

Json versions();

}  // namespace vfde::cli
