#pragma once

#include "cli.hpp"

namespace vfde::cli {

CommandResult cmd_validate(const Json& config, const std::filesystem::path& out);
CommandResult cmd_barenblatt(const Json& config, const std::filesystem::path& out);
CommandResult cmd_solve(const Json& config, const std::filesystem::path& out);
CommandResult cmd_profile(const Json& config, const std::filesystem::path& out);
CommandResult cmd_converge(const Json& config, const std::filesystem::path& out);
CommandResult cmd_criteria(const Json& config, const std::filesystem::path& out);
CommandResult cmd_sweep(const Json& config, const std::string& preset, const std::filesystem::path& out);

}  // namespace vfde::cli
