#include "cli.hpp"

#include "commands.hpp"
#include "config.hpp"

#include "vfde/errors.hpp"

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <mutex>

#ifndef VFDE_VERSION
#define VFDE_VERSION "0.0.0"
#endif

namespace vfde::cli {

namespace {

const std::vector<std::pair<std::string, std::string>> commands{
    {"validate", "check the model parameters against the admissibility constraints"},
    {"barenblatt", "explicit solution slices, constants and a refinement study"},
    {"solve", "time-march the radial equation and export the trajectory"},
    {"profile", "shoot for the self-similar profile and check its bounds"},
    {"converge", "rescaled distance to the profile over time"},
    {"criteria", "growth averages and the extinction lower bound of the initial data"},
    {"sweep", "run one command over a list of values of a config key"},
};

void setup_logging(const std::string& level)
{
    static std::once_flag once;
    std::call_once(once, [] {
        auto logger = spdlog::stderr_color_mt("vfde");
        logger->set_pattern("[%l] %v");
        spdlog::set_default_logger(logger);
    });
    spdlog::set_level(spdlog::level::from_str(level));
}

CommandResult dispatch(const std::string& command, const Json& config, const std::string& preset,
                       const std::filesystem::path& out)
{
    if (command == "validate") return cmd_validate(config, out);
    if (command == "barenblatt") return cmd_barenblatt(config, out);
    if (command == "solve") return cmd_solve(config, out);
    if (command == "profile") return cmd_profile(config, out);
    if (command == "converge") return cmd_converge(config, out);
    if (command == "criteria") return cmd_criteria(config, out);
    if (command == "sweep") return cmd_sweep(config, preset, out);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace

Json versions()
{
    Json v;
    v["project"] = VFDE_VERSION;
#if defined(__clang__)
    v["compiler"] = "clang " __clang_version__;
#elif defined(__GNUC__)
    v["compiler"] = "gcc " __VERSION__;
#else
    v["compiler"] = "unknown";
#endif
    v["boost"] = std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." +
                 std::to_string(BOOST_VERSION % 100);
    v["json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    v["toml++"] = toml_version();
    v["CLI11"] = CLI11_VERSION;
    v["spdlog"] = std::to_string(SPDLOG_VER_MAJOR) + "." + std::to_string(SPDLOG_VER_MINOR) + "." +
                  std::to_string(SPDLOG_VER_PATCH);
    return v;
}

int run_command(const std::string& command, const Json& config, const std::string& preset,
                const std::filesystem::path& out)
{
    const auto start = std::chrono::steady_clock::now();
    CommandResult result;
    std::string error;
    try {
        std::filesystem::create_directories(out);
        result = dispatch(command, config, preset, out);
    } catch (const ConfigError& e) {
        result.exit_code = InvalidConfig;
        error = e.what();
    } catch (const DomainExceeded& e) {
        result.exit_code = InvalidConfig;
        error = e.what();
    } catch (const std::invalid_argument& e) {
        result.exit_code = InvalidConfig;
        error = e.what();
    } catch (const std::out_of_range& e) {
        result.exit_code = InvalidConfig;
        error = e.what();
    } catch (const std::exception& e) {
        // NewtonDivergence, NonphysicalState, NoBracket, NonMonotoneShooting, Undershoot and I/O
        result.exit_code = SolverFailure;
        error = e.what();
    }
    if (!error.empty()) spdlog::error("{}: {}", command, error);

    Json manifest;
    manifest["command"] = command;
    manifest["preset"] = preset.empty() ? Json(nullptr) : Json(preset);
    manifest["config"] = config;
    manifest["versions"] = versions();
    manifest["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["exit_code"] = result.exit_code;
    manifest["error"] = error.empty() ? Json(nullptr) : Json(error);
    manifest["outputs"] = result.outputs;
    manifest["summary"] = result.summary;
    manifest["diagnostics"] = result.diagnostics;
    try {
        write_json(out / "manifest.json", manifest);
    } catch (const std::exception& e) {
        spdlog::error("cannot write the manifest: {}", e.what());
        if (result.exit_code == Ok) result.exit_code = SolverFailure;
    }
    return result.exit_code;
}

int run_cli(const std::vector<std::string>& args)
{
    CLI::App app{"Radial fast-diffusion laboratory", args.empty() ? "vfde" : args.front()};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", VFDE_VERSION);

    std::string config_path, preset, out = "out", log_level = "info";
    std::vector<std::string> overrides;
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "TOML configuration file");
        sub->add_option("--preset", preset, "named preset layered below --config");
        sub->add_option("--out", out, "output directory")->capture_default_str();
        sub->add_option("--set", overrides, "key=value override of a dotted config key")->allow_extra_args(false);
    }

    std::vector<std::string> tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(tail.begin(), tail.end());
    try {
        app.parse(tail);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return InvalidConfig;
    }
    setup_logging(log_level);

    const std::string command = app.get_subcommands().front()->get_name();
    Json config;
    try {
        config = load_config(preset, config_path, overrides);
    } catch (const ConfigError& e) {
        spdlog::error("{}", e.what());
        return InvalidConfig;
    }
    return run_command(command, config, preset, out);
}

}  // namespace vfde::cli
