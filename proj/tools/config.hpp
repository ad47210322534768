#pragma once

#include "vfde/initial_data.hpp"
#include "vfde/io.hpp"
#include "vfde/model.hpp"
#include "vfde/trajectory.hpp"
#include "vfde/profile.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfde::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Version string of the TOML parser.
std::string toml_version();

/// Directory searched for <name>.toml; VFDE_PRESET_DIR overrides the built-in location.
std::filesystem::path preset_dir();

/// TOML document as JSON with the table order preserved.
Json parse_toml_file(const std::filesystem::path& path);

/// `key=value` with a dotted key; the value is read as a TOML value, falling back to a string.
void apply_override(Json& config, const std::string& assignment);

/// Assigns `value` at a dotted path, creating tables on the way.
void set_path(Json& config, const std::string& path, Json value);

/// Recursive merge; scalars and arrays in `overlay` replace those in `base`.
void merge(Json& base, const Json& overlay);

/// Preset, then config file, then overrides. Rejects keys outside the schema.
Json load_config(const std::string& preset, const std::string& config_path,
                 const std::vector<std::string>& overrides);

void check_schema(const Json& config);

/// Typed read of a dotted path with a default. Integers may be written as
/// integral floats so that numeric sweeps can drive integer keys.
template <class T>
T get(const Json& config, const std::string& path, T fallback);

template <class T>
std::vector<T> get_list(const Json& config, const std::string& path, std::vector<T> fallback);

bool has(const Json& config, const std::string& path);

ModelParams model_from(const Json& config);
InitialData initial_from(const Json& config, const ModelParams& params);
GridPtr grid_from(const Json& config, int n);
SolverConfig solver_from(const Json& config);
double t_end_from(const Json& config);

/// [profile] section as solver settings.
ProfileConfig profile_config_from(const Json& config);

/// Boundary for a run on `grid`; `self_similar` solves the profile for the model's A.
BoundaryCondition boundary_from(const Json& config, const ModelParams& params, double r_max);

}  // namespace vfde::cli
