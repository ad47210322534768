#include "config.hpp"

#include "vfde/asymptotics.hpp"
#include "vfde/barenblatt.hpp"

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#ifndef VFDE_PRESET_DIR
#define VFDE_PRESET_DIR "presets"
#endif

namespace vfde::cli {

namespace {

Json to_json(const toml::node& node)
{
    if (const auto* t = node.as_table()) {
        Json j = Json::object();
        for (const auto& [k, v] : *t) j[std::string(k.str())] = to_json(v);
        return j;
    }
    if (const auto* a = node.as_array()) {
        Json j = Json::array();
        for (const auto& v : *a) j.push_back(to_json(v));
        return j;
    }
    if (const auto* v = node.as_string()) return v->get();
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    std::ostringstream os;
    os << "unsupported TOML value at " << node.source();
    throw ConfigError(os.str());
}

std::vector<std::string> split_path(const std::string& path)
{
    std::vector<std::string> parts;
    std::stringstream ss(path);
    for (std::string part; std::getline(ss, part, '.');) {
        if (part.empty()) throw ConfigError("empty component in key '" + path + "'");
        parts.push_back(part);
    }
    if (parts.empty()) throw ConfigError("empty key");
    return parts;
}

const Json* find(const Json& config, const std::string& path)
{
    const Json* node = &config;
    for (const auto& part : split_path(path)) {
        if (!node->is_object()) return nullptr;
        const auto it = node->find(part);
        if (it == node->end()) return nullptr;
        node = &*it;
    }
    return node;
}

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> s{
        {"model", {"n", "m", "p", "q", "A", "flow"}},
        {"initial", {"kind", "A", "q", "k", "T", "t0", "scale", "bump_mass", "bump_width", "bump_center", "cap"}},
        {"grid", {"kind", "cells", "r_max", "ratio", "h", "r_uniform"}},
        {"boundary", {"kind", "g", "M"}},
        {"solver",
         {"dt_init", "dt_max", "dt_growth", "newton_tol", "newton_max", "eps_floor", "extinction_threshold",
          "scheme", "sample_times", "sample_every", "t_end"}},
        {"validate", {"asymptotics"}},
        {"barenblatt", {"k", "T", "slice_times", "points", "resolutions", "dt_per_dr", "t_end"}},
        {"profile", {"A", "r_max", "tol", "samples", "amplitude_tol", "max_doublings", "max_bisections"}},
        {"converge", {"times", "R", "target_cells"}},
        {"criteria", {"radii", "T", "C1", "C2", "extinction_R"}},
        {"sweep", {"command", "key", "values", "jobs"}},
        {"output", {"dir"}},
    };
    return s;
}

}  // namespace

std::string toml_version()
{
    return std::to_string(TOML_LIB_MAJOR) + "." + std::to_string(TOML_LIB_MINOR) + "." +
           std::to_string(TOML_LIB_PATCH);
}

std::filesystem::path preset_dir()
{
    if (const char* env = std::getenv("VFDE_PRESET_DIR"); env && *env) return env;
    return VFDE_PRESET_DIR;
}

Json parse_toml_file(const std::filesystem::path& path)
{
    if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
    try {
        return to_json(toml::parse_file(path.string()));
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << path.string() << ": " << e.description() << " at " << e.source().begin;
        throw ConfigError(os.str());
    }
}

void apply_override(Json& config, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    Json value;
    try {
        value = to_json(*toml::parse("v = " + text)["v"].node());
    } catch (const toml::parse_error&) {
        value = text;
    }
    set_path(config, key, std::move(value));
}

void set_path(Json& config, const std::string& path, Json value)
{
    Json* node = &config;
    const auto parts = split_path(path);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        Json& next = (*node)[parts[i]];
        if (next.is_null()) next = Json::object();
        if (!next.is_object()) throw ConfigError("'" + path + "' descends into a non-table value");
        node = &next;
    }
    (*node)[parts.back()] = std::move(value);
}

void merge(Json& base, const Json& overlay)
{
    for (const auto& [k, v] : overlay.items()) {
        if (v.is_object() && base.contains(k) && base[k].is_object())
            merge(base[k], v);
        else
            base[k] = v;
    }
}

void check_schema(const Json& config)
{
    if (!config.is_object()) throw ConfigError("configuration must be a table");
    for (const auto& [section, body] : config.items()) {
        const auto it = schema().find(section);
        if (it == schema().end()) throw ConfigError("unknown config section [" + section + "]");
        if (!body.is_object()) throw ConfigError("[" + section + "] must be a table");
        for (const auto& [key, value] : body.items()) {
            if (!it->second.count(key)) throw ConfigError("unknown config key " + section + "." + key);
            if (value.is_object()) throw ConfigError(section + "." + key + " must not be a table");
        }
    }
}

Json load_config(const std::string& preset, const std::string& config_path,
                 const std::vector<std::string>& overrides)
{
    Json config = Json::object();
    if (!preset.empty()) {
        const auto path = preset_dir() / (preset + ".toml");
        if (!std::filesystem::exists(path)) throw ConfigError("unknown preset '" + preset + "' (looked in " + preset_dir().string() + ")");
        merge(config, parse_toml_file(path));
    }
    if (!config_path.empty()) merge(config, parse_toml_file(config_path));
    for (const auto& o : overrides) apply_override(config, o);
    check_schema(config);
    return config;
}

bool has(const Json& config, const std::string& path) { return find(config, path) != nullptr; }

template <class T>
T get(const Json& config, const std::string& path, T fallback)
{
    const Json* node = find(config, path);
    if (!node) return fallback;
    try {
        if constexpr (std::is_same_v<T, double>) {
            if (!node->is_number()) throw ConfigError("");
        } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            if (node->is_number_float()) {
                const double v = node->get<double>();
                if (v != std::floor(v)) throw ConfigError("");
                return static_cast<T>(v);
            }
            if (!node->is_number_integer()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!node->is_boolean()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!node->is_string()) throw ConfigError("");
        }
        return node->get<T>();
    } catch (const std::exception&) {
        throw ConfigError("config value " + path + " has the wrong type (" + node->dump() + ")");
    }
}

template <class T>
std::vector<T> get_list(const Json& config, const std::string& path, std::vector<T> fallback)
{
    const Json* node = find(config, path);
    if (!node) return fallback;
    if (!node->is_array()) throw ConfigError("config value " + path + " must be an array");
    std::vector<T> out;
    for (const auto& v : *node) {
        if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) throw ConfigError("config value " + path + " must hold numbers");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ConfigError("config value " + path + " must hold integers");
        }
        out.push_back(v.get<T>());
    }
    return out;
}

template double get<double>(const Json&, const std::string&, double);
template int get<int>(const Json&, const std::string&, int);
template bool get<bool>(const Json&, const std::string&, bool);
template std::string get<std::string>(const Json&, const std::string&, std::string);
template std::vector<double> get_list<double>(const Json&, const std::string&, std::vector<double>);
template std::vector<int> get_list<int>(const Json&, const std::string&, std::vector<int>);

ModelParams model_from(const Json& config)
{
    ModelParams p;
    p.n = get(config, "model.n", p.n);
    p.m = get(config, "model.m", p.m);
    p.p = get(config, "model.p", p.p);
    p.q = get(config, "model.q", p.q);
    p.A = get(config, "model.A", p.A);
    const auto flow = get<std::string>(config, "model.flow", "");
    if (flow == "yamabe") {
        // the Yamabe flow is the case m = (n-2)/(n+2)
        p.m = (p.n - 2.0) / (p.n + 2.0);
    } else if (!flow.empty()) {
        throw ConfigError("unknown model.flow '" + flow + "' (known: yamabe)");
    }
    return p;
}

InitialData initial_from(const Json& config, const ModelParams& params)
{
    const auto kind = get<std::string>(config, "initial.kind", "power_law");
    const double A = get(config, "initial.A", params.A);
    const double q = get(config, "initial.q", params.q);
    if (kind == "power_law") return {PowerLaw{A, q}};
    if (kind == "barenblatt") {
        const BarenblattSpec spec{get(config, "initial.k", 1.0), get(config, "initial.T", 1.0)};
        return {BarenblattSlice{spec, get(config, "initial.t0", 0.0), params.m, get(config, "initial.scale", 1.0)}};
    }
    if (kind == "power_law_bump") {
        const auto bump = gaussian_bump(get(config, "initial.bump_mass", 1.0), get(config, "initial.bump_width", 0.25),
                                        params.n, get(config, "initial.bump_center", 0.0));
        return make_composite({PowerLaw{A, q}}, bump);
    }
    if (kind == "zero") return {PowerLaw{0.0, 0.0}};
    throw ConfigError("unknown initial.kind '" + kind + "' (known: power_law, barenblatt, power_law_bump, zero)");
}

GridPtr grid_from(const Json& config, int n)
{
    const auto kind = get<std::string>(config, "grid.kind", "uniform");
    const double r_max = get(config, "grid.r_max", 4.0);
    const int cells = get(config, "grid.cells", 400);
    if (cells <= 0) throw ConfigError("grid.cells must be positive");
    if (kind == "uniform") return share(RadialGrid::uniform(n, static_cast<std::size_t>(cells), r_max));
    if (kind == "stretched")
        return share(RadialGrid::stretched(n, static_cast<std::size_t>(cells), r_max, get(config, "grid.ratio", 1.02)));
    if (kind == "uniform_then_stretched")
        return share(RadialGrid::uniform_then_stretched(n, get(config, "grid.h", 0.01), get(config, "grid.r_uniform", 4.0),
                                                        r_max, get(config, "grid.ratio", 1.02)));
    throw ConfigError("unknown grid.kind '" + kind + "' (known: uniform, stretched, uniform_then_stretched)");
}

SolverConfig solver_from(const Json& config)
{
    SolverConfig cfg;
    cfg.dt_init = get(config, "solver.dt_init", cfg.dt_init);
    cfg.dt_max = get(config, "solver.dt_max", cfg.dt_max);
    cfg.dt_growth = get(config, "solver.dt_growth", cfg.dt_growth);
    cfg.newton_tol = get(config, "solver.newton_tol", cfg.newton_tol);
    cfg.newton_max = get(config, "solver.newton_max", cfg.newton_max);
    cfg.eps_floor = get(config, "solver.eps_floor", cfg.eps_floor);
    cfg.extinction_threshold = get(config, "solver.extinction_threshold", cfg.extinction_threshold);
    const auto scheme = get<std::string>(config, "solver.scheme", "backward_euler");
    if (scheme == "bdf2")
        cfg.scheme = TimeScheme::Bdf2;
    else if (scheme != "backward_euler")
        throw ConfigError("unknown solver.scheme '" + scheme + "' (known: backward_euler, bdf2)");
    cfg.sample_times = get_list<double>(config, "solver.sample_times", {});
    if (has(config, "solver.sample_every")) {
        const double every = get(config, "solver.sample_every", 0.0);
        if (!(every > 0.0)) throw ConfigError("solver.sample_every must be positive");
        const double t_end = t_end_from(config);
        for (int k = 1; k * every < t_end * (1 - 1e-12); ++k) cfg.sample_times.push_back(k * every);
    }
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

double t_end_from(const Json& config)
{
    const double t = get(config, "solver.t_end", 1.0);
    if (!(t > 0.0)) throw ConfigError("solver.t_end must be positive");
    return t;
}

ProfileConfig profile_config_from(const Json& config)
{
    ProfileConfig cfg;
    cfg.r_max = get(config, "profile.r_max", cfg.r_max);
    cfg.tol = get(config, "profile.tol", cfg.tol);
    const int samples = get(config, "profile.samples", static_cast<int>(cfg.samples));
    if (samples < 16) throw ConfigError("profile.samples must be >= 16");
    cfg.samples = static_cast<std::size_t>(samples);
    cfg.amplitude_tol = get(config, "profile.amplitude_tol", cfg.amplitude_tol);
    cfg.max_doublings = get(config, "profile.max_doublings", cfg.max_doublings);
    cfg.max_bisections = get(config, "profile.max_bisections", cfg.max_bisections);
    return cfg;
}

BoundaryCondition boundary_from(const Json& config, const ModelParams& params, double r_max)
{
    const auto kind = get<std::string>(config, "boundary.kind", "zero");
    BoundaryCondition bc;
    if (kind == "zero") {
        bc = ZeroBoundary{};
    } else if (kind == "constant") {
        bc = ConstantBoundary{get(config, "boundary.g", 0.0)};
    } else if (kind == "large") {
        bc = LargeBoundary{get(config, "boundary.M", 1e3)};
    } else if (kind == "power_law") {
        // the far-field data frozen at the outer radius
        bc = ConstantBoundary{get(config, "initial.A", params.A) * std::pow(r_max, -get(config, "initial.q", params.q))};
    } else if (kind == "exact") {
        const BarenblattSpec spec{get(config, "initial.k", 1.0), get(config, "initial.T", 1.0)};
        const double t0 = get(config, "initial.t0", 0.0);
        const double scale = get(config, "initial.scale", 1.0);
        const double m = params.m;
        bc = TimeVaryingBoundary{
            [=](double t) { return scale * barenblatt(r_max, t0 + t, spec, params.n, m); }, "exact"};
    } else if (kind == "self_similar") {
        const auto profile = solve_profile(params.A, params, profile_config_from(config));
        bc = self_similar_boundary(profile, r_max);
    } else {
        throw ConfigError("unknown boundary.kind '" + kind +
                          "' (known: zero, constant, large, power_law, exact, self_similar)");
    }
    try {
        validate(bc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return bc;
}

}  // namespace vfde::cli
