#include "commands.hpp"

#include "config.hpp"

#include "vfde/asymptotics.hpp"
#include "vfde/barenblatt.hpp"
#include "vfde/criteria.hpp"
#include "vfde/profile.hpp"
#include "vfde/solver.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace vfde::cli {

namespace {

Json optional_number(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

void require_valid(const ModelParams& params, bool asymptotics)
{
    const auto violations = validate_params(params, asymptotics);
    if (violations.empty()) return;
    std::string msg = "invalid model parameters:";
    for (const auto& v : violations) msg += " [" + v.constraint + "] " + v.detail + ";";
    throw ConfigError(msg);
}

Json run_meta(const Json& config, const ModelParams& params)
{
    Json meta;
    meta["model"] = to_json(params);
    meta["config"] = config;
    return meta;
}

void artifact(CommandResult& result, const std::filesystem::path& out, const std::string& name,
              const CsvTable& table, const Json& meta)
{
    write_artifact(out, name, table, meta);
    result.outputs.push_back(name + ".csv");
    result.outputs.push_back(name + ".json");
}

void document(CommandResult& result, const std::filesystem::path& out, const std::string& name, const Json& doc)
{
    write_json(out / (name + ".json"), doc);
    result.outputs.push_back(name + ".json");
}

std::vector<double> geometric(double a, double b, int count)
{
    std::vector<double> v;
    for (int k = 0; k < count; ++k) v.push_back(a * std::pow(b / a, static_cast<double>(k) / (count - 1)));
    return v;
}

}  // namespace

CommandResult cmd_validate(const Json& config, const std::filesystem::path& out)
{
    const auto params = model_from(config);
    const bool asymptotics = get(config, "validate.asymptotics", true);
    CommandResult result;
    Json doc;
    doc["model"] = to_json(params);
    doc["asymptotics"] = asymptotics;
    doc["violations"] = Json::array();
    for (const auto& v : validate_params(params, asymptotics))
        doc["violations"].push_back({{"constraint", v.constraint}, {"detail", v.detail}});
    doc["valid"] = doc["violations"].empty();
    if (doc["valid"]) {
        const auto e = compute_exponents(params.q, params.m);
        doc["exponents"] = {{"alpha", e.alpha}, {"beta", e.beta}};
    }
    document(result, out, "validation", doc);
    result.summary["violations"] = doc["violations"].size();
    if (!doc["violations"].empty()) {
        for (const auto& v : doc["violations"])
            spdlog::error("violated {}: {}", v["constraint"].get<std::string>(), v["detail"].get<std::string>());
        result.exit_code = InvalidConfig;
    }
    return result;
}

CommandResult cmd_barenblatt(const Json& config, const std::filesystem::path& out)
{
    const auto params = model_from(config);
    require_valid(params, false);
    const BarenblattSpec spec{get(config, "barenblatt.k", 1.0), get(config, "barenblatt.T", 1.0)};
    const int n = params.n;
    const double m = params.m;
    const double r_max = get(config, "grid.r_max", 4.0);
    CommandResult result;

    Json constants;
    constants["k"] = spec.k;
    constants["T"] = spec.T;
    constants["cstar"] = cstar(n, m);
    constants["center_value_t0"] = barenblatt(0.0, 0.0, spec, n, m);
    constants["growth_limit"] =
        growth_exponent(n, m) > 1e-12 ? Json(barenblatt_growth_limit(spec, n, m)) : Json(nullptr);
    try {
        const auto cc = comparison_constants(params.A, params.q, n, m);
        constants["comparison"] = {{"A", params.A}, {"q", params.q}, {"T", cc.T}, {"k", cc.k}};
    } catch (const std::invalid_argument& e) {
        constants["comparison"] = nullptr;
        spdlog::warn("no comparison constants: {}", e.what());
    }
    document(result, out, "barenblatt_constants", constants);
    result.summary["cstar"] = constants["cstar"];
    result.summary["growth_limit"] = constants["growth_limit"];

    const int points = get(config, "barenblatt.points", 401);
    if (points < 2) throw ConfigError("barenblatt.points must be >= 2");
    const auto slices = get_list<double>(config, "barenblatt.slice_times", {0.0, 0.25, 0.5, 0.75});
    for (std::size_t s = 0; s < slices.size(); ++s) {
        CsvTable table{{"r", "u"}, {}};
        for (int j = 0; j < points; ++j) {
            const double r = r_max * j / (points - 1);
            table.rows.push_back({r, barenblatt(r, slices[s], spec, n, m)});
        }
        Json meta = run_meta(config, params);
        meta["t"] = slices[s];
        artifact(result, out, "slice_" + std::to_string(s), table, meta);
    }

    const auto resolutions = get_list<int>(config, "barenblatt.resolutions", {});
    if (!resolutions.empty()) {
        const double t_end = t_end_from(config);
        CsvTable table{{"cells", "dr", "linf_error", "relative_error"}, {}};
        const double peak = barenblatt(0.0, 0.0, spec, n, m);
        for (int N : resolutions) {
            if (N <= 0) throw ConfigError("barenblatt.resolutions must be positive");
            const auto grid = share(RadialGrid::uniform(n, static_cast<std::size_t>(N), r_max));
            SolverConfig cfg = solver_from(config);
            const double dr = r_max / N;
            if (has(config, "barenblatt.dt_per_dr")) cfg.dt_max = get(config, "barenblatt.dt_per_dr", 0.1) * dr;
            const auto exact_at = [&](double t) {
                std::vector<double> v;
                for (double c : grid->centers()) v.push_back(barenblatt(c, t, spec, n, m));
                return RadialField(grid, std::move(v));
            };
            const TimeVaryingBoundary bc{[=](double t) { return barenblatt(r_max, t, spec, n, m); }, "exact"};
            spdlog::info("barenblatt oracle run with {} cells", N);
            const auto traj = solve(exact_at(0.0), bc, t_end, cfg, n, m);
            double worst = 0.0;
            for (std::size_t k = 0; k < traj.size(); ++k) {
                const auto e = exact_at(traj.times[k]);
                for (std::size_t i = 0; i < e.size(); ++i) worst = std::max(worst, std::abs(traj.fields[k][i] - e[i]));
            }
            table.rows.push_back({static_cast<double>(N), dr, worst, worst / peak});
            result.diagnostics["cells_" + std::to_string(N)] = diagnostics_json(traj);
        }
        artifact(result, out, "error_vs_resolution", table, run_meta(config, params));
        const auto& first = table.rows.front();
        result.summary["relative_error"] = first[3];
        if (table.rows.size() > 1) result.summary["error_ratio"] = first[3] / table.rows[1][3];
    }
    return result;
}

CommandResult cmd_solve(const Json& config, const std::filesystem::path& out)
{
    const auto params = model_from(config);
    require_valid(params, false);
    const auto data = initial_from(config, params);
    const auto grid = grid_from(config, params.n);
    const auto bc = boundary_from(config, params, grid->r_max());
    const auto cfg = solver_from(config);
    const double t_end = t_end_from(config);
    std::optional<double> cap;
    if (has(config, "initial.cap")) cap = get(config, "initial.cap", 0.0);

    spdlog::info("solving on {} cells to t = {}", grid->size(), t_end);
    const auto traj = solve(sample_initial(data, grid, cap), bc, t_end, cfg, params.n, params.m);

    CommandResult result;
    result.diagnostics = diagnostics_json(traj);
    Json meta = run_meta(config, params);
    meta["diagnostics"] = result.diagnostics;
    artifact(result, out, "trajectory", trajectory_table(traj), meta);

    CsvTable mass{{"t", "mass", "max"}, {}};
    for (std::size_t k = 0; k < traj.size(); ++k)
        mass.rows.push_back({traj.times[k], traj.fields[k].mass(), traj.fields[k].max()});
    artifact(result, out, "mass", mass, run_meta(config, params));

    result.summary["final_time"] = traj.times.back();
    result.summary["final_mass"] = traj.fields.back().mass();
    result.summary["final_max"] = traj.fields.back().max();
    result.summary["extinction_time"] = optional_number(extinction_time(traj, cfg.extinction_threshold));
    result.summary["steps"] = traj.steps.size();
    result.summary["rejected_steps"] = traj.rejected_steps;
    if (traj.size() >= 4) {
        const double ab = aronson_benilan_violation(traj);
        result.summary["aronson_benilan"] = std::isfinite(ab) ? Json(ab) : Json(nullptr);
    }
    return result;
}

CommandResult cmd_profile(const Json& config, const std::filesystem::path& out)
{
    const auto params = model_from(config);
    require_valid(params, true);
    const double A = get(config, "profile.A", params.A);
    spdlog::info("shooting for the profile with A = {}", A);
    const auto profile = solve_profile(A, params, profile_config_from(config));
    const auto sandwich = sandwich_check(profile, A, params);

    CommandResult result;
    Json doc;
    doc["model"] = to_json(params);
    doc["A_target"] = A;
    doc["lambda"] = profile.lambda();
    doc["A_achieved"] = profile.A_achieved();
    doc["amplitude_spread"] = profile.amplitude_spread();
    doc["exponents"] = {{"alpha", profile.exponents().alpha}, {"beta", profile.exponents().beta}};
    doc["r_max"] = profile.r_max();
    doc["sandwich"] = to_json(sandwich);
    artifact(result, out, "profile", profile_table(profile, A), doc);
    document(result, out, "profile_summary", doc);

    result.summary["lambda"] = profile.lambda();
    result.summary["A_achieved"] = profile.A_achieved();
    result.summary["upper_margin"] = sandwich.upper_margin;
    result.summary["lower_margin"] = sandwich.lower_margin;
    return result;
}

CommandResult cmd_converge(const Json& config, const std::filesystem::path& out)
{
    Json layered = config;
    // defaults reproducing the far-field convergence setup
    if (!has(layered, "boundary.kind")) layered["boundary"]["kind"] = "self_similar";
    if (!has(layered, "grid.kind")) {
        layered["grid"]["kind"] = "uniform_then_stretched";
        if (!has(layered, "grid.r_max")) layered["grid"]["r_max"] = 1000.0;
    }
    const auto params = model_from(layered);
    require_valid(params, true);
    const auto data = initial_from(layered, params);
    const auto profile = solve_profile(params.A, params, profile_config_from(layered));

    ConvergenceSetup setup;
    setup.grid = grid_from(layered, params.n);
    setup.bc = boundary_from(layered, params, setup.grid->r_max());
    setup.solver = solver_from(layered);
    setup.target_cells = static_cast<std::size_t>(get(layered, "converge.target_cells", 400));
    const auto times = get_list<double>(layered, "converge.times", geometric(0.1, std::sqrt(10.0), 9));
    const double R = get(layered, "converge.R", 2.0);

    spdlog::info("convergence run to t = {} on {} cells", times.back(), setup.grid->size());
    const auto report = convergence_study(data, params, times, R, profile, setup);

    CommandResult result;
    Json meta = run_meta(layered, params);
    meta["report"] = to_json(report);
    artifact(result, out, "convergence", convergence_table(report), meta);
    result.summary = to_json(report);
    result.summary["final_distance"] = report.distances.back();
    return result;
}

CommandResult cmd_criteria(const Json& config, const std::filesystem::path& out)
{
    const auto params = model_from(config);
    require_valid(params, false);
    const auto data = initial_from(config, params);
    const auto radii = get_list<double>(config, "criteria.radii", geometric(1.0, 1e4, 17));
    std::optional<double> T, C1;
    if (has(config, "criteria.T")) T = get(config, "criteria.T", 1.0);
    if (has(config, "criteria.C1")) C1 = get(config, "criteria.C1", 1.0);
    const auto report = growth_criterion_report(data, params, radii, T, C1);

    CommandResult result;
    result.summary = to_json(report);
    result.summary["growth_at_largest_radius"] = report.averages.back();
    if (has(config, "criteria.C2")) {
        const double R = get(config, "criteria.extinction_R", 1.0);
        result.summary["extinction_lower_bound"] =
            extinction_lower_bound(data, R, params, get(config, "criteria.C2", 1.0));
        result.summary["extinction_R"] = R;
    }
    Json meta = run_meta(config, params);
    meta["report"] = result.summary;
    artifact(result, out, "growth", growth_table(report), meta);
    return result;
}

CommandResult cmd_sweep(const Json& config, const std::string& preset, const std::filesystem::path& out)
{
    const auto command = get<std::string>(config, "sweep.command", "solve");
    if (command == "sweep") throw ConfigError("sweep.command cannot be sweep");
    const auto key = get<std::string>(config, "sweep.key", "");
    if (key.empty()) throw ConfigError("sweep.key is required");
    const auto values = get_list<double>(config, "sweep.values", {});
    if (values.empty()) throw ConfigError("sweep.values must be a non-empty array of numbers");
    int jobs = get(config, "sweep.jobs", static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    jobs = std::clamp(jobs, 1, static_cast<int>(values.size()));

    std::vector<Json> configs;
    for (double v : values) {
        Json c = config;
        c.erase("sweep");
        set_path(c, key, v);
        check_schema(c);
        configs.push_back(std::move(c));
    }

    std::vector<int> status(values.size(), 0);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i; (i = next++) < values.size();)
            status[i] = run_command(command, configs[i], preset, out / std::to_string(i));
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    CsvTable table{{"value", "status"}, {}};
    std::vector<Json> summaries;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto path = out / std::to_string(i) / "manifest.json";
        Json s = std::filesystem::exists(path) ? read_json(path)["summary"] : Json::object();
        for (const auto& [k, v] : s.items())
            if ((v.is_number() || v.is_null()) &&
                std::find(table.columns.begin(), table.columns.end(), k) == table.columns.end())
                table.columns.push_back(k);
        summaries.push_back(std::move(s));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::vector<double> row{values[i], static_cast<double>(status[i])};
        for (std::size_t j = 2; j < table.columns.size(); ++j) {
            const auto& s = summaries[i];
            const auto it = s.find(table.columns[j]);
            row.push_back(it != s.end() && it->is_number() ? it->get<double>() : nan);
        }
        table.rows.push_back(std::move(row));
    }

    CommandResult result;
    Json meta;
    meta["command"] = command;
    meta["key"] = key;
    meta["runs"] = values.size();
    artifact(result, out, "sweep", table, meta);
    const auto failed = std::count_if(status.begin(), status.end(), [](int s) { return s != Ok; });
    result.summary["runs"] = values.size();
    result.summary["failed"] = failed;
    if (failed) spdlog::warn("{} of {} sweep runs failed", failed, values.size());
    return result;
}

}  // namespace vfde::cli
