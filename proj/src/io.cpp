#include "vfde/io.hpp"

#include "vfde/barenblatt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* scheme_name(TimeScheme s)
{
    return s == TimeScheme::Bdf2 ? "bdf2" : "backward_euler";
}

}  // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
    auto out = open_out(path);
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        out << (j ? "," : "") << table.columns[j];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("write_csv: row width does not match the header");
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
        out << '\n';
    }
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty CSV");
    std::stringstream header(line);
    for (std::string cell; std::getline(header, cell, ',');) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            std::size_t used = 0;
            row.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::runtime_error(path.string() + ": bad number " + cell);
        }
        if (row.size() != table.columns.size())
            throw std::runtime_error(path.string() + ": ragged row");
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_json(const std::filesystem::path& path, const Json& doc)
{
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return Json::parse(in);
}

void write_artifact(const std::filesystem::path& dir, const std::string& name,
                    const CsvTable& table, const Json& meta)
{
    write_csv(dir / (name + ".csv"), table);
    Json side;
    side["csv"] = name + ".csv";
    side["columns"] = table.columns;
    side["rows"] = table.rows.size();
    side["meta"] = meta;
    write_json(dir / (name + ".json"), side);
}

Json to_json(const ModelParams& params)
{
    Json j;
    j["n"] = params.n;
    j["m"] = params.m;
    j["p"] = params.p;
    j["q"] = params.q;
    j["A"] = params.A;
    return j;
}

Json to_json(const SolverConfig& cfg)
{
    Json j;
    j["dt_init"] = cfg.dt_init;
    j["dt_max"] = cfg.dt_max;
    j["dt_growth"] = cfg.dt_growth;
    j["newton_tol"] = cfg.newton_tol;
    j["newton_max"] = cfg.newton_max;
    j["eps_floor"] = cfg.eps_floor;
    j["extinction_threshold"] = cfg.extinction_threshold;
    j["scheme"] = scheme_name(cfg.scheme);
    j["sample_times"] = cfg.sample_times;
    return j;
}

Json to_json(const SandwichReport& report)
{
    Json j;
    j["upper_ok"] = report.upper_ok;
    j["upper_margin"] = report.upper_margin;
    j["lower_ok"] = report.lower_ok;
    j["lower_margin"] = report.lower_margin;
    j["lower_time"] = report.lower_time;
    j["lower_samples"] = report.lower_samples;
    return j;
}

Json to_json(const ConvergenceReport& report)
{
    Json j;
    j["R"] = report.R;
    j["lambda"] = report.lambda;
    j["A"] = report.A;
    j["tail_start_time"] = report.times.empty() ? 0.0 : report.times[report.tail_start];
    j["tail_ratio"] = report.tail_ratio;
    j["tail_monotone"] = report.tail_monotone;
    return j;
}

Json to_json(const GrowthReport& report)
{
    Json j;
    j["trend"] = to_string(report.trend);
    j["tail_slope"] = report.tail_slope;
    j["liminf_estimate"] = report.liminf_estimate;
    j["threshold"] = report.threshold ? Json(*report.threshold) : Json(nullptr);
    j["meets_threshold"] = report.meets_threshold ? Json(*report.meets_threshold) : Json(nullptr);
    return j;
}

Json to_json(const L1Report& report)
{
    Json j;
    j["D0"] = report.D0;
    j["slope"] = report.slope;
    j["intercept"] = report.intercept;
    j["residual"] = report.residual;
    return j;
}

Json diagnostics_json(const Trajectory& traj)
{
    Json j;
    j["steps"] = traj.steps.size();
    j["rejected_steps"] = traj.rejected_steps;
    int iterations = 0;
    double residual = 0.0, dt_min = 0.0, dt_max = 0.0;
    for (std::size_t k = 0; k < traj.steps.size(); ++k) {
        const auto& s = traj.steps[k];
        iterations = std::max(iterations, s.newton_iterations);
        residual = std::max(residual, s.residual);
        dt_min = k ? std::min(dt_min, s.dt) : s.dt;
        dt_max = std::max(dt_max, s.dt);
    }
    j["max_newton_iterations"] = iterations;
    j["max_newton_residual"] = residual;
    j["dt_min"] = dt_min;
    j["dt_max"] = dt_max;
    j["samples"] = traj.size();
    j["cells"] = traj.size() ? traj.grid().size() : 0;
    j["boundary"] = describe(traj.bc);
    return j;
}

CsvTable trajectory_table(const Trajectory& traj)
{
    CsvTable table{{"t", "r", "u"}, {}};
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto c = traj.fields[k].grid().centers();
        for (std::size_t i = 0; i < c.size(); ++i)
            table.rows.push_back({traj.times[k], c[i], traj.fields[k][i]});
    }
    return table;
}

CsvTable profile_table(const Profile& profile, double A)
{
    const auto& p = profile.params();
    const auto& e = profile.exponents();
    const auto cc = comparison_constants(A, p.q, p.n, p.m);
    const double t = cc.T > 1.0 ? 1.0 : cc.T / 2.0;
    CsvTable table{{"r", "v", "rq_v", "upper", "lower"}, {}};
    const auto& r = profile.radii();
    const auto& v = profile.values();
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double upper = r[j] > 0.0 ? A * std::pow(r[j], -p.q) : std::numeric_limits<double>::infinity();
        // ψ(x,t) >= B(x,t) read in the profile variable ρ = t^{-β} x
        const double lower =
            std::pow(t, e.alpha) * barenblatt(std::pow(t, e.beta) * r[j], t, {cc.k, cc.T}, p.n, p.m);
        table.rows.push_back({r[j], v[j], std::pow(r[j], p.q) * v[j], upper, lower});
    }
    return table;
}

CsvTable convergence_table(const ConvergenceReport& report)
{
    CsvTable table{{"t", "d"}, {}};
    for (std::size_t k = 0; k < report.times.size(); ++k)
        table.rows.push_back({report.times[k], report.distances[k]});
    return table;
}

CsvTable growth_table(const GrowthReport& report)
{
    CsvTable table{{"R", "G"}, {}};
    for (std::size_t k = 0; k < report.radii.size(); ++k)
        table.rows.push_back({report.radii[k], report.averages[k]});
    return table;
}

CsvTable l1_table(const L1Report& report)
{
    CsvTable table{{"t", "D"}, {}};
    for (std::size_t k = 0; k < report.times.size(); ++k) table.rows.push_back({report.times[k], report.D[k]});
    return table;
}

}  // namespace vfde
