#pragma once

#include "vfde/asymptotics.hpp"
#include "vfde/criteria.hpp"
#include "vfde/profile.hpp"
#include "vfde/trajectory.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace vfde {

using Json = nlohmann::ordered_json;

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Header row then one line per row, values printed with %.17g.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Reads a file produced by write_csv; throws std::runtime_error on malformed input.
CsvTable read_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const Json& doc);
Json read_json(const std::filesystem::path& path);

/// Writes <dir>/<name>.csv and the sidecar <dir>/<name>.json describing it.
void write_artifact(const std::filesystem::path& dir, const std::string& name,
                    const CsvTable& table, const Json& meta);

Json to_json(const ModelParams& params);
Json to_json(const SolverConfig& cfg);
Json to_json(const SandwichReport& report);
Json to_json(const ConvergenceReport& report);
Json to_json(const GrowthReport& report);
Json to_json(const L1Report& report);

/// Step statistics: counts, rejected steps, worst Newton residual and iteration count.
Json diagnostics_json(const Trajectory& traj);

/// Long format (t, r, u) over every sample and cell centre.
CsvTable trajectory_table(const Trajectory& traj);

/// (r, v, rq_v, upper, lower): profile samples with the two comparison curves in
/// profile coordinates; `lower` is 0 where the Barenblatt curve has vanished.
CsvTable profile_table(const Profile& profile, double A);

CsvTable convergence_table(const ConvergenceReport& report);
CsvTable growth_table(const GrowthReport& report);
CsvTable l1_table(const L1Report& report);

}  // namespace vfde
