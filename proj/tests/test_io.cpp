#include "vfde/io.hpp"
#include "vfde/solver.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace vfde;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("vfde_io_" + std::to_string(std::random_device{}()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST_F(TempDir, CsvRoundTripIsExact)
{
    CsvTable t{{"t", "d"}, {{0.1, 1.0 / 3.0}, {1e-300, -2.5e17}, {3.0, 0.0}}};
    write_csv(dir_ / "a.csv", t);
    const auto back = read_csv(dir_ / "a.csv");
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.rows, t.rows);
}

TEST_F(TempDir, CsvRejectsMalformedInput)
{
    EXPECT_THROW(write_csv(dir_ / "bad.csv", CsvTable{{"a", "b"}, {{1.0}}}), std::invalid_argument);
    std::ofstream(dir_ / "ragged.csv") << "a,b\n1,2\n3\n";
    EXPECT_THROW(read_csv(dir_ / "ragged.csv"), std::runtime_error);
    std::ofstream(dir_ / "text.csv") << "a\n1x\n";
    EXPECT_THROW(read_csv(dir_ / "text.csv"), std::runtime_error);
    std::ofstream(dir_ / "empty.csv");
    EXPECT_THROW(read_csv(dir_ / "empty.csv"), std::runtime_error);
    EXPECT_THROW(read_csv(dir_ / "missing.csv"), std::runtime_error);
}

TEST_F(TempDir, ArtifactHasSidecar)
{
    write_artifact(dir_ / "sub", "growth", CsvTable{{"R", "G"}, {{1.0, 2.0}}}, Json{{"trend", "bounded"}});
    ASSERT_TRUE(fs::exists(dir_ / "sub" / "growth.csv"));
    const auto side = read_json(dir_ / "sub" / "growth.json");
    EXPECT_EQ(side["csv"], "growth.csv");
    EXPECT_EQ(side["columns"], Json::parse(R"(["R","G"])"));
    EXPECT_EQ(side["rows"], 1);
    EXPECT_EQ(side["meta"]["trend"], "bounded");
}

TEST(Json, StableKeyOrder)
{
    const auto j = to_json(ModelParams{});
    EXPECT_EQ(j.dump(), R"({"n":3,"m":0.2,"p":2.0,"q":1.0,"A":1.0})");
    SolverConfig cfg;
    cfg.scheme = TimeScheme::Bdf2;
    EXPECT_EQ(to_json(cfg)["scheme"], "bdf2");
    EXPECT_EQ(to_json(cfg).begin().key(), "dt_init");
}

TEST(Tables, TrajectoryAndDiagnostics)
{
    const auto g = share(RadialGrid::uniform(3, 5, 1.0));
    SolverConfig cfg;
    cfg.sample_times = {0.05};
    const auto traj = solve(RadialField(g, 1.0), ConstantBoundary{0.5}, 0.1, cfg, 3, 0.2);
    const auto t = trajectory_table(traj);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"t", "r", "u"}));
    EXPECT_EQ(t.rows.size(), 15u);
    const auto d = diagnostics_json(traj);
    EXPECT_EQ(d["samples"], 3);
    EXPECT_EQ(d["cells"], 5);
    EXPECT_EQ(d["boundary"], describe(traj.bc));
    EXPECT_GT(d["steps"].get<int>(), 0);
}

TEST(Tables, ReportSchemas)
{
    ConvergenceReport c;
    c.times = {1, 2};
    c.distances = {0.1, 0.05};
    EXPECT_EQ(convergence_table(c).columns, (std::vector<std::string>{"t", "d"}));
    EXPECT_EQ(convergence_table(c).rows.size(), 2u);

    GrowthReport gr;
    gr.radii = {1, 2, 3};
    gr.averages = {4, 5, 6};
    EXPECT_EQ(growth_table(gr).columns, (std::vector<std::string>{"R", "G"}));
    EXPECT_TRUE(to_json(gr)["threshold"].is_null());

    L1Report l;
    l.times = {0.1};
    l.D = {0.2};
    EXPECT_EQ(l1_table(l).rows.front(), (std::vector<double>{0.1, 0.2}));
}

TEST(Tables, ProfileWithBounds)
{
    const auto p = solve_profile(1.0, ModelParams{});
    const auto t = profile_table(p, 1.0);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"r", "v", "rq_v", "upper", "lower"}));
    ASSERT_EQ(t.rows.size(), p.radii().size());
    for (const auto& row : t.rows) {
        if (row[0] <= 0.0) continue;
        EXPECT_LE(row[1], row[3] * (1 + 1e-3));
        EXPECT_GE(row[1], row[4]);
        EXPECT_NEAR(row[2], row[0] * row[1], 1e-14 * row[2]);
    }
    const auto s = to_json(sandwich_check(p, 1.0, ModelParams{}));
    EXPECT_TRUE(s["upper_ok"].get<bool>());
    EXPECT_TRUE(s["lower_ok"].get<bool>());
}
