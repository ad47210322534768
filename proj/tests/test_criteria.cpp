#include "vfde/barenblatt.hpp"
#include "vfde/criteria.hpp"
#include "vfde/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace vfde;

namespace {

const ModelParams canonical{};
const BarenblattSpec unit{1.0, 1.0};

// η = (R² - r²)², time independent
TestFunction quartic_bump(double R)
{
    TestFunction eta;
    eta.value = [R](double r, double) { return std::pow(R * R - r * r, 2); };
    // Δ in n = 3 of (R² - r²)² is 20 r² - 12 R²
    eta.laplacian = [R](double r, double) { return 20 * r * r - 12 * R * R; };
    eta.dt = [](double, double) { return 0.0; };
    eta.normal = [](double, double) { return 0.0; };
    return eta;
}

// η = (R² - r²)(1 + t): nonzero normal derivative and time dependence
TestFunction quadratic_ramp(double R)
{
    TestFunction eta;
    eta.value = [R](double r, double t) { return (R * R - r * r) * (1 + t); };
    eta.laplacian = [](double, double t) { return -6.0 * (1 + t); };
    eta.dt = [R](double r, double) { return R * R - r * r; };
    eta.normal = [R](double, double t) { return -2.0 * R * (1 + t); };
    return eta;
}

// the closed-form Barenblatt trajectory sampled on N cells and K + 1 equispaced times
Trajectory exact_trajectory(std::size_t N, std::size_t K, double R, double t_end)
{
    const auto g = share(RadialGrid::uniform(3, N, R));
    Trajectory traj;
    traj.m = 0.2;
    traj.bc = TimeVaryingBoundary{[R](double t) { return barenblatt(R, t, unit, 3, 0.2); }, "exact"};
    for (std::size_t k = 0; k <= K; ++k) {
        const double t = t_end * static_cast<double>(k) / K;
        std::vector<double> u;
        for (double r : g->centers()) u.push_back(barenblatt(r, t, unit, 3, 0.2));
        traj.times.push_back(t);
        traj.fields.emplace_back(g, std::move(u));
    }
    return traj;
}

}  // namespace

TEST(GrowthAverage, PowerLawClosedForm)
{
    EXPECT_NEAR(growth_average({PowerLaw{1.0, 1.0}}, 1.0, canonical), 2 * std::numbers::pi, 1e-13);
    // G ∝ R^{2/(1-m) - q} = R^{1.5}
    const double slope = std::log10(growth_average({PowerLaw{}}, 100.0, canonical) /
                                    growth_average({PowerLaw{}}, 10.0, canonical));
    EXPECT_NEAR(slope, 1.5, 1e-3);
    EXPECT_THROW(growth_average({PowerLaw{}}, 0.0, canonical), std::invalid_argument);
}

TEST(GrowthAverage, BarenblattQuadratureMatchesSimpsonOracle)
{
    // frozen from an adaptive Simpson evaluation independent of the library quadrature
    const double G = growth_average({BarenblattSlice{unit, 0.0, 0.2, 1.0}}, 1e4, canonical);
    EXPECT_NEAR(G, 59.0599, 1e-3);
}

TEST(GrowthAverage, ExtrapolatesToTheBarenblattLimit)
{
    // B(r,0) r² = 2^{1.25} r^{-1/2}(1 + O(r^{-2})), so G(R) = L + c R^{-1/2} + O(R^{-2})
    const InitialData data{BarenblattSlice{unit, 0.0, 0.2, 1.0}};
    const double R = 1e3;
    const double L = 2 * growth_average(data, 4 * R, canonical) - growth_average(data, R, canonical);
    EXPECT_NEAR(L, barenblatt_growth_limit(unit, 3, 0.2), 1e-6 * L);
}

TEST(GrowthAverage, Linearity)
{
    const InitialData base{BarenblattSlice{unit, 0.0, 0.2, 1.0}};
    const auto bump = gaussian_bump(1.0, 0.3, 3, 1.0);
    const auto sum = make_composite(base, bump);
    // past the bump's support the composite adds exactly its mass
    const double R = 30.0;
    const double expected =
        growth_average(base, R, canonical) + bump.mass(3) / std::pow(R, growth_exponent(3, 0.2));
    EXPECT_NEAR(growth_average(sum, R, canonical), expected, 1e-10 * expected);
    // symbolic forms are exactly additive
    const auto two = make_composite({PowerLaw{}}, Table{{0.0, 1.0}, {0.0, 0.0}});
    EXPECT_DOUBLE_EQ(growth_average(two, 3.0, canonical), growth_average({PowerLaw{}}, 3.0, canonical));
}

TEST(GrowthAverage, CriticalExponentIsThePlainIntegral)
{
    ModelParams p = canonical;
    p.m = 1.0 / 3.0;
    EXPECT_NEAR(growth_average({PowerLaw{1.0, 1.0}}, 2.0, p), 2 * std::numbers::pi * 4.0, 1e-9);
}

TEST(GrowthReport, Classification)
{
    const std::vector<double> radii{10, 30, 100, 300, 1000, 3000, 10000};
    EXPECT_EQ(growth_criterion_report({PowerLaw{}}, canonical, radii).trend, GrowthTrend::Diverging);
    const auto bar = growth_criterion_report({BarenblattSlice{unit, 0.0, 0.2, 1.0}}, canonical, radii);
    EXPECT_EQ(bar.trend, GrowthTrend::Bounded);
    EXPECT_NEAR(bar.averages.back(), 59.06, 0.01);
    const auto bump = make_composite({PowerLaw{0.0, 0.0}}, gaussian_bump(1.0, 0.3, 3, 1.0));
    EXPECT_EQ(growth_criterion_report(bump, canonical, radii).trend, GrowthTrend::Vanishing);
    EXPECT_EQ(growth_criterion_report({PowerLaw{0.0, 1.0}}, canonical, radii).trend,
              GrowthTrend::Vanishing);
    EXPECT_EQ(to_string(GrowthTrend::Bounded), "bounded");
}

TEST(GrowthReport, ThresholdNeedsBothInputs)
{
    const std::vector<double> radii{1, 2, 4};
    EXPECT_THROW(growth_criterion_report({PowerLaw{}}, canonical, radii, 1.0), std::invalid_argument);
    EXPECT_THROW(growth_criterion_report({PowerLaw{}}, canonical, {1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(growth_criterion_report({PowerLaw{}}, canonical, {1.0, 3.0, 2.0}),
                 std::invalid_argument);
    const auto r = growth_criterion_report({PowerLaw{}}, canonical, radii, 2.0, 0.5);
    ASSERT_TRUE(r.threshold && r.meets_threshold);
    EXPECT_NEAR(*r.threshold, 0.5 * std::pow(2.0, 1.25), 1e-14);
    EXPECT_TRUE(*r.meets_threshold);
    EXPECT_FALSE(r.averages.empty());
}

TEST(ExtinctionLowerBound, DoublingRatioForPowerLaw)
{
    const InitialData data{PowerLaw{}};
    const double ratio = extinction_lower_bound(data, 2.0, canonical, 0.3) /
                         extinction_lower_bound(data, 1.0, canonical, 0.3);
    EXPECT_NEAR(ratio, std::pow(2.0, 1.2), 1e-12);
}

TEST(ExtinctionLowerBound, ZeroDataMonotoneAndCalibrationRequired)
{
    EXPECT_EQ(extinction_lower_bound({PowerLaw{0.0, 1.0}}, 1.0, canonical, 1.0), 0.0);
    const InitialData small{BarenblattSlice{unit, 0.0, 0.2, 0.5}};
    const InitialData large{BarenblattSlice{unit, 0.0, 0.2, 1.0}};
    EXPECT_LE(extinction_lower_bound(small, 1.0, canonical, 1.0),
              extinction_lower_bound(large, 1.0, canonical, 1.0));
    EXPECT_THROW(extinction_lower_bound(large, 1.0, canonical, 0.0), std::invalid_argument);
}

TEST(ExtinctionLowerBound, CalibratedOnOneCaseHoldsOnAnother)
{
    // calibrate C2 on unit Barenblatt data on B_1 (domain B_5, zero boundary), then check a
    // half-amplitude slice with the same C2
    SolverConfig cfg;
    for (int k = 1; k <= 400; ++k) cfg.sample_times.push_back(0.0025 * k);
    const auto g = share(RadialGrid::uniform(3, 250, 5.0));
    const auto measure = [&](double scale) {
        const InitialData d{BarenblattSlice{unit, 0.0, 0.2, scale}};
        const auto traj = solve(sample_initial(d, g), ZeroBoundary{}, 1.0, cfg, 3, 0.2);
        return std::make_pair(extinction_time(traj, 1e-8).value(), d);
    };
    const auto [t_ref, d_ref] = measure(1.0);
    const double C2 = t_ref / extinction_lower_bound(d_ref, 1.0, canonical, 1.0);
    for (double scale : {0.5, 0.25}) {
        const auto [t, d] = measure(scale);
        EXPECT_GE(t, extinction_lower_bound(d, 1.0, canonical, C2)) << "scale=" << scale;
    }
}

TEST(WeakForm, ZeroTestFunction)
{
    TestFunction zero{[](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                      [](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
    const auto traj = exact_trajectory(50, 10, 4.0, 0.5);
    EXPECT_EQ(weak_form_residual(traj, zero, 0.0, 0.5).residual, 0.0);
}

TEST(WeakForm, SteadyConstantSolution)
{
    const auto g = share(RadialGrid::uniform(3, 100, 2.0));
    Trajectory traj;
    traj.m = 0.2;
    traj.bc = ConstantBoundary{0.3};
    for (double t : {0.0, 0.5, 1.0}) {
        traj.times.push_back(t);
        traj.fields.emplace_back(g, 0.3);
    }
    // ∫ Δη is the boundary flux; midpoint error of a quadratic integrand is O(h²)
    const auto r = weak_form_residual(traj, quadratic_ramp(2.0), 0.0, 1.0);
    EXPECT_LT(r.residual, 1e-3 * std::abs(r.lhs));
}

TEST(WeakForm, ConvergesOnTheExactBarenblattTrajectory)
{
    double prev = 0.0;
    for (int level = 0; level < 3; ++level) {
        const auto traj = exact_trajectory(50u << level, 10u << level, 4.0, 0.9);
        const double res = weak_form_residual(traj, quadratic_ramp(4.0), 0.0, 0.9).residual;
        if (level > 0) {
            EXPECT_GT(prev / res, 2.0);
        }
        prev = res;
    }
}

TEST(WeakForm, Preconditions)
{
    const auto traj = exact_trajectory(20, 4, 4.0, 0.4);
    EXPECT_THROW(weak_form_residual(traj, quartic_bump(3.0), 0.0, 0.4), std::invalid_argument);
    EXPECT_THROW(weak_form_residual(traj, quartic_bump(4.0), 0.0, 0.35), std::invalid_argument);
    EXPECT_THROW(weak_form_residual(traj, quartic_bump(4.0), 0.4, 0.0), std::invalid_argument);
    EXPECT_THROW(weak_form_residual(traj, TestFunction{}, 0.0, 0.4), std::invalid_argument);
}

TEST(PositivityFloor, ConstantState)
{
    const auto g = share(RadialGrid::uniform(3, 40, 5.0));
    const auto traj = solve(RadialField(g, 0.4), ConstantBoundary{0.4}, 0.5, {}, 3, 0.2);
    EXPECT_NEAR(positivity_floor(traj, 0.25, 1.0, 0.0, 0.5), 0.4, 1e-12);
    EXPECT_THROW(positivity_floor(traj, 1.5, 1.0, 0.0, 0.5), std::invalid_argument);
    EXPECT_THROW(positivity_floor(traj, 0.25, 1.0, 0.7, 0.8), std::invalid_argument);
}

TEST(PositivityFloor, UniformInEpsilon)
{
    // domain B_{5R} with data cut to B_{2R}, R = 2
    const auto g = share(RadialGrid::uniform(3, 500, 10.0));
    const auto u0 = sample_initial({PowerLaw{}}, g);
    SolverConfig cfg;
    cfg.sample_times = {0.01, 0.02, 0.05, 0.1};
    const std::vector<double> eps{0.1, 0.05, 0.025};
    const auto fam = solve_epsilon_family(u0, 4.0, eps, 0.1, cfg, 3, 0.2);
    std::vector<double> floors;
    for (const auto& traj : fam) floors.push_back(positivity_floor(traj, 0.25, 2.0, 0.01, 0.1));
    for (double f : floors) EXPECT_GT(f, 0.0);
    EXPECT_LE(floors.front() / floors.back() - 1.0, 0.1);
}

TEST(PositivityFloor, ExtinctBumpSitsAtTheClamp)
{
    const auto g = share(RadialGrid::uniform(3, 100, 5.0));
    const InitialData d{BarenblattSlice{unit, 0.0, 0.2, 0.1}};
    SolverConfig cfg;
    cfg.eps_floor = 1e-10;
    cfg.sample_times = {0.5};
    const auto traj = solve(sample_initial(d, g), ZeroBoundary{}, 1.0, cfg, 3, 0.2);
    EXPECT_NEAR(positivity_floor(traj, 0.25, 1.0, 0.5, 1.0), 1e-10, 1e-12);
}
