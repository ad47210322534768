#include "vfde/barenblatt.hpp"
#include "vfde/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace vfde;

namespace {

// adaptive Simpson, kept independent of the library's Gauss-Kronrod quadrature
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 60);
}

}  // namespace

TEST(Cstar, KnownValues)
{
    EXPECT_NEAR(cstar(3, 0.2), 2.0, 1e-14);
    EXPECT_NEAR(cstar(4, 0.25), 8.0, 1e-14);
    EXPECT_NEAR(cstar(3, 1.0 / 3.0), 0.0, 1e-14);
}

TEST(Barenblatt, PointValues)
{
    const BarenblattSpec spec{1.0, 1.0};
    EXPECT_NEAR(barenblatt(1.0, 0.0, spec, 3, 0.2), 1.0, 1e-14);
    EXPECT_NEAR(barenblatt(0.0, 0.0, spec, 3, 0.2), std::pow(2.0, 1.25), 1e-13);
    EXPECT_EQ(barenblatt(0.3, 1.0, spec, 3, 0.2), 0.0);
    EXPECT_EQ(barenblatt(0.3, 1.7, spec, 3, 0.2), 0.0);
}

TEST(Barenblatt, RejectsCriticalExponent)
{
    EXPECT_THROW(barenblatt(1.0, 0.0, {1.0, 1.0}, 3, 1.0 / 3.0), std::invalid_argument);
    EXPECT_THROW(barenblatt(1.0, 0.0, {-1.0, 1.0}, 3, 0.2), std::invalid_argument);
}

TEST(Barenblatt, MonotoneInRadiusAndTime)
{
    const BarenblattSpec spec{1.3, 0.8};
    for (double t = 0.0; t < 0.8; t += 0.05) {
        double prev = barenblatt(0.0, t, spec, 3, 0.2);
        for (double r = 0.05; r < 10.0; r += 0.05) {
            const double u = barenblatt(r, t, spec, 3, 0.2);
            EXPECT_LE(u, prev);
            EXPECT_LE(barenblatt(r, t + 0.05, spec, 3, 0.2), u);
            prev = u;
        }
    }
}

TEST(Barenblatt, DerivativeMatchesDifferenceQuotient)
{
    const BarenblattSpec spec{1.0, 1.0};
    for (double r : {0.1, 0.7, 2.0, 5.0}) {
        const double h = 1e-5;
        const double fd = (barenblatt(r + h, 0.3, spec, 3, 0.2) - barenblatt(r - h, 0.3, spec, 3, 0.2)) / (2 * h);
        EXPECT_NEAR(barenblatt_dr(r, 0.3, spec, 3, 0.2), fd, 1e-8);
    }
}

TEST(Barenblatt, ClassicalSolutionResidual)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(0.05, 4.0), t(0.01, 0.95);
    std::vector<SpaceTimePoint> pts;
    for (int i = 0; i < 100; ++i) pts.push_back({r(rng), t(rng)});
    const double res = barenblatt_pde_residual({1.0, 1.0}, 3, 0.2, pts, 1e-4);
    EXPECT_LT(res, 1e-5);

    // second-order differencing
    const std::vector<SpaceTimePoint> fixed{{0.5, 0.3}, {1.0, 0.5}, {2.0, 0.7}};
    const double coarse = barenblatt_pde_residual({1.0, 1.0}, 3, 0.2, fixed, 1e-2);
    const double fine = barenblatt_pde_residual({1.0, 1.0}, 3, 0.2, fixed, 5e-3);
    EXPECT_GT(coarse / fine, 3.5);
}

TEST(Barenblatt, ResidualVanishesAfterExtinction)
{
    const std::vector<SpaceTimePoint> pts{{0.5, 1.2}, {1.0, 2.0}};
    EXPECT_EQ(barenblatt_pde_residual({1.0, 1.0}, 3, 0.2, pts, 1e-3), 0.0);
}

TEST(ComparisonConstants, CanonicalCase)
{
    const auto cc = comparison_constants(1.0, 1.0, 3, 0.2);
    EXPECT_NEAR(cc.T, 0.9178034146, 1e-9);
    EXPECT_NEAR(cc.k, 1.8409448436, 1e-9);
    for (int i = 1; i <= 1000; ++i) {
        const double r = std::pow(10.0, -3.0 + 6.0 * i / 1000.0);
        EXPECT_LE(barenblatt(r, 0.0, {cc.k, cc.T}, 3, 0.2), (1.0 + 1e-12) / r) << "r=" << r;
    }
}

TEST(ComparisonConstants, UnitExtinctionTime)
{
    const double A = 1.0 * 0.8 * std::pow(cstar(3, 0.2), 1.25);
    EXPECT_NEAR(comparison_constants(A, 1.0, 3, 0.2).T, 1.0, 1e-14);
}

TEST(ComparisonConstants, RejectsBadInput)
{
    EXPECT_THROW(comparison_constants(0.0, 1.0, 3, 0.2), std::invalid_argument);
    EXPECT_THROW(comparison_constants(1.0, 2.5, 3, 0.2), std::invalid_argument);
    EXPECT_THROW(comparison_constants(1.0, 1.0, 3, 0.4), std::invalid_argument);
}

TEST(GrowthLimit, ClosedForm)
{
    const double expected = 4.0 * std::numbers::pi * std::pow(2.0, 1.25) / 0.5;
    EXPECT_NEAR(barenblatt_growth_limit({1.0, 1.0}, 3, 0.2), expected, 1e-12);
    EXPECT_NEAR(expected, 59.77607, 1e-5);
    EXPECT_NEAR(barenblatt_growth_limit({1.0, 2.0}, 3, 0.2) / expected, std::pow(2.0, 1.25), 1e-13);
    EXPECT_NEAR(barenblatt_growth_limit({7.0, 1.0}, 3, 0.2), expected, 1e-12);
    EXPECT_THROW(barenblatt_growth_limit({1.0, 1.0}, 3, 1.0 / 3.0), std::invalid_argument);
}

TEST(GrowthLimit, SimpsonOracleAtFiniteRadius)
{
    // R^{-1/2} ω_3 ∫_0^R B(r,0) r² dr approaches the limit like R^{-1/2}
    const BarenblattSpec spec{1.0, 1.0};
    const auto f = [&](double r) { return barenblatt(r, 0.0, spec, 3, 0.2) * r * r; };
    double integral = 0.0;
    for (double a = 0.0, b = 1.0; a < 1e4; a = b, b *= 10.0)
        integral += integrate(f, a, b, 1e-10 * b);
    const double G = 4.0 * std::numbers::pi * integral / std::sqrt(1e4);
    EXPECT_NEAR(G, 59.0599, 1e-3);
    EXPECT_LT(G, barenblatt_growth_limit(spec, 3, 0.2));
}
