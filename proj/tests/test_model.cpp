#include "vfde/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace vfde;

namespace {

bool violates(const std::vector<Violation>& v, const std::string& constraint)
{
    for (const auto& x : v)
        if (x.constraint == constraint) return true;
    return false;
}

}  // namespace

TEST(ValidateParams, CanonicalCaseIsClean)
{
    EXPECT_TRUE(validate_params(ModelParams{}, false).empty());
    EXPECT_TRUE(validate_params(ModelParams{}, true).empty());
}

TEST(ValidateParams, ReportsEachBrokenConstraint)
{
    ModelParams p;
    p.n = 2;
    EXPECT_TRUE(violates(validate_params(p, false), "n >= 3"));

    p = {};
    p.m = 0.5;  // above 1/3 for n = 3
    EXPECT_TRUE(violates(validate_params(p, false), "m <= (n-2)/n"));

    p = {};
    p.m = 1.0 / 3.0;  // the endpoint is allowed for existence, not for asymptotics
    EXPECT_TRUE(validate_params(p, false).empty());
    EXPECT_TRUE(violates(validate_params(p, true), "m < (n-2)/n"));

    p = {};
    p.p = 1.0;
    EXPECT_TRUE(violates(validate_params(p, false), "p > max(1,(1-m)n/2)"));

    p = {};
    p.q = 1.6;  // n/p = 1.5
    EXPECT_TRUE(validate_params(p, false).empty());
    EXPECT_TRUE(violates(validate_params(p, true), "q < n/p"));

    p = {};
    p.A = 0.0;
    EXPECT_TRUE(violates(validate_params(p, true), "A > 0"));

    p = {};
    p.m = std::nan("");
    EXPECT_TRUE(violates(validate_params(p, false), "finite"));
}

TEST(Exponents, CanonicalValues)
{
    const auto e = compute_exponents(1.0, 0.2);
    EXPECT_NEAR(e.alpha, 5.0 / 6.0, 1e-15);
    EXPECT_NEAR(e.beta, 5.0 / 6.0, 1e-15);
}

TEST(Exponents, RejectsTooFastDecay)
{
    EXPECT_THROW(compute_exponents(2.5, 0.2), std::invalid_argument);  // q = 2/(1-m)
    EXPECT_THROW(compute_exponents(3.0, 0.2), std::invalid_argument);
}

TEST(Exponents, IdentitiesHoldForRandomAdmissiblePairs)
{
    std::mt19937_64 rng(20260415);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const int n = 3 + static_cast<int>(unit(rng) * 5);
        const double m = 1e-3 + unit(rng) * ((n - 2.0) / n - 2e-3);
        const double q = 1e-3 + unit(rng) * (2.0 / (1.0 - m) - 2e-3);
        const auto e = compute_exponents(q, m);
        EXPECT_NEAR(e.alpha, q * e.beta, 1e-12 * std::max(1.0, e.alpha));
        EXPECT_NEAR(1.0 / e.beta, 2.0 - q * (1.0 - m), 1e-12 * std::max(1.0, 1.0 / e.beta));
    }
}

TEST(SphereArea, KnownDimensions)
{
    EXPECT_NEAR(sphere_area(2), 2.0 * std::numbers::pi, 1e-13);
    EXPECT_NEAR(sphere_area(3), 4.0 * std::numbers::pi, 1e-13);
    EXPECT_NEAR(sphere_area(4), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Model, DerivedConstants)
{
    EXPECT_DOUBLE_EQ(diffusion_coefficient(3, 0.2), 10.0);
    EXPECT_DOUBLE_EQ(critical_m(3), 1.0 / 3.0);
    EXPECT_NEAR(growth_exponent(3, 0.2), 0.5, 1e-15);
    EXPECT_NEAR(growth_exponent(4, 0.5), 0.0, 1e-15);
}
