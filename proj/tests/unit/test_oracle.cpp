#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "coalesce/errors.hpp"
#include "coalesce/oracle.hpp"

using namespace coalesce;
using std::numbers::pi;

TEST(PrincipalValue, RationalModel)
{
    // PV int_0^inf dq / ((1 + q^2)(p - q)) = (ln p + p pi / 2) / (1 + p^2)
    for (double p : {0.5, 3.0, 40.0})
    {
        double exact = (std::log(p) + 0.5 * p * pi) / (1.0 + p * p);
        double v = principal_value([](double q) { return 1.0 / (1.0 + q * q); }, p, 1.0);
        EXPECT_NEAR(v, exact, 1e-9 * std::abs(exact)) << p;
    }
}

TEST(F1N, ApproachesAsymptoticFormula)
{
    auto r = f1n_bruteforce(2.0, 2.0, 200.0, 1.0);
    EXPECT_NEAR(r.ratio, 1.0, 0.05);
    EXPECT_LT(r.error_estimate, 0.01);

    double last = INFINITY;
    for (double p : {50.0, 100.0, 200.0})
    {
        double dev = std::abs(f1n_bruteforce(2.0, 2.0, p, 1.0).ratio - 1.0);
        EXPECT_LT(dev, last);
        last = dev;
    }
}

TEST(F1N, DeviationIsFirstOrderInXi)
{
    double d1 = f1n_bruteforce(2.0, 2.0, 100.0, 1.0).ratio - 1.0;
    double d2 = f1n_bruteforce(2.0, 2.0, 200.0, 1.0).ratio - 1.0;
    double d3 = f1n_bruteforce(2.0, 2.0, 400.0, 1.0).ratio - 1.0;
    EXPECT_NEAR(d1 / d2, 2.0, 0.5);
    EXPECT_NEAR(d2 / d3, 2.0, 0.5);
}

TEST(F1N, LinearInPolarization)
{
    auto one = f1n_bruteforce(2.0, 2.0, 80.0, 1.0);
    auto three = f1n_bruteforce(2.0, 2.0, 80.0, 3.0);
    EXPECT_NEAR(three.value, 3.0 * one.value, 1e-13 * std::abs(three.value));
    EXPECT_EQ(f1n_bruteforce(2.0, 2.0, 80.0, 0.0).value, 0.0);
}

TEST(F1e, SignAndMagnitude)
{
    auto r = f1e_bruteforce(2.0, 200.0, 1.0);
    EXPECT_LT(r.value, 0.0);
    EXPECT_GT(r.ratio, 0.4);
    EXPECT_LT(r.ratio, 0.7);
    EXPECT_EQ(f1e_bruteforce(2.0, 200.0, 0.0).value, 0.0);
}

TEST(F1e, ExponentIsInteger)
{
    auto res = resolve_f1e_exponent(2.0);
    EXPECT_TRUE(res.integer_within_tolerance);
    EXPECT_FALSE(res.inconclusive);
    EXPECT_EQ(res.nearest_integer, -8);
    EXPECT_EQ(res.matching_candidate, "lambda_structure");
    EXPECT_EQ(res.ratio_to_reference.size(), res.fit.x.size());
}

TEST(F1e, ChargeScaling)
{
    auto fit = f1e_charge_scaling(std::vector<double>{10, 15, 20, 30, 40}, 5000.0);
    EXPECT_NEAR(fit.exponent, 4.0, 0.05);
}

TEST(PowerLaw, ExactLaws)
{
    std::vector<double> x{2, 4, 8}, y;
    for (double v : x)
        y.push_back(7.0 * std::pow(v, -8));
    auto fit = fit_power_law(x, y);
    EXPECT_NEAR(fit.amplitude, 7.0, 1e-12 * 7.0);
    EXPECT_NEAR(fit.exponent, -8.0, 1e-12);
    EXPECT_LT(fit.residual_norm, 1e-12);

    std::vector<double> y5;
    for (double v : x)
        y5.push_back(std::pow(v, 5));
    EXPECT_NEAR(fit_power_law(x, y5).exponent, 5.0, 1e-12);
}

TEST(PowerLaw, SubleadingCorrection)
{
    std::vector<double> x, y;
    for (double v = 1e3; v <= 1.0001e4; v *= std::pow(10.0, 0.125))
    {
        x.push_back(v);
        y.push_back(std::pow(v, -4) * (1.0 + 1.0 / v));
    }
    EXPECT_NEAR(fit_power_law(x, y).exponent, -4.0, 1e-3);
}

TEST(PowerLaw, RejectsBadData)
{
    std::vector<double> x{1, 2}, y{1, 2};
    EXPECT_THROW(fit_power_law(x, y), ValidationError);
    std::vector<double> x3{1, 2, 3}, y3{1, -2, 3};
    EXPECT_THROW(fit_power_law(x3, y3), ValidationError);
}
