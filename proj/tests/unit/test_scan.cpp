#include <cmath>

#include <gtest/gtest.h>

#include "coalesce/errors.hpp"
#include "coalesce/scan.hpp"

using namespace coalesce;

TEST(Scan, ChargeAndMomentumExponents)
{
    ScanGrid grid{{10, 15, 20, 30, 40}, {5000}};
    auto res = parameter_scan(grid, WavefunctionFamily::product_hydrogenic, {{}, {}, 1});
    ASSERT_EQ(res.rows.size(), 5u);
    for (const auto& fit : res.fits)
    {
        if (fit.quantity == "F1N")
            EXPECT_NEAR(fit.fit.exponent, 5.0, 0.02);
        else
            EXPECT_NEAR(fit.fit.exponent, 4.0, 0.05);
    }

    ScanGrid pgrid{{2}, {1000, 2000, 4000, 7000, 10000}};
    auto pres = parameter_scan(pgrid, WavefunctionFamily::product_hydrogenic, {{}, {}, 1});
    for (const auto& fit : pres.fits)
        if (fit.quantity == "F1N")
            EXPECT_NEAR(fit.fit.exponent, -8.0, 0.05);
}

TEST(Scan, RowsIndependentOfWorkerCount)
{
    ScanGrid grid{{3, 1, 2}, {100, 40, 10}};
    auto a = parameter_scan(grid, WavefunctionFamily::local_fock, {{}, {}, 1});
    auto b = parameter_scan(grid, WavefunctionFamily::local_fock, {{}, {}, 3});
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        EXPECT_EQ(a.rows[i].Z, b.rows[i].Z);
        EXPECT_EQ(a.rows[i].p, b.rows[i].p);
        EXPECT_EQ(a.rows[i].amplitude.F_total, b.rows[i].amplitude.F_total);
    }
    EXPECT_EQ(a.rows.front().Z, 1.0);
    EXPECT_EQ(a.rows.front().p, 10.0);
}

TEST(Scan, HylleraasFamily)
{
    auto wf = family_member(WavefunctionFamily::hylleraas, 2.0);
    const auto& h = std::get<HylleraasExpansion>(wf);
    EXPECT_GT(h.a, 1.0);
    EXPECT_LT(h.a, 3.0);
    EXPECT_EQ(h.terms.size(), 3u);
}

TEST(Scan, Validation)
{
    EXPECT_THROW(parameter_scan({{2}, {10, 20}}, WavefunctionFamily::product_hydrogenic),
                 ValidationError);
    EXPECT_THROW(family_from_string("slater"), ValidationError);
    EXPECT_EQ(family_from_string("local-fock"), WavefunctionFamily::local_fock);
    EXPECT_EQ(worker_count(5), 5u);
}
