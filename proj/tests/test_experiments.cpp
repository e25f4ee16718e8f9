#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cheshire/errors.hpp"
#include "cheshire/experiments.hpp"
#include "cheshire/observables.hpp"
#include "oracles.hpp"

using namespace cheshire;

namespace {

constexpr double kPi4 = std::numbers::pi / 4;

double analytic_from_tsvf(const ReportRow& row) {
    const auto post = row.post_state == "identity" ? PostState::identity : PostState::exchange;
    return weak_value(observable_by_label(row.observable_label),
                      Selection::canonical_pair(kPi4, post))
        .value.real();
}

}  // namespace

TEST(AnalyticTables, QuarterPi) {
    const auto report = exp_analytic_tables(kPi4);
    ASSERT_EQ(report.rows.size(), 16u);
    EXPECT_TRUE(report.all_scored_pass());
    const std::vector<double> ex{0, 1, 1, 0, 0.5, 0, 0, -0.5};
    const std::vector<double> id{0, 1, 1, 0, 0, -0.5, 0.5, 0};
    for (int k = 0; k < 8; ++k) {
        EXPECT_NEAR(report.rows[k].numerical, ex[k], 1e-12);
        EXPECT_NEAR(report.rows[k + 8].numerical, id[k], 1e-12);
        EXPECT_EQ(report.rows[k + 8].post_state, "identity");
    }
    EXPECT_FALSE(report.notes.empty());
}

TEST(AnalyticTables, ThirdPiTanLaw) {
    const auto report = exp_analytic_tables(std::numbers::pi / 3);
    EXPECT_NEAR(report.rows[4].numerical, std::sqrt(3.0) / 2, 1e-12);
    EXPECT_TRUE(report.all_scored_pass());
}

TEST(AnalyticTables, RejectsEndpoints) {
    EXPECT_THROW(exp_analytic_tables(0.0), DomainError);
    EXPECT_THROW(exp_analytic_tables(std::numbers::pi / 2), DomainError);
}

TEST(RateSurfaces, EightSurfacesWithUnitZeroColumn) {
    const auto surfaces = exp_rate_surfaces(11);
    ASSERT_EQ(surfaces.size(), 8u);
    for (const auto& s : surfaces) {
        for (const auto& row : s.n) EXPECT_NEAR(*row[0], 1.0, 1e-12);
    }
    // Pi_d1 carries no alpha dependence.
    const auto& pd1 = surfaces[2];
    double worst = 0.0;
    for (const auto& row : pd1.n)
        for (std::size_t j = 0; j < row.size(); ++j)
            worst = std::max(worst, std::abs(*row[j] - std::exp(-2 * pd1.t_grid.points()[j])));
    EXPECT_LT(worst, 1e-12);
    // Pi_d2*S2 rises with t at alpha = pi/4 (middle of an odd interior grid).
    const auto& row = surfaces[7].n[5];
    for (std::size_t j = 1; j < row.size(); ++j) EXPECT_GT(*row[j], *row[j - 1]);
}

TEST(IteSweeps, DefaultGridMatchesPublishedFits) {
    const auto res = exp_ite_sweeps();
    ASSERT_EQ(res.report.rows.size(), 8u);
    EXPECT_EQ(res.report.passed(), 8);
    EXPECT_NEAR(res.report.rows[2].numerical, 0.82, 0.03);
    EXPECT_NEAR(res.report.rows[4].numerical, 0.48, 0.03);
    EXPECT_NEAR(res.report.rows[0].numerical, 0.0, 1e-12);
    for (const auto& row : res.report.rows) {
        EXPECT_NEAR(row.analytic, analytic_from_tsvf(row), 1e-12);
        ASSERT_TRUE(row.reference.has_value());
    }
}

TEST(IteSweeps, OtherWindowsScoreAgainstAnalytic) {
    const auto res = exp_ite_sweeps(TimeGrid::uniform(0, 0.001, 11));
    for (const auto& row : res.report.rows) {
        EXPECT_EQ(row.target, Target::analytic);
        EXPECT_FALSE(row.reference.has_value());
        EXPECT_EQ(row.tolerance, kWindowTol);
    }
}

TEST(DelayedChoice, ReportsAreReproducibleAndConsistent) {
    const auto grid = default_extraction_grid();
    const auto a = exp_delayed_choice(grid, 200'000, 7);
    const auto b = exp_delayed_choice(grid, 200'000, 7);
    ASSERT_EQ(a.exchange.rows.size(), 8u);
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_EQ(a.exchange.rows[k].numerical, b.exchange.rows[k].numerical);
        EXPECT_EQ(a.identity.rows[k].numerical, b.identity.rows[k].numerical);
        EXPECT_NEAR(a.exchange.rows[k].analytic, analytic_from_tsvf(a.exchange.rows[k]), 1e-12);
        EXPECT_NEAR(a.identity.rows[k].analytic, analytic_from_tsvf(a.identity.rows[k]), 1e-12);
        EXPECT_NEAR(a.identity.rows[k].reference->value, oracle::kFittedIdentity[k], 1e-9);
    }
    EXPECT_EQ(a.pooled_equal.scored(), 0);
    EXPECT_EQ(a.pooled_by_success.scored(), 0);
    EXPECT_EQ(a.pooled_equal.rows.size(), 8u);
}

TEST(ReportRow, PassFollowsTarget) {
    ReportRow row{"x", "exchange", 1.0, 0.9, Reference{0.88, "src"}, Target::reference, 0.03};
    row.evaluate();
    EXPECT_TRUE(row.pass);
    row.target = Target::analytic;
    row.evaluate();
    EXPECT_FALSE(row.pass);
}
