#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "cheshire/ite.hpp"
#include "cheshire/kernels.hpp"
#include "cheshire/observables.hpp"

using namespace cheshire;
using kernels::Execution;

TEST(AmplitudeModel, AgreesWithMatrixExponentialRoute) {
    for (auto post : {PostState::exchange, PostState::identity}) {
        const auto sel = Selection::canonical_pair(0.5, post);
        for (const auto& op : canonical_observables()) {
            const kernels::AmplitudeModel model(spectral(op), sel.pre(), sel.post());
            for (double t : {0.0, 0.05, 0.3, 1.0}) {
                const Complex direct = inner(sel.post(), act(matexp_neg(op, t), sel.pre()));
                EXPECT_LT(std::abs(model.amplitude(t) - direct), 1e-13) << op.label();
            }
        }
    }
}

TEST(NormalizedRates, SerialAndParallelBitIdentical) {
    const auto sel = Selection::canonical_pair(std::numbers::pi / 4, PostState::exchange);
    const auto grid = TimeGrid::uniform(0.0, 1.0, 1001);
    for (const auto& op : canonical_observables()) {
        const kernels::AmplitudeModel model(spectral(op), sel.pre(), sel.post());
        EXPECT_EQ(kernels::normalized_rates(model, sel.n0(), grid.points(), Execution::serial),
                  kernels::normalized_rates(model, sel.n0(), grid.points(), Execution::parallel));
    }
}

TEST(SurfaceCells, SerialAndParallelBitIdentical) {
    const auto alphas = alpha_grid(40, true);
    const auto grid = TimeGrid::uniform(0.0, 1.0, 33);
    for (const auto& op : canonical_observables()) {
        const auto spec = spectral(op);
        const auto a = kernels::surface_cells(spec, alphas, grid.points(), post_exchange(),
                                              kOverlapEpsilon, Execution::serial);
        const auto b = kernels::surface_cells(spec, alphas, grid.points(), post_exchange(),
                                              kOverlapEpsilon, Execution::parallel);
        EXPECT_EQ(a, b) << op.label();
    }
}

TEST(SimulateTrials, SerialAndParallelBitIdentical) {
    const std::array<double, 2> q{0.25, 0.31};
    for (std::uint64_t trials : std::initializer_list<std::uint64_t>{1, 1000, kernels::kTrialsPerChunk,
                                 3 * kernels::kTrialsPerChunk + 17}) {
        EXPECT_EQ(kernels::simulate_trials(9, trials, 0.5, q, Execution::serial),
                  kernels::simulate_trials(9, trials, 0.5, q, Execution::parallel));
    }
}

TEST(SimulateTrials, CountsAreConsistent) {
    const auto c = kernels::simulate_trials(1, 200'001, 0.3, {0.0, 1.0}, Execution::parallel);
    EXPECT_EQ(c.trials[0] + c.trials[1], 200'001u);
    EXPECT_EQ(c.coincidences[0], 0u);
    EXPECT_EQ(c.coincidences[1], c.trials[1]);
}

TEST(SimulateTrials, ChunkedCountsFormAMonoid) {
    kernels::TrialCounts a;
    a.trials = {3, 4};
    a.coincidences = {1, 2};
    kernels::TrialCounts b;
    b.trials = {10, 20};
    b.coincidences = {5, 6};
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + a, a + (b + a));
    EXPECT_EQ(a + kernels::TrialCounts{}, a);
}

TEST(DeriveSeed, DistinctStreams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 64; ++a)
        for (std::uint64_t b = 0; b < 4; ++b) seen.insert(kernels::derive_seed(42, a, b));
    EXPECT_EQ(seen.size(), 256u);
    EXPECT_NE(kernels::derive_seed(1, 0), kernels::derive_seed(2, 0));
    EXPECT_EQ(kernels::derive_seed(5, 7, 1), kernels::derive_seed(5, 7, 1));
}

TEST(UnitInterval, Range) {
    EXPECT_EQ(kernels::unit_interval(0), 0.0);
    EXPECT_LT(kernels::unit_interval(~std::uint64_t{0}), 1.0);
}
