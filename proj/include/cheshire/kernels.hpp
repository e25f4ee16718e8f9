#pragma once

// Data-parallel inner loops. Each kernel has a serial reference path and an
// OpenMP path; both evaluate the same per-cell arithmetic, so their outputs
// are bit-identical and only the scheduling differs.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cheshire/tensor_core.hpp"

namespace cheshire::kernels {

enum class Execution { serial, parallel };

// <f| exp(-O t) |i> expanded over the spectrum of O:
//   sum_k exp(-lambda_k t) <f|v_k><v_k|i>
class AmplitudeModel {
public:
    AmplitudeModel(const SpectralDecomposition& spec, const StateVector& pre,
                   const StateVector& post);

    Complex amplitude(double t) const;
    double probability(double t) const { return std::norm(amplitude(t)); }

private:
    std::array<double, kDim> lambda_{};
    std::array<Complex, kDim> weight_{};
};

// N(t)/N0 at every t.
std::vector<double> normalized_rates(const AmplitudeModel& model, double n0,
                                     std::span<const double> times, Execution exec);

// Row-major (alpha, t) matrix of normalized rates with preselect(alpha) as the
// pre-state. Rows whose post-selection probability is below min_n0 are empty.
std::vector<std::optional<double>> surface_cells(const SpectralDecomposition& spec,
                                                 std::span<const double> alphas,
                                                 std::span<const double> times,
                                                 const StateVector& post, double min_n0,
                                                 Execution exec);

// ---- Monte Carlo -----------------------------------------------------------

// Trials are processed in fixed chunks, each with its own generator seeded by
// derive_seed(batch_seed, chunk). Results never depend on thread count.
inline constexpr std::uint64_t kTrialsPerChunk = std::uint64_t{1} << 16;

// splitmix64 finalizer applied along the chain master -> a -> b.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Index 0 is the switch emitting 0 (identity post-state), index 1 emitting 1
// (exchange post-state).
struct TrialCounts {
    std::array<std::uint64_t, 2> trials{};
    std::array<std::uint64_t, 2> coincidences{};

    TrialCounts& operator+=(const TrialCounts& other);
    friend TrialCounts operator+(TrialCounts a, const TrialCounts& b) { return a += b; }
    friend bool operator==(const TrialCounts&, const TrialCounts&) = default;
};

// Each trial draws the switch (1 with probability p_one), then registers a
// coincidence with probability acceptance[switch].
TrialCounts simulate_trials(std::uint64_t seed, std::uint64_t trials, double p_one,
                            const std::array<double, 2>& acceptance, Execution exec);

}  // namespace cheshire::kernels
