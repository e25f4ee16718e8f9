#include "cheshire/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cheshire/tsvf.hpp"

namespace cheshire::kernels {

AmplitudeModel::AmplitudeModel(const SpectralDecomposition& spec, const StateVector& pre,
                               const StateVector& post) {
    for (int k = 0; k < kDim; ++k) {
        const StateVector v = spec.eigenvector(k);
        lambda_[k] = spec.eigenvalues[k];
        weight_[k] = inner(post, v) * inner(v, pre);
    }
}

Complex AmplitudeModel::amplitude(double t) const {
    Complex sum = 0.0;
    for (int k = 0; k < kDim; ++k) {
        sum += weight_[k] * std::exp(-lambda_[k] * t);
    }
    return sum;
}

std::vector<double> normalized_rates(const AmplitudeModel& model, double n0,
                                     std::span<const double> times, Execution exec) {
    const auto count = static_cast<std::ptrdiff_t>(times.size());
    std::vector<double> out(times.size());
    if (exec == Execution::serial) {
        for (std::ptrdiff_t j = 0; j < count; ++j) {
            out[j] = model.probability(times[j]) / n0;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < count; ++j) {
            out[j] = model.probability(times[j]) / n0;
        }
    }
    return out;
}

namespace {

void surface_row(const SpectralDecomposition& spec, double alpha,
                 std::span<const double> times, const StateVector& post, double min_n0,
                 std::optional<double>* row) {
    const StateVector pre = preselect(alpha);
    const double n0 = std::norm(inner(post, pre));
    if (n0 < min_n0) {
        for (std::size_t j = 0; j < times.size(); ++j) {
            row[j].reset();
        }
        return;
    }
    const AmplitudeModel model(spec, pre, post);
    for (std::size_t j = 0; j < times.size(); ++j) {
        row[j] = model.probability(times[j]) / n0;
    }
}

}  // namespace

std::vector<std::optional<double>> surface_cells(const SpectralDecomposition& spec,
                                                 std::span<const double> alphas,
                                                 std::span<const double> times,
                                                 const StateVector& post, double min_n0,
                                                 Execution exec) {
    const auto rows = static_cast<std::ptrdiff_t>(alphas.size());
    const std::size_t cols = times.size();
    std::vector<std::optional<double>> out(alphas.size() * cols);
    if (exec == Execution::serial) {
        for (std::ptrdiff_t a = 0; a < rows; ++a) {
            surface_row(spec, alphas[a], times, post, min_n0, out.data() + a * cols);
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t a = 0; a < rows; ++a) {
            surface_row(spec, alphas[a], times, post, min_n0, out.data() + a * cols);
        }
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

TrialCounts run_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t trials,
                      double p_one, const std::array<double, 2>& acceptance) {
    std::mt19937_64 gen(derive_seed(seed, chunk));
    TrialCounts counts;
    for (std::uint64_t n = 0; n < trials; ++n) {
        const int sw = unit_interval(gen()) < p_one ? 1 : 0;
        ++counts.trials[sw];
        if (unit_interval(gen()) < acceptance[sw]) {
            ++counts.coincidences[sw];
        }
    }
    return counts;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

TrialCounts& TrialCounts::operator+=(const TrialCounts& other) {
    for (int k = 0; k < 2; ++k) {
        trials[k] += other.trials[k];
        coincidences[k] += other.coincidences[k];
    }
    return *this;
}

TrialCounts simulate_trials(std::uint64_t seed, std::uint64_t trials, double p_one,
                            const std::array<double, 2>& acceptance, Execution exec) {
    const std::uint64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    const auto chunk_size = [&](std::uint64_t c) {
        return std::min(kTrialsPerChunk, trials - c * kTrialsPerChunk);
    };
    std::vector<TrialCounts> partial(chunks);
    const auto n = static_cast<std::int64_t>(chunks);
    if (exec == Execution::serial) {
        for (std::int64_t c = 0; c < n; ++c) {
            partial[c] = run_chunk(seed, c, chunk_size(c), p_one, acceptance);
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < n; ++c) {
            partial[c] = run_chunk(seed, c, chunk_size(c), p_one, acceptance);
        }
    }
    TrialCounts total;
    for (const auto& p : partial) {
        total += p;
    }
    return total;
}

}  // namespace cheshire::kernels
