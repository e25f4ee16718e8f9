#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cheshire/ite.hpp"
#include "cheshire/kernels.hpp"
#include "cheshire/tensor_core.hpp"
#include "cheshire/tsvf.hpp"

namespace cheshire {

// The switch emits 1 (exchange post-state) or 0 (identity post-state).
enum class Branch : int { identity = 0, exchange = 1 };

std::string to_string(Branch b);

struct SwitchPolicy {
    double p_exchange = 0.5;
};

struct TrialBatchConfig {
    std::string observable_label;
    double t = 0.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    SwitchPolicy policy;
};

struct BranchStats {
    Branch branch = Branch::exchange;
    std::uint64_t trials = 0;
    std::uint64_t coincidences = 0;
    double n_hat = 0.0;     // estimated N(t) for this branch
    double n_stderr = 0.0;  // binomial, propagated through the rescaling
    double n0 = 0.0;        // unperturbed success probability of the branch
};

struct BatchResult {
    BranchStats exchange;
    BranchStats identity;
    // Factor c(t) >= 1 removed from the evolution so every per-trial
    // acceptance is a probability; n_hat multiplies c(t)^2 back in.
    double rescale = 1.0;
    std::array<double, 2> acceptance{};  // indexed by Branch
};

// One pre-state and the two post-states the switch chooses between.
struct SelectionPair {
    Selection exchange;
    Selection identity;

    static SelectionPair at_alpha(double alpha) {
        return {Selection(preselect(alpha), post_exchange()),
                Selection(preselect(alpha), post_identity())};
    }
};

// Caches the spectral data of one observable so repeated batches only pay for
// the trials.
class DelayedChoiceSampler {
public:
    // Throws OrthogonalSelection or NonHermitianInput.
    DelayedChoiceSampler(const Operator& op, const SelectionPair& selections);

    const std::string& label() const { return label_; }

    // c(t) = exp(|lambda_min| t) when the spectrum has a negative part, else 1.
    double rescale(double t) const;

    // Throws ProbabilityOverflow, DomainError for bad t, trials or policy.
    BatchResult run(double t, std::uint64_t trials, std::uint64_t seed, SwitchPolicy policy,
                    kernels::Execution exec = kernels::Execution::parallel) const;

private:
    DelayedChoiceSampler(const Operator& op, const SelectionPair& selections,
                         const SpectralDecomposition& spec);

    std::string label_;
    double lambda_min_;
    kernels::AmplitudeModel exchange_;
    kernels::AmplitudeModel identity_;
    double n0_exchange_;
    double n0_identity_;
};

BatchResult run_batch(const TrialBatchConfig& cfg, const SelectionPair& selections,
                      kernels::Execution exec = kernels::Execution::parallel);

struct BranchSweep {
    Branch branch = Branch::exchange;
    std::vector<BranchStats> points;  // one per grid point
    SweepResult fit;
};

struct BranchSweepPair {
    BranchSweep exchange;
    BranchSweep identity;
};

// Grid point j is simulated with seed derive_seed(seed, j). Throws
// DegenerateFit when a branch receives no trials at some point.
BranchSweepPair branch_sweep(const Operator& op, const TimeGrid& grid,
                             std::uint64_t trials_per_point, std::uint64_t seed,
                             const SelectionPair& selections, SwitchPolicy policy = {},
                             kernels::Execution exec = kernels::Execution::parallel);

enum class PoolWeighting { by_success_probability, equal };

std::string to_string(PoolWeighting w);

struct PooledSweep {
    PoolWeighting weighting = PoolWeighting::equal;
    SweepResult fit;
};

// Per-point weighted mean of the two branches' n_hat, then OLS. With
// by_success_probability a branch weighs trials * n0, the expected number of
// unperturbed coincidences. Throws GridMismatch.
PooledSweep pooled_estimate(const BranchSweep& a, const BranchSweep& b, PoolWeighting weighting);

}  // namespace cheshire
