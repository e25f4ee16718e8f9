#include "cheshire/delayed_choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cheshire/errors.hpp"
#include "cheshire/observables.hpp"

namespace cheshire {
namespace {

constexpr double kOverflowTol = 1e-12;

BranchStats make_stats(Branch branch, std::uint64_t trials, std::uint64_t coincidences,
                       double rescale, double n0) {
    BranchStats s;
    s.branch = branch;
    s.trials = trials;
    s.coincidences = coincidences;
    s.n0 = n0;
    if (trials == 0) {
        s.n_stderr = std::numeric_limits<double>::infinity();
        return s;
    }
    const double freq = static_cast<double>(coincidences) / static_cast<double>(trials);
    const double gain = rescale * rescale / n0;
    s.n_hat = freq * gain;
    s.n_stderr = std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials)) * gain;
    return s;
}

SpectralDecomposition checked_spectrum(const Operator& op, const SelectionPair& selections) {
    selections.exchange.require_weak_values();
    selections.identity.require_weak_values();
    return spectral(op);
}

}  // namespace

std::string to_string(Branch b) {
    return b == Branch::exchange ? "exchange" : "identity";
}

std::string to_string(PoolWeighting w) {
    return w == PoolWeighting::equal ? "equal" : "by_success_probability";
}

DelayedChoiceSampler::DelayedChoiceSampler(const Operator& op, const SelectionPair& selections)
    : DelayedChoiceSampler(op, selections, checked_spectrum(op, selections)) {}

DelayedChoiceSampler::DelayedChoiceSampler(const Operator& op, const SelectionPair& selections,
                                           const SpectralDecomposition& spec)
    : label_(op.label()),
      lambda_min_(spec.min_eigenvalue()),
      exchange_(spec, selections.exchange.pre(), selections.exchange.post()),
      identity_(spec, selections.identity.pre(), selections.identity.post()),
      n0_exchange_(selections.exchange.n0()),
      n0_identity_(selections.identity.n0()) {}

double DelayedChoiceSampler::rescale(double t) const {
    return lambda_min_ < 0.0 ? std::exp(-lambda_min_ * t) : 1.0;
}

BatchResult DelayedChoiceSampler::run(double t, std::uint64_t trials, std::uint64_t seed,
                                      SwitchPolicy policy, kernels::Execution exec) const {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("imaginary time must be finite and non-negative");
    }
    if (trials == 0) {
        throw DomainError("a batch needs at least one trial");
    }
    if (!(policy.p_exchange >= 0.0 && policy.p_exchange <= 1.0)) {
        throw DomainError("switch probability must lie in [0, 1]");
    }

    BatchResult out;
    out.rescale = rescale(t);
    const double c2 = out.rescale * out.rescale;
    const auto idx = [](Branch b) { return static_cast<int>(b); };
    out.acceptance[idx(Branch::exchange)] = exchange_.probability(t) / c2;
    out.acceptance[idx(Branch::identity)] = identity_.probability(t) / c2;
    for (double& q : out.acceptance) {
        if (q > 1.0 + kOverflowTol) {
            throw ProbabilityOverflow("acceptance probability " + std::to_string(q) + " for '" +
                                      label_ + "' exceeds one");
        }
        q = std::min(q, 1.0);
    }

    const auto counts =
        kernels::simulate_trials(seed, trials, policy.p_exchange, out.acceptance, exec);
    const int ex = idx(Branch::exchange);
    const int id = idx(Branch::identity);
    out.exchange = make_stats(Branch::exchange, counts.trials[ex], counts.coincidences[ex],
                              out.rescale, n0_exchange_);
    out.identity = make_stats(Branch::identity, counts.trials[id], counts.coincidences[id],
                              out.rescale, n0_identity_);
    return out;
}

BatchResult run_batch(const TrialBatchConfig& cfg, const SelectionPair& selections,
                      kernels::Execution exec) {
    const DelayedChoiceSampler sampler(observable_by_label(cfg.observable_label), selections);
    return sampler.run(cfg.t, cfg.trials, cfg.seed, cfg.policy, exec);
}

BranchSweepPair branch_sweep(const Operator& op, const TimeGrid& grid,
                             std::uint64_t trials_per_point, std::uint64_t seed,
                             const SelectionPair& selections, SwitchPolicy policy,
                             kernels::Execution exec) {
    const DelayedChoiceSampler sampler(op, selections);
    BranchSweepPair out;
    out.exchange.branch = Branch::exchange;
    out.identity.branch = Branch::identity;
    std::vector<Sample> ex_samples;
    std::vector<Sample> id_samples;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.points()[j];
        const auto batch = sampler.run(t, trials_per_point, kernels::derive_seed(seed, j), policy,
                                       exec);
        if (batch.exchange.trials == 0 || batch.identity.trials == 0) {
            throw DegenerateFit("a switch branch received no trials at t = " + std::to_string(t));
        }
        out.exchange.points.push_back(batch.exchange);
        out.identity.points.push_back(batch.identity);
        ex_samples.push_back(Sample{t, batch.exchange.n_hat, batch.exchange.n_stderr});
        id_samples.push_back(Sample{t, batch.identity.n_hat, batch.identity.n_stderr});
    }
    out.exchange.fit = make_sweep_result(op.label(), std::move(ex_samples));
    out.identity.fit = make_sweep_result(op.label(), std::move(id_samples));
    return out;
}

PooledSweep pooled_estimate(const BranchSweep& a, const BranchSweep& b, PoolWeighting weighting) {
    const auto& sa = a.fit.samples;
    const auto& sb = b.fit.samples;
    if (sa.size() != sb.size() || a.points.size() != sa.size() || b.points.size() != sb.size()) {
        throw GridMismatch("pooled sweeps must share one time grid");
    }
    std::vector<Sample> pooled;
    pooled.reserve(sa.size());
    for (std::size_t j = 0; j < sa.size(); ++j) {
        if (sa[j].t != sb[j].t) {
            throw GridMismatch("pooled sweeps must share one time grid");
        }
        double wa = 1.0;
        double wb = 1.0;
        if (weighting == PoolWeighting::by_success_probability) {
            wa = static_cast<double>(a.points[j].trials) * a.points[j].n0;
            wb = static_cast<double>(b.points[j].trials) * b.points[j].n0;
        }
        const double total = wa + wb;
        Sample s;
        s.t = sa[j].t;
        s.n = (wa * sa[j].n + wb * sb[j].n) / total;
        if (sa[j].n_stderr && sb[j].n_stderr) {
            const double ea = wa * *sa[j].n_stderr;
            const double eb = wb * *sb[j].n_stderr;
            s.n_stderr = std::sqrt(ea * ea + eb * eb) / total;
        }
        pooled.push_back(s);
    }
    return PooledSweep{weighting, make_sweep_result(a.fit.observable_label, std::move(pooled))};
}

}  // namespace cheshire
