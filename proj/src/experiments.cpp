#include "cheshire/experiments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cheshire/errors.hpp"
#include "cheshire/observables.hpp"

namespace cheshire {
namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

const char* const kSourceClosedForm = "closed form";
const char* const kSourceIteFit = "published ITE fit";
const char* const kSourceDelayedFit = "published delayed-choice fit";
const char* const kSourceDelayedPooled = "published delayed-choice pooled fit (unscored)";
const char* const kSourceDeterministic = "deterministic sweep";

const char* const kSignNote =
    "no-exchange path-spin values are direct evaluations: Pi_u2*S2 = -1/2 and "
    "Pi_d1*S1 = +1/2; the published no-exchange table prints these two entries with "
    "the opposite signs";
const char* const kPooledNote =
    "pooled delayed-choice values are reported for comparison only: neither equal nor "
    "success-probability weighting reproduces the published pooled table, so these rows "
    "are not scored";

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

std::string grid_string(const TimeGrid& grid) {
    const auto& p = grid.points();
    return fmt(p.front()) + ":" + fmt(p.back()) + ":" + std::to_string(p.size());
}

ReportRow make_row(std::string label, PostState post, double analytic, double numerical,
                   std::optional<Reference> reference, Target target, double tolerance,
                   bool scored = true) {
    ReportRow row{std::move(label), to_string(post), analytic, numerical, std::move(reference),
                  target, tolerance, scored, false};
    row.evaluate();
    return row;
}

std::vector<double> analytic_values(const Selection& sel) {
    std::vector<double> out;
    for (const auto& wv : weak_value_table(sel)) {
        out.push_back(wv.value.real());
    }
    return out;
}

}  // namespace

const std::vector<double>& PublishedValues::ite_fit_exchange() {
    static const std::vector<double> v{0.00, 0.84, 0.82, 0.00, 0.48, -0.03, -0.05, -0.53};
    return v;
}

const std::vector<double>& PublishedValues::delayed_positions() {
    static const std::vector<double> v{0.00, 0.83, 0.83, 0.01};
    return v;
}

const std::vector<double>& PublishedValues::delayed_pooled() {
    static const std::vector<double> v{0.00, 0.83, 0.83, 0.01, 0.22, 0.18, 0.17, -0.35};
    return v;
}

std::vector<double> closed_form_weak_values(double alpha, PostState post) {
    if (post == PostState::exchange) {
        const double half_tan = 0.5 * std::tan(alpha);
        return {0.0, 1.0, 1.0, 0.0, half_tan, 0.0, 0.0, -half_tan};
    }
    return {0.0, 1.0, 1.0, 0.0, 0.0, -0.5, 0.5, 0.0};
}

void ReportRow::evaluate() {
    const double goal = (target == Target::reference && reference) ? reference->value : analytic;
    pass = std::abs(numerical - goal) <= tolerance;
}

int ExperimentReport::scored() const {
    int n = 0;
    for (const auto& r : rows) {
        n += r.scored ? 1 : 0;
    }
    return n;
}

int ExperimentReport::passed() const {
    int n = 0;
    for (const auto& r : rows) {
        n += (r.scored && r.pass) ? 1 : 0;
    }
    return n;
}

ExperimentReport exp_analytic_tables(double alpha) {
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2.0)) {
        throw DomainError("alpha must lie strictly inside (0, pi/2)");
    }
    ExperimentReport report;
    report.name = "analytic_tables";
    report.parameters = {{"alpha", fmt(alpha)}};
    const auto& labels = canonical_labels();
    for (const PostState post : {PostState::exchange, PostState::identity}) {
        const auto table = weak_value_table(Selection::canonical_pair(alpha, post));
        const auto closed = closed_form_weak_values(alpha, post);
        for (std::size_t k = 0; k < labels.size(); ++k) {
            const double re = table[k].value.real();
            report.rows.push_back(make_row(labels[k], post, re, re,
                                           Reference{closed[k], kSourceClosedForm},
                                           Target::reference, kExactTol));
        }
    }
    report.notes.emplace_back(kSignNote);
    return report;
}

std::vector<SurfaceResult> exp_rate_surfaces(int alpha_points, const TimeGrid& grid,
                                             bool include_endpoints) {
    const auto alphas = alpha_grid(alpha_points, include_endpoints);
    const StateVector post = post_exchange();
    std::vector<SurfaceResult> out;
    for (const auto& op : canonical_observables()) {
        out.push_back(surface(op, alphas, grid, post));
    }
    return out;
}

IteSweepResult exp_ite_sweeps(const TimeGrid& grid) {
    const Selection sel = Selection::canonical_pair(kQuarterPi, PostState::exchange);
    const bool published_window = grid == default_extraction_grid();
    const auto analytic = analytic_values(sel);
    const auto& published = PublishedValues::ite_fit_exchange();

    IteSweepResult out;
    out.report.name = "ite_sweeps";
    out.report.parameters = {{"alpha", fmt(kQuarterPi)},
                             {"grid", grid_string(grid)},
                             {"post", to_string(PostState::exchange)}};
    const auto ops = canonical_observables();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        out.sweeps.push_back(sweep(ops[k], grid, sel));
        const double est = out.sweeps.back().weak_value_estimate;
        if (published_window) {
            out.report.rows.push_back(make_row(ops[k].label(), PostState::exchange, analytic[k],
                                               est, Reference{published[k], kSourceIteFit},
                                               Target::reference, kReferenceTol));
        } else {
            out.report.rows.push_back(make_row(ops[k].label(), PostState::exchange, analytic[k],
                                               est, std::nullopt, Target::analytic, kWindowTol));
        }
    }
    if (!published_window) {
        out.report.notes.emplace_back(
            "non-default window: estimates scored against analytic weak values");
    }
    return out;
}

DelayedChoiceResult exp_delayed_choice(const TimeGrid& grid, std::uint64_t trials,
                                       std::uint64_t seed) {
    const SelectionPair selections = SelectionPair::at_alpha(kQuarterPi);
    const bool published_window = grid == default_extraction_grid();
    const auto analytic_ex = analytic_values(selections.exchange);
    const auto analytic_id = analytic_values(selections.identity);
    const auto& fit_ex = PublishedValues::ite_fit_exchange();
    const auto& pos_ex = PublishedValues::delayed_positions();
    const auto& pooled_ref = PublishedValues::delayed_pooled();

    DelayedChoiceResult out;
    const std::vector<std::pair<std::string, std::string>> params{
        {"alpha", fmt(kQuarterPi)},
        {"grid", grid_string(grid)},
        {"trials", std::to_string(trials)},
        {"seed", std::to_string(seed)},
        {"p_exchange", fmt(SwitchPolicy{}.p_exchange)}};
    out.exchange = {"delayed_exchange", params, {}, {}};
    out.identity = {"delayed_identity", params, {}, {}};
    out.pooled_equal = {"delayed_pooled_equal", params, {}, {kPooledNote}};
    out.pooled_by_success = {"delayed_pooled_by_success", params, {}, {kPooledNote}};
    out.identity.notes.emplace_back(kSignNote);

    const auto ops = canonical_observables();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const auto& op = ops[k];
        out.sweeps.push_back(branch_sweep(op, grid, trials, kernels::derive_seed(seed, k),
                                          selections));
        const auto& pair = out.sweeps.back();

        std::optional<Reference> ex_ref;
        if (published_window) {
            ex_ref = k < pos_ex.size() ? Reference{pos_ex[k], kSourceDelayedFit}
                                       : Reference{fit_ex[k], kSourceIteFit};
        } else {
            ex_ref = Reference{sweep(op, grid, selections.exchange).weak_value_estimate,
                               kSourceDeterministic};
        }
        out.exchange.rows.push_back(make_row(op.label(), PostState::exchange, analytic_ex[k],
                                             pair.exchange.fit.weak_value_estimate, ex_ref,
                                             Target::reference, kMonteCarloTol));

        const Reference id_ref{sweep(op, grid, selections.identity).weak_value_estimate,
                               kSourceDeterministic};
        out.identity.rows.push_back(make_row(op.label(), PostState::identity, analytic_id[k],
                                             pair.identity.fit.weak_value_estimate, id_ref,
                                             Target::reference, kMonteCarloTol));

        const double n0_ex = selections.exchange.n0();
        const double n0_id = selections.identity.n0();
        const auto add_pooled = [&](ExperimentReport& report, PoolWeighting w, double wa,
                                    double wb) {
            const auto pooled = pooled_estimate(pair.exchange, pair.identity, w);
            const double analytic = (wa * analytic_ex[k] + wb * analytic_id[k]) / (wa + wb);
            std::optional<Reference> ref;
            if (published_window) {
                ref = Reference{pooled_ref[k], kSourceDelayedPooled};
            }
            report.rows.push_back(make_row(op.label(), PostState::exchange, analytic,
                                           pooled.fit.weak_value_estimate, ref,
                                           Target::reference, kMonteCarloTol, false));
            report.rows.back().post_state = "pooled:" + to_string(w);
        };
        add_pooled(out.pooled_equal, PoolWeighting::equal, 1.0, 1.0);
        add_pooled(out.pooled_by_success, PoolWeighting::by_success_probability, n0_ex, n0_id);
    }
    return out;
}

}  // namespace cheshire
