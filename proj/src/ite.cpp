#include "cheshire/ite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cheshire/errors.hpp"

namespace cheshire {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    for (std::size_t j = 0; j < points_.size(); ++j) {
        const double t = points_[j];
        if (!std::isfinite(t) || t < 0.0) {
            throw DomainError("time grid points must be finite and non-negative");
        }
        if (j > 0 && !(t > points_[j - 1])) {
            throw DomainError("time grid must be strictly increasing");
        }
    }
}

TimeGrid TimeGrid::uniform(double t_min, double t_max, int count) {
    if (count < 2 || !(t_max > t_min)) {
        throw DomainError("uniform grid needs at least two points and t_max > t_min");
    }
    std::vector<double> pts(count);
    const double step = (t_max - t_min) / (count - 1);
    for (int j = 0; j < count; ++j) {
        pts[j] = t_min + step * j;
    }
    pts.back() = t_max;
    return TimeGrid(std::move(pts));
}

TimeGrid default_extraction_grid() {
    return TimeGrid::uniform(0.0, 0.2, 11);
}

TimeGrid default_surface_grid() {
    return TimeGrid::uniform(0.0, 1.0, 21);
}

LinearFit fit_ols(std::span<const Sample> samples) {
    const std::size_t n = samples.size();
    if (n < 3) {
        throw DegenerateFit("least-squares fit needs at least three samples");
    }
    double t_mean = 0.0;
    double n_mean = 0.0;
    for (const auto& s : samples) {
        t_mean += s.t;
        n_mean += s.n;
    }
    t_mean /= static_cast<double>(n);
    n_mean /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& s : samples) {
        const double dt = s.t - t_mean;
        const double dn = s.n - n_mean;
        sxx += dt * dt;
        sxy += dt * dn;
        syy += dn * dn;
    }
    const auto [lo, hi] = std::minmax_element(
        samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    if (!(sxx > 0.0) || lo->t == hi->t) {
        throw DegenerateFit("least-squares fit needs at least two distinct t values");
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = n_mean - fit.slope * t_mean;
    double ss_res = 0.0;
    for (const auto& s : samples) {
        const double r = s.n - (fit.intercept + fit.slope * s.t);
        ss_res += r * r;
    }
    fit.slope_stderr = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
    // A constant response is fitted perfectly.
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

SweepResult make_sweep_result(std::string label, std::vector<Sample> samples) {
    const LinearFit fit = fit_ols(samples);
    SweepResult out;
    out.observable_label = std::move(label);
    out.samples = std::move(samples);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.slope_stderr = fit.slope_stderr;
    out.r_squared = fit.r_squared;
    out.weak_value_estimate = weak_value_from_slope(fit.slope);
    return out;
}

double coincidence_rate(const Operator& op, double t, const Selection& sel) {
    sel.require_weak_values();
    const Complex amp = inner(sel.post(), act(matexp_neg(op, t), sel.pre()));
    return std::norm(amp) / sel.n0();
}

SweepResult sweep(const Operator& op, const TimeGrid& grid, const Selection& sel,
                  kernels::Execution exec) {
    sel.require_weak_values();
    if (grid.size() < 3) {
        throw DegenerateFit("sweep needs at least three grid points");
    }
    const kernels::AmplitudeModel model(spectral(op), sel.pre(), sel.post());
    const auto rates = kernels::normalized_rates(model, sel.n0(), grid.points(), exec);
    std::vector<Sample> samples;
    samples.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        samples.push_back(Sample{grid.points()[j], rates[j], std::nullopt});
    }
    return make_sweep_result(op.label(), std::move(samples));
}

std::vector<double> alpha_grid(int interior, bool include_endpoints) {
    if (interior < 1) {
        throw DomainError("alpha grid needs at least one interior point");
    }
    const double step = std::numbers::pi / 2.0 / (interior + 1);
    std::vector<double> out;
    const int first = include_endpoints ? 0 : 1;
    const int last = include_endpoints ? interior + 1 : interior;
    for (int k = first; k <= last; ++k) {
        out.push_back(step * k);
    }
    if (include_endpoints) {
        out.back() = std::numbers::pi / 2.0;
    }
    return out;
}

SurfaceResult surface(const Operator& op, std::span<const double> alphas, const TimeGrid& grid,
                      const StateVector& post, kernels::Execution exec) {
    const auto cells =
        kernels::surface_cells(spectral(op), alphas, grid.points(), post, kOverlapEpsilon, exec);
    SurfaceResult out{op.label(), std::vector<double>(alphas.begin(), alphas.end()), grid, {}};
    const std::size_t cols = grid.size();
    out.n.reserve(alphas.size());
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        out.n.emplace_back(cells.begin() + a * cols, cells.begin() + (a + 1) * cols);
    }
    return out;
}

double transmissivity(double t) {
    if (!(t >= 0.0)) {
        throw DomainError("transmissivity needs t >= 0");
    }
    return std::exp(-2.0 * t);
}

double t_of_transmissivity(double T) {
    if (!(T > 0.0 && T <= 1.0)) {
        throw DomainError("transmissivity must lie in (0, 1]");
    }
    return -0.5 * std::log(T);
}

}  // namespace cheshire
