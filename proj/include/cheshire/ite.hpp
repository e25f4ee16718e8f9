#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cheshire/kernels.hpp"
#include "cheshire/tensor_core.hpp"
#include "cheshire/tsvf.hpp"

namespace cheshire {

// Strictly increasing, finite, non-negative imaginary times.
class TimeGrid {
public:
    // Throws DomainError on an invalid point set.
    explicit TimeGrid(std::vector<double> points);

    // `count` evenly spaced points from t_min to t_max inclusive.
    static TimeGrid uniform(double t_min, double t_max, int count);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    std::vector<double> points_;
};

// 11 points on [0, 0.2]: the window used for weak-value extraction.
TimeGrid default_extraction_grid();
// 21 points on [0, 1]: the window used for rate surfaces.
TimeGrid default_surface_grid();

struct Sample {
    double t = 0.0;
    double n = 0.0;
    std::optional<double> n_stderr;  // set for Monte-Carlo samples
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
};

struct SweepResult {
    std::string observable_label;
    std::vector<Sample> samples;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    double weak_value_estimate = 0.0;  // -slope / 2
};

struct SurfaceResult {
    std::string observable_label;
    std::vector<double> alpha_grid;
    TimeGrid t_grid;
    // n[a][j]; empty where the post-selection probability vanishes.
    std::vector<std::vector<std::optional<double>>> n;
};

// Ordinary least squares of n against t with an intercept. Throws
// DegenerateFit for fewer than three samples or a single distinct t.
LinearFit fit_ols(std::span<const Sample> samples);

// Re<A>_w = -(1/2) dN/dt at t -> 0
inline double weak_value_from_slope(double slope) { return -0.5 * slope; }

// Fits the samples and fills the derived fields.
SweepResult make_sweep_result(std::string label, std::vector<Sample> samples);

// |<f|exp(-O t)|i>|^2 / |<f|i>|^2, evaluated through matexp_neg.
double coincidence_rate(const Operator& op, double t, const Selection& sel);

SweepResult sweep(const Operator& op, const TimeGrid& grid, const Selection& sel,
                  kernels::Execution exec = kernels::Execution::parallel);

// `interior` evenly spaced angles strictly inside (0, pi/2); with endpoints the
// grid also carries 0 and pi/2.
std::vector<double> alpha_grid(int interior, bool include_endpoints = false);

SurfaceResult surface(const Operator& op, std::span<const double> alphas, const TimeGrid& grid,
                      const StateVector& post,
                      kernels::Execution exec = kernels::Execution::parallel);

// T = exp(-2t)
double transmissivity(double t);
// Inverse of transmissivity; DomainError unless 0 < T <= 1.
double t_of_transmissivity(double T);

}  // namespace cheshire
