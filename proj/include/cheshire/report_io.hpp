#pragma once

// CSV and JSON emission. Every numeric CSV cell carries 9 significant digits;
// a missing value is an empty cell in CSV and null in JSON.

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cheshire/delayed_choice.hpp"
#include "cheshire/experiments.hpp"
#include "cheshire/ite.hpp"
#include "cheshire/tsvf.hpp"

namespace cheshire {

std::string format_number(double x);

struct WeakValueRow {
    std::string observable;
    PostState post = PostState::exchange;
    Complex value;
    double analytic_re = 0.0;
    std::string source;
};

// Throws OrthogonalSelection when a post-state is orthogonal to preselect(alpha).
std::vector<WeakValueRow> weak_value_rows(double alpha, std::span<const PostState> posts);

// observable,post_state,re,im,analytic_re,source_eq
void write_weak_values_csv(std::ostream& os, std::span<const WeakValueRow> rows);
// t,transmissivity,n,n_stderr_or_blank
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
// alpha,t,n
void write_surface_csv(std::ostream& os, const SurfaceResult& surface);
void write_report_csv(std::ostream& os, const ExperimentReport& report);
// branch,t,transmissivity,n,n_stderr_or_blank,trials,coincidences
void write_branch_sweeps_csv(std::ostream& os, const BranchSweepPair& pair);

nlohmann::ordered_json to_json(std::span<const WeakValueRow> rows);
nlohmann::ordered_json to_json(const SweepResult& sweep);
nlohmann::ordered_json to_json(const SurfaceResult& surface);
nlohmann::ordered_json to_json(const ExperimentReport& report);
nlohmann::ordered_json to_json(const BranchSweepPair& pair);

}  // namespace cheshire
