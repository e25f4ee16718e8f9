#include "cheshire/report_io.hpp"

#include <charconv>
#include <cmath>

#include "cheshire/observables.hpp"

namespace cheshire {
namespace {

using nlohmann::ordered_json;

ordered_json number_or_null(double x) {
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

ordered_json sample_json(const Sample& s) {
    ordered_json j;
    j["t"] = s.t;
    j["transmissivity"] = transmissivity(s.t);
    j["n"] = s.n;
    j["n_stderr"] = s.n_stderr ? number_or_null(*s.n_stderr) : ordered_json(nullptr);
    return j;
}

void write_sample_row(std::ostream& os, const Sample& s) {
    os << format_number(s.t) << ',' << format_number(transmissivity(s.t)) << ','
       << format_number(s.n) << ',' << (s.n_stderr ? format_number(*s.n_stderr) : "");
}

ordered_json branch_json(const BranchSweep& b) {
    ordered_json j;
    j["branch"] = to_string(b.branch);
    j["fit"] = to_json(b.fit);
    ordered_json points = ordered_json::array();
    for (const auto& p : b.points) {
        points.push_back({{"trials", p.trials},
                          {"coincidences", p.coincidences},
                          {"n_hat", p.n_hat},
                          {"n_stderr", number_or_null(p.n_stderr)},
                          {"n0", p.n0}});
    }
    j["points"] = std::move(points);
    return j;
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) {
        return "";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::vector<WeakValueRow> weak_value_rows(double alpha, std::span<const PostState> posts) {
    std::vector<WeakValueRow> out;
    for (const PostState post : posts) {
        const auto table = weak_value_table(Selection::canonical_pair(alpha, post));
        const auto closed = closed_form_weak_values(alpha, post);
        for (std::size_t k = 0; k < table.size(); ++k) {
            out.push_back(WeakValueRow{table[k].observable_label, post, table[k].value,
                                       closed[k], "closed form " + to_string(post)});
        }
    }
    return out;
}

void write_weak_values_csv(std::ostream& os, std::span<const WeakValueRow> rows) {
    os << "observable,post_state,re,im,analytic_re,source_eq\n";
    for (const auto& r : rows) {
        os << r.observable << ',' << to_string(r.post) << ',' << format_number(r.value.real())
           << ',' << format_number(r.value.imag()) << ',' << format_number(r.analytic_re) << ','
           << r.source << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "t,transmissivity,n,n_stderr_or_blank\n";
    for (const auto& s : sweep.samples) {
        write_sample_row(os, s);
        os << '\n';
    }
}

void write_surface_csv(std::ostream& os, const SurfaceResult& surface) {
    os << "alpha,t,n\n";
    const auto& ts = surface.t_grid.points();
    for (std::size_t a = 0; a < surface.alpha_grid.size(); ++a) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const auto& cell = surface.n[a][j];
            os << format_number(surface.alpha_grid[a]) << ',' << format_number(ts[j]) << ','
               << (cell ? format_number(*cell) : "") << '\n';
        }
    }
}

void write_report_csv(std::ostream& os, const ExperimentReport& report) {
    os << "observable,post_state,analytic,numerical,reference,reference_source,target,"
          "tolerance,scored,pass\n";
    for (const auto& r : report.rows) {
        os << r.observable_label << ',' << r.post_state << ',' << format_number(r.analytic) << ','
           << format_number(r.numerical) << ','
           << (r.reference ? format_number(r.reference->value) : "") << ','
           << (r.reference ? r.reference->source : "") << ','
           << (r.target == Target::analytic ? "analytic" : "reference") << ','
           << format_number(r.tolerance) << ',' << (r.scored ? "yes" : "no") << ','
           << (r.pass ? "pass" : "fail") << '\n';
    }
}

void write_branch_sweeps_csv(std::ostream& os, const BranchSweepPair& pair) {
    os << "branch,t,transmissivity,n,n_stderr_or_blank,trials,coincidences\n";
    for (const BranchSweep* b : {&pair.exchange, &pair.identity}) {
        for (std::size_t j = 0; j < b->fit.samples.size(); ++j) {
            os << to_string(b->branch) << ',';
            write_sample_row(os, b->fit.samples[j]);
            os << ',' << b->points[j].trials << ',' << b->points[j].coincidences << '\n';
        }
    }
}

ordered_json to_json(std::span<const WeakValueRow> rows) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
        out.push_back({{"observable", r.observable},
                       {"post_state", to_string(r.post)},
                       {"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"analytic_re", r.analytic_re},
                       {"source_eq", r.source}});
    }
    return out;
}

ordered_json to_json(const SweepResult& sweep) {
    ordered_json j;
    j["observable"] = sweep.observable_label;
    j["slope"] = sweep.slope;
    j["intercept"] = sweep.intercept;
    j["slope_stderr"] = number_or_null(sweep.slope_stderr);
    j["r_squared"] = sweep.r_squared;
    j["weak_value_estimate"] = sweep.weak_value_estimate;
    ordered_json samples = ordered_json::array();
    for (const auto& s : sweep.samples) {
        samples.push_back(sample_json(s));
    }
    j["samples"] = std::move(samples);
    return j;
}

ordered_json to_json(const SurfaceResult& surface) {
    ordered_json j;
    j["observable"] = surface.observable_label;
    j["alpha"] = surface.alpha_grid;
    j["t"] = surface.t_grid.points();
    ordered_json rows = ordered_json::array();
    for (const auto& row : surface.n) {
        ordered_json r = ordered_json::array();
        for (const auto& cell : row) {
            r.push_back(cell ? ordered_json(*cell) : ordered_json(nullptr));
        }
        rows.push_back(std::move(r));
    }
    j["n"] = std::move(rows);
    return j;
}

ordered_json to_json(const ExperimentReport& report) {
    ordered_json j;
    j["name"] = report.name;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : report.parameters) {
        params[k] = v;
    }
    j["parameters"] = std::move(params);
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        ordered_json row;
        row["observable"] = r.observable_label;
        row["post_state"] = r.post_state;
        row["analytic"] = r.analytic;
        row["numerical"] = r.numerical;
        if (r.reference) {
            row["reference"] = {{"value", r.reference->value}, {"source", r.reference->source}};
        } else {
            row["reference"] = nullptr;
        }
        row["target"] = r.target == Target::analytic ? "analytic" : "reference";
        row["tolerance"] = r.tolerance;
        row["scored"] = r.scored;
        row["pass"] = r.pass;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["notes"] = report.notes;
    j["scored"] = report.scored();
    j["passed"] = report.passed();
    return j;
}

ordered_json to_json(const BranchSweepPair& pair) {
    return {{"observable", pair.exchange.fit.observable_label},
            {"exchange", branch_json(pair.exchange)},
            {"identity", branch_json(pair.identity)}};
}

}  // namespace cheshire
