#include "cheshire/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "cheshire/errors.hpp"
#include "cheshire/experiments.hpp"
#include "cheshire/observables.hpp"
#include "cheshire/report_io.hpp"

namespace cheshire::cli {
namespace {

namespace fs = std::filesystem;

// Raised for anything the user can fix by changing flags or the config file.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Alpha at an endpoint of (0, pi/2): physically degenerate, not a typo.
class DegeneratePreselection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr double kEndpointTol = 1e-9;

struct RunConfig {
    std::string command;
    double alpha = std::numbers::pi / 4.0;
    std::string post;
    std::string observable;
    std::string grid;
    std::optional<double> t_max;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "csv";
    std::string output;
    std::string config;
    int alpha_points = kDefaultSurfaceAlphas;
    bool include_endpoints = false;
    double p_exchange = 0.5;
};

// Config keys that are boolean flags rather than valued options.
const std::set<std::string> kFlagKeys = {"include-endpoints"};

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", cfg.output, "Output file (directory for reproduce)");
    cmd->add_option("--config", cfg.config, "Flat key=value file; flags override it");
}

void add_alpha(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--alpha", cfg.alpha, "Pre-selection angle in radians, inside (0, pi/2)");
}

void add_post(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--post", cfg.post, "Post-selected state")
        ->check(CLI::IsMember({"exchange", "identity"}));
}

void add_observable(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--observable", cfg.observable, "Canonical observable label")
        ->required()
        ->check(CLI::IsMember(canonical_labels()));
}

CLI::Option* add_grid(CLI::App* cmd, RunConfig& cfg) {
    return cmd->add_option("--grid", cfg.grid, "Time grid t_min:t_max:points");
}

void add_monte_carlo(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--trials", cfg.trials, "Monte-Carlo trials per grid point")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "Master seed");
}

void build_app(CLI::App& app, RunConfig& cfg) {
    app.require_subcommand(1);

    auto* wv = app.add_subcommand("weak-value", "Exact weak-value table");
    add_alpha(wv, cfg);
    add_post(wv, cfg);
    add_output_options(wv, cfg);

    auto* sw = app.add_subcommand("sweep", "Deterministic coincidence-rate sweep and fit");
    add_alpha(sw, cfg);
    add_post(sw, cfg);
    add_observable(sw, cfg);
    auto* grid = add_grid(sw, cfg);
    auto* t_max = sw->add_option("--t-max", cfg.t_max, "Shorthand for --grid 0:T:11");
    grid->excludes(t_max);
    add_output_options(sw, cfg);

    auto* sf = app.add_subcommand("surface", "Coincidence-rate surface over (alpha, t)");
    add_post(sf, cfg);
    add_observable(sf, cfg);
    add_grid(sf, cfg);
    sf->add_option("--alpha-points", cfg.alpha_points, "Interior alpha samples")
        ->check(CLI::PositiveNumber);
    sf->add_flag("--include-endpoints", cfg.include_endpoints,
                 "Also evaluate alpha = 0 and alpha = pi/2");
    add_output_options(sf, cfg);

    auto* dc = app.add_subcommand("delayed", "Monte-Carlo delayed-choice sweep");
    add_alpha(dc, cfg);
    add_observable(dc, cfg);
    add_grid(dc, cfg);
    add_monte_carlo(dc, cfg);
    dc->add_option("--p-exchange", cfg.p_exchange, "Probability the switch emits 1")
        ->check(CLI::Range(0.0, 1.0));
    add_output_options(dc, cfg);

    auto* rp = app.add_subcommand("reproduce", "Run every experiment and write a report bundle");
    add_alpha(rp, cfg);
    add_grid(rp, cfg);
    add_monte_carlo(rp, cfg);
    rp->add_option("--alpha-points", cfg.alpha_points, "Interior alpha samples for surfaces")
        ->check(CLI::PositiveNumber);
    add_output_options(rp, cfg);

    for (auto* cmd : {wv, sw, sf, dc, rp}) {
        cmd->callback([&cfg, cmd] { cfg.command = cmd->get_name(); });
    }
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Flat `key = value` lines; `#` starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("config: cannot read '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config: line " + std::to_string(lineno) + " is not key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::optional<std::string> find_config_path(std::span<const std::string> args) {
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) {
            return args[k + 1];
        }
        if (args[k].rfind("--config=", 0) == 0) {
            return args[k].substr(9);
        }
    }
    return std::nullopt;
}

// Appends config entries for every key not already given as a flag.
std::vector<std::string> merge_config(std::span<const std::string> args) {
    std::vector<std::string> merged(args.begin(), args.end());
    const auto path = find_config_path(args);
    if (!path) {
        return merged;
    }
    std::set<std::string> given;
    for (const auto& a : args) {
        if (a.rfind("--", 0) == 0) {
            given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                       : a.find('=') - 2));
        }
    }
    for (const auto& [key, value] : read_config_file(*path)) {
        if (key == "config" || given.contains(key)) {
            continue;
        }
        if (kFlagKeys.contains(key)) {
            if (value == "true" || value == "1" || value == "yes") {
                merged.push_back("--" + key);
            } else if (value != "false" && value != "0" && value != "no") {
                throw UsageError("config: " + key + " expects true or false");
            }
            continue;
        }
        merged.push_back("--" + key);
        merged.push_back(value);
    }
    return merged;
}

TimeGrid parse_grid(const std::string& text, const TimeGrid& fallback) {
    if (text.empty()) {
        return fallback;
    }
    std::stringstream ss(text);
    std::string a;
    std::string b;
    std::string c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) ||
        c.find(':') != std::string::npos) {
        throw UsageError("grid: expected t_min:t_max:points, got '" + text + "'");
    }
    try {
        std::size_t pos_a = 0;
        std::size_t pos_b = 0;
        std::size_t pos_c = 0;
        const double t_min = std::stod(a, &pos_a);
        const double t_max = std::stod(b, &pos_b);
        const int points = std::stoi(c, &pos_c);
        if (pos_a != a.size() || pos_b != b.size() || pos_c != c.size()) {
            throw std::invalid_argument("trailing characters");
        }
        if (points < 3) {
            throw UsageError("grid: at least 3 points are needed for a fit");
        }
        if (!(t_min >= 0.0) || !(t_max > t_min)) {
            throw UsageError("grid: need 0 <= t_min < t_max");
        }
        return TimeGrid::uniform(t_min, t_max, points);
    } catch (const std::invalid_argument&) {
        throw UsageError("grid: cannot parse '" + text + "'");
    } catch (const std::out_of_range&) {
        throw UsageError("grid: value out of range in '" + text + "'");
    }
}

void check_alpha(double alpha) {
    const double half_pi = std::numbers::pi / 2.0;
    if (std::abs(alpha) <= kEndpointTol) {
        throw DegeneratePreselection(
            "alpha: degenerate pre-selection at alpha = 0 (the path-spin weak values vanish "
            "identically)");
    }
    if (std::abs(alpha - half_pi) <= kEndpointTol) {
        throw DegeneratePreselection(
            "alpha: degenerate pre-selection at alpha = pi/2 (post-selection probability is 0)");
    }
    if (!(alpha > 0.0 && alpha < half_pi)) {
        throw UsageError("alpha: " + format_number(alpha) + " is outside (0, pi/2)");
    }
}

PostState parse_post(const std::string& post) {
    return post == "identity" ? PostState::identity : PostState::exchange;
}

// Writes to --output when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out,
          const std::function<void(std::ostream&)>& write) {
    if (cfg.output.empty()) {
        write(out);
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        throw IoError("output: cannot open '" + cfg.output + "' for writing");
    }
    write(file);
    if (!file) {
        throw IoError("output: write to '" + cfg.output + "' failed");
    }
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& write) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("output: cannot open '" + path.string() + "' for writing");
    }
    write(file);
    if (!file) {
        throw IoError("output: write to '" + path.string() + "' failed");
    }
}

void dump_json(std::ostream& os, const nlohmann::ordered_json& j) {
    os << j.dump(2) << '\n';
}

void print_fit(std::ostream& os, const std::string& prefix, const SweepResult& s) {
    os << prefix << s.observable_label << ": slope=" << format_number(s.slope)
       << " intercept=" << format_number(s.intercept)
       << " slope_stderr=" << format_number(s.slope_stderr)
       << " r_squared=" << format_number(s.r_squared)
       << " weak_value_estimate=" << format_number(s.weak_value_estimate) << '\n';
}

int cmd_weak_value(const RunConfig& cfg, std::ostream& out) {
    check_alpha(cfg.alpha);
    std::vector<PostState> posts{PostState::exchange, PostState::identity};
    if (!cfg.post.empty()) {
        posts = {parse_post(cfg.post)};
    }
    const auto rows = weak_value_rows(cfg.alpha, posts);
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            dump_json(os, to_json(rows));
        } else {
            write_weak_values_csv(os, rows);
        }
    });
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_alpha(cfg.alpha);
    if (cfg.t_max && !(*cfg.t_max > 0.0)) {
        throw UsageError("t-max: must be positive");
    }
    const TimeGrid grid = cfg.t_max ? TimeGrid::uniform(0.0, *cfg.t_max, 11)
                                    : parse_grid(cfg.grid, default_extraction_grid());
    const Selection sel = Selection::canonical_pair(cfg.alpha, parse_post(cfg.post));
    const auto result = sweep(observable_by_label(cfg.observable), grid, sel);
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            dump_json(os, to_json(result));
        } else {
            write_sweep_csv(os, result);
        }
    });
    if (cfg.format == "csv") {
        print_fit(err, "", result);
    }
    return kExitOk;
}

int cmd_surface(const RunConfig& cfg, std::ostream& out) {
    const TimeGrid grid = parse_grid(cfg.grid, default_surface_grid());
    const auto alphas = alpha_grid(cfg.alpha_points, cfg.include_endpoints);
    const auto result =
        surface(observable_by_label(cfg.observable), alphas, grid, post_state(parse_post(cfg.post)));
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            dump_json(os, to_json(result));
        } else {
            write_surface_csv(os, result);
        }
    });
    return kExitOk;
}

int cmd_delayed(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_alpha(cfg.alpha);
    const TimeGrid grid = parse_grid(cfg.grid, default_extraction_grid());
    const auto selections = SelectionPair::at_alpha(cfg.alpha);
    const auto pair = branch_sweep(observable_by_label(cfg.observable), grid, cfg.trials,
                                   cfg.seed, selections, SwitchPolicy{cfg.p_exchange});
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            auto j = to_json(pair);
            for (const auto w : {PoolWeighting::equal, PoolWeighting::by_success_probability}) {
                j["pooled_" + to_string(w)] = to_json(pooled_estimate(pair.exchange, pair.identity, w).fit);
            }
            dump_json(os, j);
        } else {
            write_branch_sweeps_csv(os, pair);
        }
    });
    if (cfg.format == "csv") {
        print_fit(err, "exchange ", pair.exchange.fit);
        print_fit(err, "identity ", pair.identity.fit);
    }
    return kExitOk;
}

std::string report_line(const ExperimentReport& r) {
    std::ostringstream os;
    os << r.name << ": ";
    if (r.scored() == 0) {
        os << "unscored (" << r.rows.size() << " rows)";
    } else {
        os << r.passed() << "/" << r.scored() << " scored rows pass";
    }
    return os.str();
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out) {
    check_alpha(cfg.alpha);
    const TimeGrid grid = parse_grid(cfg.grid, default_extraction_grid());

    fs::path dir = cfg.output;
    if (dir.empty()) {
        const char* env = std::getenv(kOutputDirEnv);
        dir = (env && *env) ? fs::path(env) : fs::path(kDefaultOutputDir);
    }
    std::error_code ec;
    for (const char* sub : {"", "sweeps", "surfaces", "delayed"}) {
        fs::create_directories(dir / sub, ec);
        if (ec) {
            throw IoError("output: cannot create '" + (dir / sub).string() + "': " + ec.message());
        }
    }

    const bool json = cfg.format == "json";
    const std::string ext = json ? ".json" : ".csv";

    const std::vector<PostState> posts{PostState::exchange, PostState::identity};
    const auto wv_rows = weak_value_rows(cfg.alpha, posts);
    write_file(dir / ("weak_values" + ext), [&](std::ostream& os) {
        json ? dump_json(os, to_json(wv_rows)) : write_weak_values_csv(os, wv_rows);
    });

    const auto analytic = exp_analytic_tables(cfg.alpha);
    const auto ite = exp_ite_sweeps(grid);
    const auto delayed = exp_delayed_choice(grid, cfg.trials, cfg.seed);
    const auto surfaces = exp_rate_surfaces(cfg.alpha_points);

    const std::vector<const ExperimentReport*> reports{
        &analytic, &ite.report, &delayed.exchange, &delayed.identity, &delayed.pooled_equal,
        &delayed.pooled_by_success};
    for (const auto* r : reports) {
        write_file(dir / ("report_" + r->name + ext), [&](std::ostream& os) {
            json ? dump_json(os, to_json(*r)) : write_report_csv(os, *r);
        });
    }
    for (const auto& s : ite.sweeps) {
        write_file(dir / "sweeps" / ("exchange_" + label_slug(s.observable_label) + ext),
                   [&](std::ostream& os) { json ? dump_json(os, to_json(s)) : write_sweep_csv(os, s); });
    }
    for (const auto& s : surfaces) {
        write_file(dir / "surfaces" / (label_slug(s.observable_label) + ext), [&](std::ostream& os) {
            json ? dump_json(os, to_json(s)) : write_surface_csv(os, s);
        });
    }
    for (const auto& pair : delayed.sweeps) {
        for (const BranchSweep* b : {&pair.exchange, &pair.identity}) {
            const auto name = to_string(b->branch) + "_" + label_slug(b->fit.observable_label) + ext;
            write_file(dir / "delayed" / name, [&](std::ostream& os) {
                json ? dump_json(os, to_json(b->fit)) : write_sweep_csv(os, b->fit);
            });
        }
    }

    int scored = 0;
    int passed = 0;
    std::ostringstream summary;
    for (const auto* r : reports) {
        scored += r->scored();
        passed += r->passed();
        summary << report_line(*r) << '\n';
    }
    std::set<std::string> notes;
    for (const auto* r : reports) {
        notes.insert(r->notes.begin(), r->notes.end());
    }
    for (const auto& n : notes) {
        summary << "note: " << n << '\n';
    }
    const bool ok = passed == scored;
    summary << "overall: " << (ok ? "PASS" : "FAIL") << " (" << passed << "/" << scored
            << " scored rows)\n";
    write_file(dir / "summary.txt", [&](std::ostream& os) { os << summary.str(); });
    out << summary.str();
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Two-atom spin-exchange weak-value simulator", "cheshire"};
    build_app(app, cfg);

    try {
        const auto merged = merge_config(args);
        std::vector<const char*> argv{"cheshire"};
        for (const auto& a : merged) {
            argv.push_back(a.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (cfg.command == "weak-value") {
            return cmd_weak_value(cfg, out);
        }
        if (cfg.command == "sweep") {
            return cmd_sweep(cfg, out, err);
        }
        if (cfg.command == "surface") {
            return cmd_surface(cfg, out);
        }
        if (cfg.command == "delayed") {
            return cmd_delayed(cfg, out, err);
        }
        if (cfg.command == "reproduce") {
            return cmd_reproduce(cfg, out);
        }
        err << "error: no command given\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegeneratePreselection& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const OrthogonalSelection& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace cheshire::cli
