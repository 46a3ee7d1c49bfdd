#include "ptentropy/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ptentropy/eigenstates.hpp"
#include "ptentropy/errors.hpp"
#include "ptentropy/selftest.hpp"

#ifndef PTENTROPY_VERSION
#define PTENTROPY_VERSION "dev"
#endif

namespace pt::cli {

namespace {

using eigenstates::HyperbolicPTSpec;
using entropy::HptState;
using nlohmann::json;

class HelpRequested : public UsageError {
public:
    explicit HelpRequested(const std::string& text) : UsageError(text) {}
};

const char* subcommand_name(Subcommand s) {
    switch (s) {
        case Subcommand::Ground: return "ground";
        case Subcommand::Excited: return "excited";
        case Subcommand::Table1: return "table1";
        case Subcommand::BbmScan: return "bbm-scan";
        case Subcommand::Density: return "density";
        case Subcommand::Carpet: return "carpet";
        case Subcommand::Selftest: return "selftest";
    }
    return "?";
}

const char* format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Pgm: return "pgm";
    }
    return "?";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<entropy::StateEntropies> compute_states(const std::vector<int>& ns, HptState state,
                                                    const RunConfig& config) {
    std::vector<entropy::StateEntropies> out(ns.size());
    parallel_for(ns.size(), config.threads, [&](std::size_t i) {
        out[i] = entropy::hpt_state_entropies(HyperbolicPTSpec(ns[i]), state, config.tol);
    });
    return out;
}

std::vector<int> iota_range(int lo, int hi) {
    std::vector<int> v;
    for (int n = lo; n <= hi; ++n) v.push_back(n);
    return v;
}

report::Table bbm_table(const std::vector<entropy::StateEntropies>& states) {
    report::Table t{{"n", "S_pos", "S_mom", "S_pos+S_mom", "1+ln(pi)", "margin"}, {}};
    for (const auto& s : states) {
        t.rows.push_back({static_cast<double>(s.n), s.s_pos.value, s.s_mom.value, s.report.sum,
                          s.report.bbm_bound, s.report.margin});
    }
    return t;
}

json states_summary(const std::vector<entropy::StateEntropies>& states) {
    json rows = json::array();
    for (const auto& s : states) {
        rows.push_back({{"n", s.n},
                        {"state", entropy::to_string(s.state)},
                        {"bbm", entropy::to_string(s.report.status)},
                        {"err_estimate", s.report.err_estimate},
                        {"position_norm", s.position_norm},
                        {"momentum_norm", s.momentum_norm},
                        {"p_range", std::isfinite(s.p_range) ? json(s.p_range) : json("infinite")}});
    }
    return rows;
}

void validate(const RunConfig& c) {
    auto fail = [](const std::string& m) { throw UsageError(m); };
    switch (c.subcommand) {
        case Subcommand::Ground:
            if (c.n < 1) fail("--n must be >= 1");
            break;
        case Subcommand::Excited:
        case Subcommand::Table1:
            if (c.n_lo < 2) fail("first excited state requires n >= 2");
            if (c.n_hi < c.n_lo) fail("empty n range");
            break;
        case Subcommand::BbmScan:
            if (c.n_max < (c.state == HptState::Ground ? 1 : 2)) fail("--n-max too small for the state");
            break;
        case Subcommand::Density:
            if (c.n < 1) fail("--n must be >= 1");
            if (c.state == HptState::Excited && c.n < 2) fail("first excited state requires n >= 2");
            if (c.space == Space::Both) fail("density needs --space pos or mom");
            if (!(c.grid.hi > c.grid.lo) || c.grid.count < 2) fail("--grid needs lo < hi and count >= 2");
            break;
        case Subcommand::Carpet:
            if (!(c.rho > 1.0)) fail("--rho must be > 1");
            if (!(c.alpha > 0.0)) fail("--alpha must be > 0");
            if (!std::isfinite(c.gamma_re) || !std::isfinite(c.gamma_im)) fail("--gamma must be finite");
            if (c.n_states < 1) fail("--n-states must be >= 1");
            if (c.x_points < 2 || c.t_points < 2) fail("--x-points and --t-points must be >= 2");
            if (c.t_max && !(*c.t_max > 0.0)) fail("--t-max must be > 0");
            break;
        case Subcommand::Selftest:
            if (!c.inject_fault.empty() && c.inject_fault != "fourier-sign") {
                fail("unknown fault '" + c.inject_fault + "' (known: fourier-sign)");
            }
            break;
    }
    if (!(c.tol.norm > 0.0) || !(c.tol.entropy > 0.0)) fail("--tol must be > 0");
    if (c.format == OutputFormat::Pgm && c.subcommand != Subcommand::Carpet) {
        fail("pgm output is only available for carpet");
    }
}

OutputFormat resolve_format(const RunConfig& c) {
    if (c.format) return *c.format;
    auto ends_with = [&](const char* ext) {
        const std::string e(ext);
        return c.out.size() >= e.size() && c.out.compare(c.out.size() - e.size(), e.size(), e) == 0;
    };
    if (ends_with(".json")) return OutputFormat::Json;
    if (ends_with(".pgm")) return OutputFormat::Pgm;
    if (ends_with(".csv")) return OutputFormat::Csv;
    return c.subcommand == Subcommand::Carpet ? OutputFormat::Pgm : OutputFormat::Csv;
}

json config_to_json(const RunConfig& c) {
    json j{{"subcommand", subcommand_name(c.subcommand)},
           {"tolerances", {{"norm", c.tol.norm}, {"entropy", c.tol.entropy}}}};
    switch (c.subcommand) {
        case Subcommand::Ground:
            j["n"] = c.n;
            j["space"] = c.space == Space::Position ? "pos" : c.space == Space::Momentum ? "mom" : "both";
            break;
        case Subcommand::Excited:
        case Subcommand::Table1:
            j["n_range"] = {c.n_lo, c.n_hi};
            break;
        case Subcommand::BbmScan:
            j["state"] = entropy::to_string(c.state);
            j["n_max"] = c.n_max;
            break;
        case Subcommand::Density:
            j["state"] = entropy::to_string(c.state);
            j["space"] = c.space == Space::Position ? "pos" : "mom";
            j["n"] = c.n;
            j["grid"] = {{"lo", c.grid.lo}, {"hi", c.grid.hi}, {"count", c.grid.count}};
            break;
        case Subcommand::Carpet:
            j["rho"] = c.rho;
            j["alpha"] = c.alpha;
            j["gamma"] = {c.gamma_re, c.gamma_im};
            j["n_states"] = c.n_states;
            j["x_points"] = c.x_points;
            j["t_points"] = c.t_points;
            j["t_max"] = c.t_max ? json(*c.t_max) : json(nullptr);
            break;
        case Subcommand::Selftest:
            j["inject_fault"] = c.inject_fault;
            break;
    }
    return j;
}

void write_manifest(const std::string& path, const RunConfig& config, OutputFormat format,
                    const json& summary, double seconds, int argc, const char* const* argv) {
    json args = json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    const json manifest{{"tool", "ptentropy"},
                        {"version", PTENTROPY_VERSION},
                        {"arguments", args},
                        {"config", config_to_json(config)},
                        {"output", config.out},
                        {"format", format_name(format)},
                        {"wall_time_seconds", seconds},
                        {"result", summary}};
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write manifest " + path);
    os << manifest.dump(2) << '\n';
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos) throw UsageError("grid must be lo:hi:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        GridSpec g;
        g.lo = std::stod(text.substr(0, a));
        g.hi = std::stod(text.substr(a + 1, b - a - 1));
        const std::string count = text.substr(b + 1);
        const long long c = std::stoll(count, &used);
        if (used != count.size() || c < 2) throw UsageError("grid count must be an integer >= 2");
        g.count = static_cast<std::size_t>(c);
        if (!(g.hi > g.lo) || !std::isfinite(g.lo) || !std::isfinite(g.hi)) {
            throw UsageError("grid needs finite lo < hi");
        }
        return g;
    } catch (const std::logic_error&) {
        throw UsageError("grid must be lo:hi:count, got '" + text + "'");
    }
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a = text.substr(0, dots);
        const std::string b = text.substr(dots + 2);
        const int lo = std::stoi(a, &used_a);
        const int hi = std::stoi(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) throw UsageError("bad range");
        if (hi < lo) throw UsageError("range '" + text + "' is empty");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("range must be a..b, got '" + text + "'");
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty() || key == "config") {
            throw UsageError(path + ":" + std::to_string(line_no) + ": invalid key");
        }
        entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return entries;
}

RunConfig parse_command_line(int argc, const char* const* argv) {
    // Config-file values are spliced in right after the subcommand, so any
    // flag repeated on the command line wins (options keep the last value).
    std::vector<std::string> args(argv, argv + argc);
    for (std::size_t i = 2; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
        if (!path.empty()) {
            std::vector<std::string> injected;
            for (const auto& [k, v] : read_config_file(path)) injected.push_back("--" + k + "=" + v);
            args.insert(args.begin() + 2, injected.begin(), injected.end());
            break;
        }
    }

    RunConfig c;
    c.tol = entropy::Tolerances::from_environment();
    std::string space = "both";
    std::string state = "ground";
    std::string grid;
    std::string n_range;
    std::string format;
    std::optional<double> tol;
    std::optional<double> t_max;
    std::optional<int> n_opt;
    std::string config_path;

    CLI::App app{"Shannon entropies of Pöschl-Teller bound states, BBM checks and entropy carpets",
                 "ptentropy"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(PTENTROPY_VERSION));

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Output path (a JSON manifest is written beside it)");
        sub->add_option("--format", format, "Output format: csv, json or pgm")
            ->check(CLI::IsMember({"csv", "json", "pgm"}));
        sub->add_option("--tol", tol, "Quadrature tolerance (overrides PTENTROPY_TOL)");
        sub->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
        sub->add_option("--config", config_path, "Flat key = value file with default option values");
    };

    auto* ground = app.add_subcommand("ground", "Ground-state entropies of the hyperbolic well");
    ground->add_option("--n", n_opt, "Well strength n >= 1")->required();
    ground->add_option("--space", space, "pos, mom or both")->check(CLI::IsMember({"pos", "mom", "both"}));
    common(ground);

    auto* excited = app.add_subcommand("excited", "First-excited-state entropies");
    auto* excited_n = excited->add_option("--n", n_opt, "Well strength n >= 2");
    excited->add_option("--n-range", n_range, "Range a..b of well strengths")->excludes(excited_n);
    common(excited);

    auto* table1 = app.add_subcommand("table1", "BBM table for the first excited state");
    table1->add_option("--n-range", n_range, "Range a..b (default 2..13)");
    common(table1);

    auto* scan = app.add_subcommand("bbm-scan", "S_pos + S_mom against n");
    scan->add_option("--state", state, "ground or excited")->required()->check(CLI::IsMember({"ground", "excited"}));
    scan->add_option("--n-max", c.n_max, "Largest n (default 20)");
    common(scan);

    auto* density = app.add_subcommand("density", "Sampled density and entropy density");
    density->add_option("--state", state, "ground or excited")->check(CLI::IsMember({"ground", "excited"}));
    density->add_option("--space", space, "pos or mom")->check(CLI::IsMember({"pos", "mom", "both"}));
    density->add_option("--n", n_opt, "Well strength")->required();
    density->add_option("--grid", grid, "lo:hi:count (default -10:10:201)");
    common(density);

    auto* carpet = app.add_subcommand("carpet", "Entropy-density carpet of the trigonometric coherent state");
    carpet->add_option("--rho", c.rho, "Barrier strength rho > 1")->required();
    carpet->add_option("--alpha", c.alpha, "Inverse length alpha > 0")->required();
    carpet->add_option("--gamma", c.gamma_re, "Coherence parameter (real part)")->required();
    carpet->add_option("--gamma-im", c.gamma_im, "Coherence parameter (imaginary part)");
    carpet->add_option("--n-states", c.n_states, "Eigenstates in the superposition")->required();
    carpet->add_option("--x-points", c.x_points, "Position samples (default 400)");
    carpet->add_option("--t-points", c.t_points, "Time samples (default 400)");
    carpet->add_option("--t-max", t_max, "Final time (default 2 pi / alpha^2)");
    common(carpet);

    auto* self = app.add_subcommand("selftest", "Run acceptance criteria and invariant checks");
    self->add_option("--inject-fault", c.inject_fault, "Deliberate defect to verify detection: fourier-sign");
    common(self);

    std::vector<const char*> raw;
    raw.reserve(args.size());
    for (const auto& a : args) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested(std::string(PTENTROPY_VERSION) + "\n");
    } catch (const CLI::ParseError& e) {
        std::string help;
        for (auto* sub : app.get_subcommands()) help = sub->help();
        throw UsageError(e.what() + (help.empty() ? std::string() : "\n" + help));
    }

    const auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name == "ground") c.subcommand = Subcommand::Ground;
    else if (name == "excited") c.subcommand = Subcommand::Excited;
    else if (name == "table1") c.subcommand = Subcommand::Table1;
    else if (name == "bbm-scan") c.subcommand = Subcommand::BbmScan;
    else if (name == "density") c.subcommand = Subcommand::Density;
    else if (name == "carpet") c.subcommand = Subcommand::Carpet;
    else c.subcommand = Subcommand::Selftest;

    c.space = space == "pos" ? Space::Position : space == "mom" ? Space::Momentum : Space::Both;
    c.state = state == "excited" ? HptState::Excited : HptState::Ground;
    if (n_opt) c.n = *n_opt;
    if (!grid.empty()) c.grid = parse_grid(grid);
    if (c.subcommand == Subcommand::Excited) {
        if (!n_range.empty()) {
            std::tie(c.n_lo, c.n_hi) = parse_range(n_range);
        } else if (n_opt) {
            c.n_lo = c.n_hi = *n_opt;
        } else {
            throw UsageError("excited needs --n or --n-range");
        }
    } else if (c.subcommand == Subcommand::Table1 && !n_range.empty()) {
        std::tie(c.n_lo, c.n_hi) = parse_range(n_range);
    }
    if (!format.empty()) {
        c.format = format == "csv" ? OutputFormat::Csv : format == "json" ? OutputFormat::Json : OutputFormat::Pgm;
    }
    if (tol) c.tol.norm = c.tol.entropy = *tol;
    c.t_max = t_max;
    validate(c);
    return c;
}

TableRun run_ground(const RunConfig& config) {
    const auto states = compute_states({config.n}, HptState::Ground, config);
    const auto& s = states.front();
    report::Table t;
    std::vector<double> row{static_cast<double>(s.n)};
    t.columns.push_back("n");
    if (config.space != Space::Momentum) {
        t.columns.insert(t.columns.end(), {"S_pos", "S_pos_quadrature"});
        row.insert(row.end(), {s.s_pos_analytic, s.s_pos.value});
    }
    if (config.space != Space::Position) {
        t.columns.push_back("S_mom");
        row.push_back(s.s_mom.value);
    }
    if (config.space == Space::Both) {
        t.columns.insert(t.columns.end(), {"S_pos+S_mom", "1+ln(pi)", "margin"});
        row.insert(row.end(), {s.report.sum, s.report.bbm_bound, s.report.margin});
    }
    t.rows.push_back(std::move(row));
    return {t, {{"states", states_summary(states)}}};
}

TableRun run_excited(const RunConfig& config) {
    const auto states = compute_states(iota_range(config.n_lo, config.n_hi), HptState::Excited, config);
    return {bbm_table(states), {{"states", states_summary(states)}}};
}

TableRun run_table1(const RunConfig& config) {
    RunConfig c = config;
    if (c.n_lo < 2) throw UsageError("first excited state requires n >= 2");
    return run_excited(c);
}

TableRun run_bbm_scan(const RunConfig& config) {
    const bool ground = config.state == HptState::Ground;
    const auto states = compute_states(iota_range(ground ? 1 : 2, config.n_max), config.state, config);
    report::Table t{{"n", "S_pos", "S_mom", "S_pos+S_mom", "margin"}, {}};
    if (ground) t.columns.insert(t.columns.begin() + 2, "S_pos_quadrature");
    bool decreasing = true;
    bool above = true;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        // Ground state: closed-form S_pos, with quadrature as a cross-check column.
        const double s_pos = ground ? s.s_pos_analytic : s.s_pos.value;
        const double sum = s_pos + s.s_mom.value;
        std::vector<double> row{static_cast<double>(s.n), s_pos};
        if (ground) row.push_back(s.s_pos.value);
        row.insert(row.end(), {s.s_mom.value, sum, sum - entropy::kBbmBound});
        if (i > 0 && !(sum < t.rows.back()[ground ? 4 : 3])) decreasing = false;
        if (!(sum > entropy::kBbmBound)) above = false;
        t.rows.push_back(std::move(row));
    }
    return {t,
            {{"trend", decreasing ? "decreasing" : "not-decreasing"},
             {"all_above_bound", above},
             {"states", states_summary(states)}}};
}

TableRun run_density(const RunConfig& config) {
    const HyperbolicPTSpec spec(config.n);
    const auto grid = numerics::Grid1D::uniform(config.grid.lo, config.grid.hi, config.grid.count);
    std::function<double(double)> rho;
    if (config.space == Space::Position) {
        auto psi = entropy::hpt_position_wavefunction(spec, config.state);
        rho = [psi](double x) { return psi(x) * psi(x); };
    } else if (config.state == HptState::Ground) {
        rho = [spec](double p) { return std::pow(eigenstates::hpt_ground_momentum(spec, p), 2); };
    } else {
        // Beyond p_range the density is below 1e-16 of its peak.
        const entropy::NumericalMomentumDensity numeric(spec, config.state);
        rho = [numeric](double p) { return std::fabs(p) <= numeric.p_range() ? numeric(p) : 0.0; };
    }
    const auto profile = entropy::DensityProfile::sample(rho, grid);

    report::Table t{{config.space == Space::Position ? "x" : "p", "density", "entropy_density"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = profile.values()[i];
        t.rows.push_back({grid[i], v, entropy::entropy_density(v)});
    }
    json summary{{"norm_defect", profile.norm_defect()}};
    try {
        summary["dip"] = entropy::dip_criterion(profile);
    } catch (const DomainError& e) {
        summary["dip"] = nullptr;
        summary["dip_note"] = e.what();
    }
    return {t, summary};
}

CarpetRun run_carpet(const RunConfig& config) {
    const coherent::CoherentStateSpec spec(eigenstates::TrigPTSpec(config.rho, config.alpha),
                                           {config.gamma_re, config.gamma_im}, config.n_states);
    const auto xg = coherent::default_x_grid(spec.well, config.x_points);
    const auto tg = coherent::default_t_grid(spec.well, config.t_points, config.t_max);
    return {coherent::entropy_carpet(spec, xg, tg, config.threads), coherent::coherent_coefficients(spec)};
}

json write_carpet(const CarpetRun& run, OutputFormat format, std::ostream& os) {
    const auto& f = run.field;
    const auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
    json meta{{"x_grid", {{"lo", f.x_grid.lo()}, {"hi", f.x_grid.hi()}, {"count", f.x_grid.size()}}},
              {"t_grid", {{"lo", f.t_grid.lo()}, {"hi", f.t_grid.hi()}, {"count", f.t_grid.size()}}},
              {"v_min", *lo},
              {"v_max", *hi},
              {"tail_mass", run.coefficients.tail_mass},
              {"warnings", json::array()}};
    if (run.coefficients.truncation_warning) {
        meta["warnings"].push_back("truncated superposition discards probability " +
                                   report::format_number(run.coefficients.tail_mass));
    }
    switch (format) {
        case OutputFormat::Pgm: {
            const auto info = report::write_pgm(f, os);
            if (info.degenerate) meta["warnings"].push_back("degenerate field (v_max == v_min); image is uniform mid-gray");
            break;
        }
        case OutputFormat::Csv:
            report::write_carpet_csv(f, os);
            break;
        case OutputFormat::Json:
            os << report::carpet_to_json(f).dump() << '\n';
            break;
    }
    return meta;
}

SelftestRun run_selftest(const RunConfig& config) {
    selftest::Options options;
    options.tol = config.tol;
    if (config.inject_fault == "fourier-sign") options.fourier_sign = numerics::KernelSign::Positive;
    auto results = selftest::run_acceptance(options);
    auto invariants = selftest::run_invariants(options);
    results.insert(results.end(), invariants.begin(), invariants.end());
    json summary = selftest::to_json(results);
    summary["tolerances"] = {{"norm", config.tol.norm}, {"entropy", config.tol.entropy}};
    summary["inject_fault"] = config.inject_fault;
    return {summary["passed"].get<bool>(), summary};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_command_line(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    const OutputFormat format = resolve_format(config);
    const bool to_file = !config.out.empty();
    std::ofstream file;
    if (to_file) {
        file.open(config.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file " << config.out << '\n';
            return 1;
        }
    }
    std::ostream& sink = to_file ? static_cast<std::ostream&>(file) : out;

    try {
        json summary;
        int code = 0;
        if (config.subcommand == Subcommand::Carpet) {
            const auto carpet = run_carpet(config);
            summary = write_carpet(carpet, format, sink);
            if (to_file) {
                out << "carpet " << carpet.field.rows() << "x" << carpet.field.cols() << " written to "
                    << config.out << " (v_min " << summary["v_min"].get<double>() << ", v_max "
                    << summary["v_max"].get<double>() << ")\n";
            }
            for (const auto& w : summary["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
        } else if (config.subcommand == Subcommand::Selftest) {
            const auto result = run_selftest(config);
            summary = result.summary;
            std::ostream& human = to_file ? out : err;
            for (const auto& c : summary["checks"]) {
                human << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<std::string>() << "  "
                      << c["description"].get<std::string>() << "  [" << c["detail"].get<std::string>() << "]\n";
            }
            sink << summary.dump(2) << '\n';
            code = result.passed ? 0 : 1;
        } else {
            TableRun table;
            switch (config.subcommand) {
                case Subcommand::Ground: table = run_ground(config); break;
                case Subcommand::Excited: table = run_excited(config); break;
                case Subcommand::Table1: table = run_table1(config); break;
                case Subcommand::BbmScan: table = run_bbm_scan(config); break;
                default: table = run_density(config); break;
            }
            summary = table.summary;
            const bool machine = to_file || config.format.has_value();
            if (machine) {
                if (format == OutputFormat::Json) {
                    json doc = report::to_json(table.table);
                    doc["summary"] = summary;
                    sink << doc.dump(2) << '\n';
                } else {
                    report::write_csv(table.table, sink);
                }
            }
            if (!machine || to_file) {
                report::write_pretty(table.table, out);
                if (summary.contains("trend")) out << "trend: " << summary["trend"].get<std::string>() << '\n';
                if (summary.contains("dip") && !summary["dip"].is_null()) {
                    out << "entropy-density dip at peak: " << (summary["dip"].get<bool>() ? "yes" : "no") << '\n';
                }
            }
        }
        if (to_file) {
            file.close();
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            write_manifest(config.out + ".manifest.json", config, format, summary, seconds, argc, argv);
        }
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pt::cli
