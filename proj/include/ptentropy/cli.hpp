#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptentropy/coherent.hpp"
#include "ptentropy/entropy.hpp"
#include "ptentropy/report.hpp"
#include "ptentropy/state_entropy.hpp"

namespace pt::cli {

enum class Subcommand { Ground, Excited, Table1, BbmScan, Density, Carpet, Selftest };
enum class OutputFormat { Csv, Json, Pgm };
enum class Space { Position, Momentum, Both };

struct GridSpec {
    double lo = -10.0;
    double hi = 10.0;
    std::size_t count = 201;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::Selftest;
    int n = 1;
    int n_lo = 2;
    int n_hi = 13;
    int n_max = 20;
    Space space = Space::Both;
    entropy::HptState state = entropy::HptState::Ground;
    GridSpec grid;
    double rho = 0.0;
    double alpha = 0.0;
    double gamma_re = 0.0;
    double gamma_im = 0.0;
    int n_states = 0;
    std::size_t x_points = 400;
    std::size_t t_points = 400;
    std::optional<double> t_max;
    entropy::Tolerances tol;
    std::string out;
    std::optional<OutputFormat> format;
    std::string inject_fault;
    unsigned threads = 0;
};

/// Parses argv (config file values merged below command-line flags).
/// Throws UsageError on any invalid input.
RunConfig parse_command_line(int argc, const char* const* argv);

/// "lo:hi:count"
GridSpec parse_grid(const std::string& text);
/// "a..b"
std::pair<int, int> parse_range(const std::string& text);

/// Flat "key = value" file; '#' starts a comment. Keys are long option names.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

struct TableRun {
    report::Table table;
    nlohmann::json summary;  ///< flags and notes that go into the manifest
};

TableRun run_ground(const RunConfig& config);
TableRun run_excited(const RunConfig& config);
TableRun run_table1(const RunConfig& config);
TableRun run_bbm_scan(const RunConfig& config);
TableRun run_density(const RunConfig& config);

struct CarpetRun {
    coherent::CarpetField field;
    coherent::CoefficientVector coefficients;
};
CarpetRun run_carpet(const RunConfig& config);

/// Writes the carpet in the requested format; returns the manifest fields
/// describing it (grids, v_min, v_max, warnings).
nlohmann::json write_carpet(const CarpetRun& run, OutputFormat format, std::ostream& os);

struct SelftestRun {
    bool passed = false;
    nlohmann::json summary;
};
SelftestRun run_selftest(const RunConfig& config);

/// Full program: parse, dispatch, write outputs and manifest. Returns the
/// process exit code (0 success, 1 computational failure, 2 usage error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pt::cli
