#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace pdmsoliton::cli {

enum class Command { potential, spectrum, susy, kdv, verify };

std::string to_string(Command command);
Command parse_command(std::string_view name);

enum ExitCode : int {
    exit_ok = 0,
    exit_checks_failed = 1,
    exit_usage = 2,
    exit_io = 3,
    exit_numerical = 4,
};

/**
 * Settings for one run. Unset optionals take per-command defaults:
 * line commands use [-20/q, 20/q] with 4001 points, kdv uses the ring
 * [-30/q, 30/q) with 1024 points, t_final = 0.5/q^3 and dt = 1e-3/q^3.
 */
struct RunConfig {
    Command command = Command::verify;
    std::string scheme = "zk";
    double q = 1.0;
    double lambda = 1.0;
    double epsilon = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> xmin;
    std::optional<double> xmax;
    std::optional<std::size_t> n;
    std::optional<double> t_final;
    std::optional<double> dt;
    std::string potential = "one-soliton";
    int levels = 1;
    int samples = 5;
    std::string in;
    std::string out = "pdmsoliton-out";
    std::optional<double> tolerance;
};

// Fills every optional with its command default.
RunConfig resolve(const RunConfig& config);

// Throws DomainError on non-finite numbers or out-of-range settings.
void validate(const RunConfig& config);

// key=value lines accepted by --config; resolved values only.
std::string dump_config(const RunConfig& config);

// Runs a resolved, validated config. Returns the exit code; library
// errors propagate as exceptions.
int run(const RunConfig& config, std::ostream& out);

// Full entry point: parses argv, merges defaults <- config file <- flags,
// runs, and maps errors to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pdmsoliton::cli
