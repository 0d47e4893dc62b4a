#include "runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"
#include "pdmsoliton/error.hpp"
#include "pdmsoliton/field_io.hpp"
#include "pdmsoliton/kdv_flow.hpp"
#include "pdmsoliton/pdm_schemes.hpp"
#include "pdmsoliton/soliton_library.hpp"
#include "pdmsoliton/spectral_solver.hpp"
#include "pdmsoliton/susy_factor.hpp"

namespace pdmsoliton::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

json number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json array(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v) {
        a.push_back(number(x));
    }
    return a;
}

void write_json(const fs::path& path, const json& j)
{
    write_file_atomic(path, j.dump(2) + "\n");
}

AmbiguityScheme scheme_of(const RunConfig& cfg)
{
    if (lower(cfg.scheme) == "custom") {
        return schemes::custom(*cfg.alpha, *cfg.beta);
    }
    return schemes::by_name(cfg.scheme);
}

Grid line_grid(const RunConfig& cfg)
{
    return Grid::uniform(*cfg.xmin, *cfg.xmax, *cfg.n, GridKind::dirichlet_line);
}

SampledField builtin(const std::string& name, const RunConfig& cfg, const Grid& grid)
{
    const double q = cfg.q;
    auto sech2 = [q](double x) { return std::pow(1.0 / std::cosh(q * x), 2); };
    const std::string key = lower(name);
    if (key == "one-soliton") {
        return SampledField::sample(grid, [=](double x) { return -2 * q * q * sech2(x); });
    }
    if (key == "two-soliton") {
        return SampledField::sample(grid, [=](double x) { return -6 * q * q * sech2(x); });
    }
    if (key == "zero") {
        return SampledField::zeros(grid);
    }
    if (key == "scheme" && !grid.periodic()) {
        return effective_potential_u(PdmProblem::sech_squared(scheme_of(cfg), q, cfg.lambda, cfg.epsilon), grid);
    }
    throw DomainError("unknown potential '" + name + "' (expected one-soliton|two-soliton|zero" +
                      (grid.periodic() ? ")" : "|scheme)"));
}

int run_potential(const RunConfig& cfg, std::ostream& out)
{
    const PdmProblem problem = PdmProblem::sech_squared(scheme_of(cfg), cfg.q, cfg.lambda, cfg.epsilon);
    const SampledField u = effective_potential_u(problem, line_grid(cfg));
    const auto vals = u.values();
    const auto lowest = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    const fs::path path = fs::path(cfg.out) / "potential.csv";
    write_file_atomic(path, to_csv(u));
    out << "scheme " << problem.scheme.name << " (alpha " << fmt(problem.scheme.alpha) << ", beta "
        << fmt(problem.scheme.beta) << ")\n"
        << "asymptote " << fmt(effective_potential_limit(problem)) << "\n"
        << "minimum " << fmt(u[lowest]) << " at x = " << fmt(u.x(lowest)) << "\n"
        << "V0 " << fmt(problem.free_potential()) << "\n"
        << "wrote " << path.string() << "\n";
    return exit_ok;
}

int run_spectrum(const RunConfig& cfg, std::ostream& out)
{
    const SampledField u = cfg.in.empty() ? builtin(cfg.potential, cfg, line_grid(cfg))
                                          : read_csv(cfg.in, GridKind::dirichlet_line);
    const Spectrum s = bound_states(u);
    const fs::path dir(cfg.out);
    json files = json::array();
    for (std::size_t i = 0; i < s.eigenfunctions.size(); ++i) {
        const std::string name = "state_" + std::to_string(i) + ".csv";
        write_file_atomic(dir / name, to_csv(s.eigenfunctions[i]));
        files.push_back(name);
    }
    const json j = {{"threshold", number(s.continuum_threshold)},
                    {"eigenvalues", array(s.eigenvalues)},
                    {"eigenfunctions", files}};
    write_json(dir / "spectrum.json", j);
    out << "threshold " << fmt(s.continuum_threshold) << "\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        out << "mu[" << i << "] " << fmt(s.eigenvalues[i]) << "\n";
    }
    out << s.eigenvalues.size() << " bound state(s); wrote " << (dir / "spectrum.json").string() << "\n";
    return exit_ok;
}

int run_susy(const RunConfig& cfg, std::ostream& out)
{
    const Grid grid = line_grid(cfg);
    const fs::path dir(cfg.out);
    SampledField potential = SampledField::zeros(grid);
    json rungs = json::array();
    std::vector<double> spectrum;
    for (int k = 1; k <= cfg.levels; ++k) {
        const double mu = -static_cast<double>(k * k) * cfg.q * cfg.q;
        const AddedState added = add_bound_state(potential, mu);
        potential = added.potential;
        const PairingReport pairing =
            pairing_check(partner_potentials(added.superpotential), -mu);
        spectrum = bound_states(potential).eigenvalues;
        const std::string name = "ladder_" + std::to_string(k) + ".csv";
        write_file_atomic(dir / name, to_csv(potential));
        rungs.push_back({{"level", k},
                         {"mu", mu},
                         {"potential", name},
                         {"spectrum", array(spectrum)},
                         {"pairing",
                          {{"plus", array(pairing.plus)},
                           {"minus", array(pairing.minus)},
                           {"matched", pairing.matched},
                           {"extra_state", pairing.extra_state ? number(*pairing.extra_state) : json(nullptr)}}}});
        out << "rung " << k << ": mu " << fmt(mu) << ", pairing " << (pairing.matched ? "matched" : "NOT matched")
            << "\n";
    }
    write_json(dir / "susy.json", {{"q", cfg.q}, {"rungs", rungs}});
    out << "final spectrum";
    for (double mu : spectrum) {
        out << " " << fmt(mu);
    }
    out << "\nwrote " << (dir / "susy.json").string() << "\n";
    return exit_ok;
}

int run_kdv(const RunConfig& cfg, std::ostream& out)
{
    const Grid grid = Grid::uniform(*cfg.xmin, *cfg.xmax, *cfg.n, GridKind::periodic);
    const SampledField u0 = cfg.in.empty() ? builtin(cfg.potential, cfg, grid) : read_csv(cfg.in, GridKind::periodic);
    const auto snaps = evolve_snapshots({u0, 0.0}, *cfg.dt, *cfg.t_final, cfg.samples);
    const fs::path dir(cfg.out);
    json times = json::array();
    json charges = json::array();
    std::vector<double> first;
    double drift = 0.0;
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        write_file_atomic(dir / ("t_" + std::to_string(i) + ".csv"), to_csv(snaps[i].u));
        const auto c = conserved_charges(snaps[i].u);
        times.push_back(snaps[i].t);
        charges.push_back({number(c.c1), number(c.c2), number(c.c3)});
        const auto levels = periodic_window_spectrum(snaps[i].u, IsospectralOptions{}.refine);
        if (i == 0) {
            first = levels;
        } else if (levels.size() != first.size()) {
            drift = std::numeric_limits<double>::infinity();
        } else {
            for (std::size_t k = 0; k < levels.size(); ++k) {
                drift = std::max(drift, std::abs(levels[k] - first[k]));
            }
        }
    }
    json manifest = {{"times", times}, {"charges", charges}, {"drift", number(drift)}, {"levels", array(first)}};
    if (cfg.in.empty() && lower(cfg.potential) == "one-soliton") {
        const double err = max_abs_difference(snaps.back().u, traveling_one_soliton(cfg.q, snaps.back().t, grid));
        manifest["linf_vs_analytic"] = number(err);
        out << "L-infinity error vs traveling soliton " << fmt(err) << "\n";
    }
    write_json(dir / "manifest.json", manifest);
    out << "isospectral drift " << fmt(drift) << "\n"
        << "wrote " << snaps.size() << " snapshots and " << (dir / "manifest.json").string() << "\n";
    return exit_ok;
}

int run_verify(const RunConfig& cfg, std::ostream& out)
{
    const json report = verify_report(cfg.tolerance);
    const fs::path path = fs::path(cfg.out) / "report.json";
    write_json(path, report);
    for (const auto& check : report["checks"]) {
        out << (check["passed"].get<bool>() ? "PASS " : "FAIL ") << check["id"].get<std::string>() << "\n";
        for (const auto& m : check["measurements"]) {
            if (!m["passed"].get<bool>()) {
                out << "     " << m["name"].get<std::string>() << ": " << m["value"].dump() << " (limit "
                    << m["bound"].get<std::string>() << " " << m["limit"].dump() << ")\n";
            }
        }
    }
    for (const auto& row : report["catalog"]) {
        out << "     catalog " << row["scheme"].get<std::string>() << "/" << row["soliton"].get<std::string>()
            << " [" << row["status"].get<std::string>() << "] mu_claimed " << row["mu_claimed"].dump()
            << " mu_computed " << row["mu_computed"].dump() << "\n";
    }
    out << "wrote " << path.string() << "\n";
    return report["passed"].get<bool>() ? exit_ok : exit_checks_failed;
}

void require_finite(const char* key, double v)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(key) + " must be finite");
    }
}

} // namespace

std::string to_string(Command command)
{
    switch (command) {
    case Command::potential: return "potential";
    case Command::spectrum: return "spectrum";
    case Command::susy: return "susy";
    case Command::kdv: return "kdv";
    case Command::verify: return "verify";
    }
    return "verify";
}

Command parse_command(std::string_view name)
{
    for (Command c : {Command::potential, Command::spectrum, Command::susy, Command::kdv, Command::verify}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    throw DomainError("unknown command '" + std::string(name) + "' (expected potential|spectrum|susy|kdv|verify)");
}

RunConfig resolve(const RunConfig& config)
{
    RunConfig c = config;
    const double q = c.q;
    const bool ring = c.command == Command::kdv;
    const double half = (ring ? 30.0 : 20.0) / q;
    c.xmin = c.xmin.value_or(-half);
    c.xmax = c.xmax.value_or(half);
    c.n = c.n.value_or(ring ? 1024 : 4001);
    const double q3 = q * q * q;
    c.t_final = c.t_final.value_or(0.5 / q3);
    c.dt = c.dt.value_or(1e-3 / q3);
    return c;
}

void validate(const RunConfig& c)
{
    require_finite("q", c.q);
    require_finite("lambda", c.lambda);
    require_finite("epsilon", c.epsilon);
    for (const auto& [key, v] : {std::pair{"alpha", c.alpha}, std::pair{"beta", c.beta}, std::pair{"xmin", c.xmin},
                                 std::pair{"xmax", c.xmax}, std::pair{"t-final", c.t_final}, std::pair{"dt", c.dt},
                                 std::pair{"tolerance", c.tolerance}}) {
        if (v) {
            require_finite(key, *v);
        }
    }
    if (!(c.q > 0.0)) {
        throw DomainError("q must be positive");
    }
    const bool custom = lower(c.scheme) == "custom";
    if (custom && !(c.alpha && c.beta)) {
        throw DomainError("scheme custom needs both --alpha and --beta");
    }
    if (!custom && (c.alpha || c.beta)) {
        throw DomainError("--alpha/--beta apply only to --scheme custom");
    }
    if (!custom) {
        schemes::by_name(c.scheme);
    }
    if (c.command == Command::susy && c.levels < 1) {
        throw DomainError("levels must be at least 1");
    }
    if (c.samples < 1) {
        throw DomainError("samples must be at least 1");
    }
    if (c.t_final && !(*c.t_final > 0.0)) {
        throw DomainError("t-final must be positive");
    }
    if (c.dt && !(*c.dt > 0.0)) {
        throw DomainError("dt must be positive");
    }
    if (c.tolerance && !(*c.tolerance > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    if (c.out.empty()) {
        throw DomainError("out must name a directory");
    }
}

std::string dump_config(const RunConfig& config)
{
    const RunConfig c = resolve(config);
    std::ostringstream os;
    os << "# pdmsoliton " << to_string(c.command) << "\n"
       << "scheme=" << c.scheme << "\n"
       << "q=" << fmt(c.q) << "\n"
       << "lambda=" << fmt(c.lambda) << "\n"
       << "epsilon=" << fmt(c.epsilon) << "\n";
    if (c.alpha) {
        os << "alpha=" << fmt(*c.alpha) << "\n";
    }
    if (c.beta) {
        os << "beta=" << fmt(*c.beta) << "\n";
    }
    os << "xmin=" << fmt(*c.xmin) << "\n"
       << "xmax=" << fmt(*c.xmax) << "\n"
       << "n=" << *c.n << "\n"
       << "t-final=" << fmt(*c.t_final) << "\n"
       << "dt=" << fmt(*c.dt) << "\n"
       << "potential=" << c.potential << "\n"
       << "levels=" << c.levels << "\n"
       << "samples=" << c.samples << "\n";
    if (!c.in.empty()) {
        os << "in=" << c.in << "\n";
    }
    os << "out=" << c.out << "\n";
    if (c.tolerance) {
        os << "tolerance=" << fmt(*c.tolerance) << "\n";
    }
    return os.str();
}

int run(const RunConfig& config, std::ostream& out)
{
    switch (config.command) {
    case Command::potential: return run_potential(config, out);
    case Command::spectrum: return run_spectrum(config, out);
    case Command::susy: return run_susy(config, out);
    case Command::kdv: return run_kdv(config, out);
    case Command::verify: return run_verify(config, out);
    }
    return exit_usage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Soliton potentials from position-dependent-mass Schroedinger problems", "pdmsoliton"};
    app.option_defaults()->always_capture_default();

    RunConfig cfg;
    std::string command;
    double alpha = 0.0;
    double beta = 0.0;
    double xmin = 0.0;
    double xmax = 0.0;
    std::size_t n = 0;
    double t_final = 0.0;
    double dt = 0.0;
    double tolerance = 0.0;
    bool dump = false;

    app.add_option("command", command, "potential | spectrum | susy | kdv | verify")->required();
    app.set_config("--config", "", "Read key=value settings (one per line, # comments)");
    app.add_option("--scheme", cfg.scheme, "Ordering scheme: zk | bdd | bastard | likuhn | custom");
    app.add_option("--q", cfg.q, "Soliton wavenumber q > 0");
    app.add_option("--lambda", cfg.lambda, "Mass-coupling root lambda");
    app.add_option("--epsilon", cfg.epsilon, "Energy epsilon of the original problem");
    auto* o_alpha = app.add_option("--alpha", alpha, "Custom scheme alpha");
    auto* o_beta = app.add_option("--beta", beta, "Custom scheme beta");
    auto* o_xmin = app.add_option("--xmin", xmin, "Left edge of the grid");
    auto* o_xmax = app.add_option("--xmax", xmax, "Right edge of the grid");
    auto* o_n = app.add_option("--n", n, "Number of grid points");
    auto* o_tf = app.add_option("--t-final", t_final, "KdV end time");
    auto* o_dt = app.add_option("--dt", dt, "KdV step bound");
    app.add_option("--potential", cfg.potential, "Builtin data: one-soliton | two-soliton | zero | scheme");
    app.add_option("--levels", cfg.levels, "SUSY ladder rungs");
    app.add_option("--samples", cfg.samples, "KdV snapshot intervals");
    app.add_option("--in", cfg.in, "Input CSV (x,value)");
    app.add_option("--out", cfg.out, "Output directory");
    auto* o_tol = app.add_option("--tolerance", tolerance, "Override every verify tolerance");
    app.add_flag("--dump-config", dump, "Print the effective configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::FileError& e) {
        err << "pdmsoliton: " << e.what() << "\n";
        return exit_io;
    } catch (const CLI::ParseError& e) {
        err << "pdmsoliton: " << e.what() << "\n" << "run 'pdmsoliton --help' for usage\n";
        return exit_usage;
    }

    try {
        cfg.command = parse_command(command);
        if (*o_alpha) cfg.alpha = alpha;
        if (*o_beta) cfg.beta = beta;
        if (*o_xmin) cfg.xmin = xmin;
        if (*o_xmax) cfg.xmax = xmax;
        if (*o_n) cfg.n = n;
        if (*o_tf) cfg.t_final = t_final;
        if (*o_dt) cfg.dt = dt;
        if (*o_tol) cfg.tolerance = tolerance;
        validate(cfg);
        const RunConfig resolved = resolve(cfg);
        if (dump) {
            out << dump_config(resolved);
            return exit_ok;
        }
        return run(resolved, out);
    } catch (const DomainError& e) {
        err << "pdmsoliton: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        err << "pdmsoliton: " << e.what() << "\n";
        return exit_io;
    } catch (const NumericalError& e) {
        err << "pdmsoliton: numerical guard: " << e.what() << "\n";
        return exit_numerical;
    } catch (const fs::filesystem_error& e) {
        err << "pdmsoliton: " << e.what() << "\n";
        return exit_io;
    }
}

} // namespace pdmsoliton::cli
