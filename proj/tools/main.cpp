#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "lievc/config.hpp"
#include "lievc/connections.hpp"
#include "lievc/csv.hpp"
#include "lievc/errors.hpp"

namespace fs = std::filesystem;
using namespace lievc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIntegration = 4;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;  // overrides the config's output_dir when set
    unsigned seed = 0;
};

std::string resolve_out_dir(const CommonOptions& opts, const RunConfig& cfg)
{
    const std::string dir = opts.out_dir.empty() ? cfg.output_dir : opts.out_dir;
    fs::create_directories(dir);
    return dir;
}

AlgebraVector random_state(const LieAlgebra& algebra, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    AlgebraVector x(algebra.dim());
    for (int i = 0; i < algebra.dim(); ++i) x(i) = gauss(rng);
    return x;
}

/// Randomized structural identity checks on a constructed system, reported
/// alongside the deterministic algebra checks.
struct IdentityProbe {
    double max_torsion = 0.0;        // conn(x,y) - conn(y,x) + [x,y]
    double max_compatibility = 0.0;  // <conn(s,x), y> + <x, conn(s,y)>
    double max_projector = 0.0;      // idempotence + complementarity
    double max_invariance = 0.0;     // annihilator applied to the closed loop
    int samples = 0;

    bool passed() const
    {
        return max_torsion < 1e-10 && max_compatibility < 1e-10 && max_projector < 1e-10
            && max_invariance < 1e-10;
    }
};

IdentityProbe probe_identities(const ControlledSystem& sys, unsigned seed, int samples = 200)
{
    IdentityProbe probe;
    probe.samples = samples;
    const LieAlgebra& algebra = sys.algebra();
    std::mt19937_64 rng(seed);

    std::optional<ProjectorPair> oblique;
    if (sys.has_constraint() && sys.input_span())
        oblique = oblique_projectors(algebra, sys.constraint_subspace(), *sys.input_span());
    if (oblique) {
        const Eigen::MatrixXd& p = oblique->onto;
        probe.max_projector = std::max((p * p - p).cwiseAbs().maxCoeff(),
                                       (p + oblique->along
                                        - Eigen::MatrixXd::Identity(algebra.dim(), algebra.dim()))
                                           .cwiseAbs()
                                           .maxCoeff());
    }

    for (int i = 0; i < samples; ++i) {
        const AlgebraVector x = random_state(algebra, rng);
        const AlgebraVector y = random_state(algebra, rng);
        const AlgebraVector s = random_state(algebra, rng);

        const AlgebraVector torsion =
            g_connection(algebra, x, y) - g_connection(algebra, y, x) + algebra.bracket(x, y);
        probe.max_torsion = std::max(probe.max_torsion, torsion.cwiseAbs().maxCoeff());

        const double compat = algebra.inner(g_connection(algebra, s, x), y)
            + algebra.inner(x, g_connection(algebra, s, y));
        probe.max_compatibility = std::max(probe.max_compatibility, std::abs(compat));

        if (sys.has_constraint()) {
            const Eigen::VectorXd res = sys.annihilator_basis().rows * sys.closed_loop_field(x);
            if (res.size() > 0)
                probe.max_invariance = std::max(probe.max_invariance, res.cwiseAbs().maxCoeff());
        }
    }
    return probe;
}

int run_validate(const CommonOptions& opts)
{
    const RunConfig cfg = load_run_config(opts.config_path);
    const std::string out_dir = resolve_out_dir(opts, cfg);
    std::ostringstream report;
    bool ok = true;

    std::optional<CatalogEntry> entry;
    try {
        entry = build_system_from_config(cfg.system);
    } catch (const ParameterError& err) {
        report << "parameter check: FAIL\n  " << err.what() << "\n";
        ok = false;
    } catch (const TransversalityError& err) {
        report << "transversality: FAIL (rank " << err.rank_found << " of " << err.rank_expected
               << ")\n  " << err.what() << "\n";
        ok = false;
    } catch (const SubspaceError& err) {
        report << "subspace check: FAIL\n  " << err.what() << "\n";
        ok = false;
    }

    if (entry) {
        const ControlledSystem& sys = entry->system;
        report << "system: " << sys.label() << " (dim " << sys.algebra().dim() << ", "
               << sys.num_inputs() << " inputs, sigma " << (sys.sigma() > 0 ? "+1" : "-1")
               << ")\n";

        const AlgebraValidation algebra_report = sys.algebra().validate();
        report << "algebra: " << algebra_report.summary() << "\n";
        ok = ok && algebra_report.passed();

        if (sys.has_constraint()) {
            const auto transversal = check_transversal(sys.constraint_subspace(),
                                                       *sys.input_span());
            report << "transversality: rank " << transversal.rank << " of "
                   << transversal.expected_rank << " -> "
                   << (transversal.transversal ? "pass" : "FAIL") << "\n";
            ok = ok && transversal.transversal;
        } else {
            report << "transversality: no constraint (free system)\n";
        }

        const IdentityProbe probe = probe_identities(sys, opts.seed);
        report << "identities over " << probe.samples << " random states (seed " << opts.seed
               << "): torsion " << probe.max_torsion << ", metric compatibility "
               << probe.max_compatibility << ", projectors " << probe.max_projector
               << ", closed-loop invariance " << probe.max_invariance << " -> "
               << (probe.passed() ? "pass" : "FAIL") << "\n";
        ok = ok && probe.passed();
    }

    report << "result: " << (ok ? "pass" : "FAIL") << "\n";
    std::ofstream file(out_dir + "/validation.txt");
    file << report.str();
    std::cout << report.str();
    return ok ? kExitOk : kExitValidation;
}

int run_control(const CommonOptions& opts)
{
    const RunConfig cfg = load_run_config(opts.config_path);
    const CatalogEntry entry = build_system_from_config(cfg.system);
    const ControlledSystem& sys = entry.system;
    const AlgebraVector x = initial_state(cfg, sys, opts.seed);

    const ControlVector u = sys.control_law(x);
    const Eigen::VectorXd residual = sys.annihilator_basis().rows * sys.closed_loop_field(x);

    std::cout << "state:";
    for (long i = 0; i < x.size(); ++i) std::cout << " " << format_g17(x(i));
    std::cout << "\ncontrol:";
    for (long a = 0; a < u.size(); ++a) std::cout << " " << format_g17(u(a));
    std::cout << "\nclosed_loop_residual:";
    for (long r = 0; r < residual.size(); ++r) std::cout << " " << format_g17(residual(r));
    std::cout << "\n";
    return kExitOk;
}

struct RunOutcome {
    int code = kExitOk;
    std::string message;
};

RunOutcome run_one_simulation(const RunConfig& cfg, const nlohmann::json& system_block,
                              const std::string& out_dir, unsigned seed)
{
    RunOutcome outcome;
    std::optional<CatalogEntry> entry;
    try {
        entry = build_system_from_config(system_block);
    } catch (const Error& err) {
        outcome.code = kExitValidation;
        outcome.message = std::string("system construction failed: ") + err.what();
        return outcome;
    }
    const ControlledSystem& sys = entry->system;

    const AlgebraVector x0 = initial_state(cfg, sys, seed);
    const Eigen::MatrixXd g0 = initial_group_element(cfg, sys);

    const Trajectory traj = sys.group()
        ? simulate(sys, x0, g0, cfg.integrator, cfg.controlled)
        : simulate(sys, x0, cfg.integrator, cfg.controlled);

    fs::create_directories(out_dir);
    write_trajectory_csv(out_dir + "/trajectory.csv", traj);
    write_group_csv(out_dir + "/group.csv", traj);

    const MonitorSummary summary = monitors_report(traj, cfg.tolerances);
    std::ofstream monitor_file(out_dir + "/monitors.txt");
    monitor_file << summary.report();

    if (traj.blew_up) {
        outcome.code = kExitIntegration;
        outcome.message = "integration failure: " + traj.error;
        return outcome;
    }
    outcome.code = summary.passed() ? kExitOk : kExitValidation;
    outcome.message = summary.passed() ? "monitors pass" : "monitor tolerances violated";
    return outcome;
}

struct SweepSpec {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

SweepSpec parse_sweep(const std::string& text)
{
    SweepSpec spec;
    const auto eq = text.find('=');
    const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("sweep: expected PARAM=START:STOP:N, got '" + text + "'");
    spec.param = text.substr(0, eq);
    try {
        spec.start = std::stod(text.substr(eq + 1, c1 - eq - 1));
        spec.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        spec.count = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("sweep: malformed numbers in '" + text + "'");
    }
    if (spec.count < 1) throw ConfigError("sweep: N must be at least 1");
    return spec;
}

int run_simulate(const CommonOptions& opts, const std::string& sweep_text)
{
    const RunConfig cfg = load_run_config(opts.config_path);
    const std::string out_dir = resolve_out_dir(opts, cfg);

    if (sweep_text.empty()) {
        const RunOutcome outcome = run_one_simulation(cfg, cfg.system, out_dir, opts.seed);
        std::cout << outcome.message << "\n";
        return outcome.code;
    }

    const SweepSpec spec = parse_sweep(sweep_text);
    std::vector<double> values(static_cast<size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i)
        values[static_cast<size_t>(i)] = spec.count == 1
            ? spec.start
            : spec.start + (spec.stop - spec.start) * i / (spec.count - 1);

    // independent runs fan out across workers; all shared data is read-only
    std::vector<RunOutcome> outcomes(values.size());
    std::atomic<size_t> next{0};
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(values.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
                const std::string run_dir =
                    out_dir + "/sweep_" + spec.param + "_" + std::to_string(i);
                try {
                    const nlohmann::json block =
                        with_parameter(cfg.system, spec.param, values[i]);
                    outcomes[i] = run_one_simulation(cfg, block, run_dir, opts.seed);
                } catch (const ConfigError& err) {
                    outcomes[i] = RunOutcome{kExitConfig, err.what()};
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    int exit_code = kExitOk;
    for (size_t i = 0; i < values.size(); ++i) {
        std::cout << spec.param << " = " << format_g17(values[i]) << ": " << outcomes[i].message
                  << "\n";
        exit_code = std::max(exit_code, outcomes[i].code);
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"feedback synthesis and simulation of virtually constrained systems on Lie groups"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string sweep_text;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "path to the JSON run configuration")
            ->required();
        cmd->add_option("--out", opts.out_dir, "output directory (overrides the config)");
        cmd->add_option("--seed", opts.seed, "seed for randomized checks and random states");
    };

    CLI::App* validate =
        app.add_subcommand("validate", "check algebra axioms, SPD metric and transversality");
    add_common(validate);

    CLI::App* control =
        app.add_subcommand("control", "evaluate the constraint-enforcing control law at a state");
    add_common(control);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "integrate the closed-loop dynamics and write CSV output");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--sweep", sweep_text, "fan out runs over PARAM=START:STOP:N");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(opts);
        if (control->parsed()) return run_control(opts);
        if (simulate_cmd->parsed()) return run_simulate(opts, sweep_text);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const DimensionError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const ParameterError& err) {
        std::cerr << "validation failure: " << err.what() << "\n";
        return kExitValidation;
    } catch (const TransversalityError& err) {
        std::cerr << "validation failure: " << err.what() << "\n";
        return kExitValidation;
    } catch (const SubspaceError& err) {
        std::cerr << "validation failure: " << err.what() << "\n";
        return kExitValidation;
    } catch (const IntegrationError& err) {
        std::cerr << "integration failure: " << err.what() << "\n";
        return kExitIntegration;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return kExitOk;
}
