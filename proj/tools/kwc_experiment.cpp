// kwc_experiment: experiment harness for the epsilon-problem and its fractional limit.
//
//   kwc_experiment error-table --out results
//   kwc_experiment pde-solve --epsilon 0.125 --c 2 --t-end 5
//   kwc_experiment limit-solve --a 1 --b 1 --c 0.25 --mu 2 --dt 1e-3
//
// Every subcommand writes CSV files plus manifest.txt into --out and exits
// nonzero when one of its internal checks fails.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kwc/checks.hpp"
#include "kwc/epsilon_pde.hpp"
#include "kwc/experiment.hpp"
#include "kwc/fractional_limit.hpp"
#include "kwc/grain_dynamics.hpp"

namespace fs = std::filesystem;
using namespace kwc;

namespace {

struct Overrides {
    std::string config_path;
    std::optional<double> a, b, c, mu, epsilon, tau1, L, dt, t_end;
    std::optional<int> n;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

ExperimentConfig resolve(const Overrides& o, const std::string& experiment) {
    ExperimentConfig config = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
    config.experiment = experiment;
    auto set = [&](const char* key, const auto& value) {
        if (value) apply_setting(config, key, format_double(static_cast<double>(*value)));
    };
    set("a", o.a);
    set("b", o.b);
    set("c", o.c);
    set("mu", o.mu);
    set("epsilon", o.epsilon);
    set("tau1", o.tau1);
    set("L", o.L);
    set("dt", o.dt);
    set("t_end", o.t_end);
    if (o.n) config.n = *o.n;
    if (o.out) config.output_dir = *o.out;
    if (o.seed) config.seed = *o.seed;
    config.validate();
    fs::create_directories(config.output_dir);
    return config;
}

std::string path_in(const ExperimentConfig& config, const std::string& name) {
    return (fs::path(config.output_dir) / name).string();
}

void write_manifest(const ExperimentConfig& config, const std::vector<std::string>& files) {
    std::ofstream out(path_in(config, "manifest.txt"), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest in '" + config.output_dir + "'");
    out << serialize_config(config);
    for (const auto& f : files) out << "file = " << f << "\n";
}

int kernel_check(const ExperimentConfig& config) {
    const KernelCheck check = run_kernel_check();
    CsvTable table;
    table.header.push_back("t");
    for (double a : check.as) table.header.push_back("m_" + format_double(a));
    for (std::size_t i = 0; i < check.times.size(); ++i) {
        std::vector<double> row{check.times[i]};
        for (const auto& col : check.values) row.push_back(col[i]);
        table.add_row(row);
    }
    emit_csv(table, path_in(config, "kernel.csv"));
    write_manifest(config, {"kernel.csv"});
    std::printf("positivity %s, monotone %s, bound %s, m_1(50) = %.3e\n", check.positive ? "ok" : "FAIL",
                check.decreasing ? "ok" : "FAIL", check.bounded ? "ok" : "FAIL", check.decay_value);
    if (!check.ok()) std::fprintf(stderr, "kernel check failed: %s\n", check.first_failure.c_str());
    return check.ok() ? 0 : 1;
}

int laplace_check(const ExperimentConfig& config) {
    bool ok = true;
    CsvTable table;
    table.header = {"identity", "lambda", "quadrature", "closed", "rel_error"};
    for (const IdentityRow& r : run_laplace_identities()) {
        table.rows.push_back({r.name, format_double(r.lambda), format_double(r.quadrature), format_double(r.closed),
                              format_double(r.rel_error)});
        if (!(r.rel_error <= 1e-7)) ok = false;
    }
    emit_csv(table, path_in(config, "laplace_identities.csv"));

    CsvTable inv;
    inv.header = {"a", "b", "c", "mu", "t", "talbot", "closed", "abs_error"};
    double worst = 0.0;
    for (const InversionRow& r : run_eta_inversion_check(default_inversion_sets())) {
        inv.add_row({r.params.a, r.params.b, r.params.c, r.params.mu, r.t, r.inverted, r.closed, r.abs_error});
        worst = std::max(worst, r.abs_error);
    }
    if (!(worst <= 1e-7)) ok = false;
    emit_csv(inv, path_in(config, "eta_inversion.csv"));
    write_manifest(config, {"laplace_identities.csv", "eta_inversion.csv"});
    std::printf("laplace identities %s, worst inversion error %.3e\n", ok ? "ok" : "FAIL", worst);
    return ok ? 0 : 1;
}

int pde_solve(const ExperimentConfig& config) {
    const ModelParams p = config.resolved_params();
    const SchemeConfig scheme = config.scheme(p.L);
    const PdeSolution sol = solve(p, scheme, config.n);
    emit_csv(series_table(sol.trace), path_in(config, "trace.csv"));
    CsvTable profile;
    profile.header = {"x", "v"};
    for (int i = 0; i <= sol.final_field.n; ++i) profile.add_row({i * sol.final_field.dx, sol.final_field.values[i]});
    emit_csv(profile, path_in(config, "profile.csv"));
    write_manifest(config, {"trace.csv", "profile.csv"});
    std::printf("xi_eps(%g) = %.10f\n", sol.trace.times.back(), sol.trace.values.back());
    return std::isfinite(sol.trace.values.back()) ? 0 : 1;
}

int limit_solve(const ExperimentConfig& config) {
    const ModelParams p = config.resolved_params();
    const double dt = config.dt > 0.0 ? config.dt : 1e-3;
    const LimitEnergy energy{p.a, p.b};
    const ForcingSpec spec = ForcingSpec::from_params(p);
    const TimeSeries xi = solve_volterra(energy, spec, p, dt, config.t_end);
    CsvTable table;
    table.header = {"t", "xi", "xi_closed"};
    double worst = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) {
        const double exact = closed_form_xi(p, xi.times[k]);
        worst = std::max(worst, std::fabs(xi.values[k] - exact));
        table.add_row({xi.times[k], xi.values[k], exact});
    }
    emit_csv(table, path_in(config, "limit.csv"));
    write_manifest(config, {"limit.csv"});
    std::printf("max |xi - xi_closed| = %.3e\n", worst);
    return worst <= 5e-3 ? 0 : 1;
}

int error_table(const ExperimentConfig& config) {
    const ErrorTable table = run_error_table(config);
    std::vector<std::string> files;
    for (double T : table.horizons) {
        const std::string suffix = T == config.primary_horizon ? "" : "_T" + format_double(T);
        emit_csv(table.csv(T), path_in(config, "error_table" + suffix + ".csv"));
        emit_csv(table.csv(T, ErrorMetric::sup_over_time), path_in(config, "error_table_sup" + suffix + ".csv"));
        files.push_back("error_table" + suffix + ".csv");
        files.push_back("error_table_sup" + suffix + ".csv");
    }
    write_manifest(config, files);
    std::cout << csv_text(table.csv(config.primary_horizon));
    const bool ok = table.columns_decreasing(config.primary_horizon);
    if (!ok) std::fprintf(stderr, "error table columns are not strictly decreasing in epsilon\n");
    return ok ? 0 : 1;
}

int graph_distance_cmd(const ExperimentConfig& config) {
    const GraphDistanceResult r = run_graph_distance(config);
    CsvTable table;
    table.header = {"epsilon", "distance", "layer_width"};
    bool monotone = true;
    for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
        table.add_row({r.epsilons[i], r.distances[i], r.layer_widths[i]});
        if (i > 0 && r.epsilons[i] < r.epsilons[i - 1] && !(r.distances[i] < r.distances[i - 1])) monotone = false;
    }
    emit_csv(table, path_in(config, "graph_distance.csv"));
    write_manifest(config, {"graph_distance.csv"});
    std::cout << csv_text(table);
    return monotone ? 0 : 1;
}

int grains(const ExperimentConfig& config) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> height(0.0, 1.0);
    std::uniform_real_distribution<double> width(0.5, 1.5);
    const int m = config.facets;
    std::vector<double> partition{0.0};
    std::vector<double> heights;
    for (int i = 0; i < m; ++i) {
        partition.push_back(partition.back() + width(rng));
        heights.push_back(height(rng));
    }
    const std::vector<double> c(static_cast<std::size_t>(m), config.params.c);
    GrainState state =
        make_grain_state(partition, heights, c, config.params.a, 1.0, GrainBoundary::periodic);
    const double dt = config.dt > 0.0 ? config.dt : 1e-3;
    std::vector<GrainState> states{state};
    const double mass0 = weighted_height_sum(state);
    double drift = 0.0;
    for (long k = 0; k < config.grain_steps; ++k) {
        const double before = weighted_height_sum(state);
        state = step_grains(state, dt);
        drift = std::max(drift, std::fabs(weighted_height_sum(state) - before));
        GrainState record = state;
        record.memory.clear();
        states.push_back(std::move(record));
    }
    emit_csv(grain_trajectory_table(states), path_in(config, "grains.csv"));
    write_manifest(config, {"grains.csv"});
    std::printf("max per-step drift of sum (p_j - p_{j-1}) h_j: %.3e (initial %.6f)\n", drift, mass0);
    return drift <= 1e-12 ? 0 : 1;
}

int stationary_tv(const ExperimentConfig& config) {
    struct Case {
        std::string name;
        std::function<double(double)> beta;
        bool expect_ok;
    };
    const std::vector<Case> cases = {
        {"beta=1", [](double) { return 1.0; }, true},
        {"beta=1+x^2", [](double x) { return 1.0 + x * x; }, true},
        {"beta=2-|x|", [](double x) { return 2.0 - std::fabs(x); }, false},
    };
    CsvTable table;
    table.header = {"profile", "constant_flux", "bounded", "energy_identity", "violation", "violation_at"};
    bool as_expected = true;
    for (const Case& c : cases) {
        const StationaryReport r = verify_stationary(WeightProfile::sample(c.beta, 1.0, 500), config.params.b);
        table.rows.push_back({c.name, r.constant_flux ? "1" : "0", r.bounded ? "1" : "0", r.energy_identity ? "1" : "0",
                              r.violation, format_double(r.violation_at)});
        if (r.ok() != c.expect_ok) as_expected = false;
    }
    emit_csv(table, path_in(config, "stationary_tv.csv"));
    write_manifest(config, {"stationary_tv.csv"});
    std::cout << csv_text(table);
    return as_expected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Experiments for the epsilon-problem and its fractional-time limit"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    app.add_option("--config", o.config_path, "key = value config file");
    app.add_option("--a", o.a, "potential stiffness");
    app.add_option("--b", o.b, "jump height");
    app.add_option("--c", o.c, "initial perturbation amplitude");
    app.add_option("--mu", o.mu, "initial decay rate (defaults to a)");
    app.add_option("--epsilon", o.epsilon, "interface thickness");
    app.add_option("--tau1", o.tau1, "time relaxation");
    app.add_option("--L", o.L, "half-length of the domain");
    app.add_option("--N", o.n, "number of cells on [0, L]");
    app.add_option("--dt", o.dt, "time step (default dx^2 for the PDE)");
    app.add_option("--t-end", o.t_end, "final time");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--seed", o.seed, "seed for randomized runs");

    struct Command {
        const char* name;
        const char* help;
        const char* experiment;
        int (*run)(const ExperimentConfig&);
    };
    const std::vector<Command> commands = {
        {"kernel-check", "kernel positivity, monotonicity, decay and bound", "kernel_check", kernel_check},
        {"laplace-check", "Laplace identities and Talbot inversion of eta", "laplace_check", laplace_check},
        {"pde-solve", "solve the epsilon-problem and write the trace", "trace_compare", pde_solve},
        {"limit-solve", "solve the limit Volterra equation", "trace_compare", limit_solve},
        {"error-table", "L-infinity errors for the epsilon and c sweep", "error_table", error_table},
        {"graph-distance", "Hausdorff distance between graphs", "trace_compare", graph_distance_cmd},
        {"grains", "random periodic facet run", "grains", grains},
        {"stationary-tv", "stationary weighted TV check", "stationary_tv", stationary_tv},
    };
    std::vector<CLI::App*> subs;
    for (const Command& c : commands) subs.push_back(app.add_subcommand(c.name, c.help));

    CLI11_PARSE(app, argc, argv);
    try {
        for (std::size_t i = 0; i < commands.size(); ++i) {
            if (subs[i]->parsed()) return commands[i].run(resolve(o, commands[i].experiment));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
