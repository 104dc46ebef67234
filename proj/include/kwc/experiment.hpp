#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kwc/epsilon_pde.hpp"
#include "kwc/grain_dynamics.hpp"
#include "kwc/model.hpp"

namespace kwc {

struct ExperimentConfig {
    std::string experiment = "error_table";
    ModelParams params;
    bool mu_explicit = false;  // otherwise mu follows a (well-prepared data)
    std::vector<double> epsilons = {1.0, 0.5, 0.25, 0.125};
    std::vector<double> cs = {0.0, 0.25, 2.0};
    std::vector<double> horizons = {2.0, 5.0, 10.0};
    double primary_horizon = 5.0;
    int n = 200;
    double dt = 0.0;  // 0 selects dx^2
    double t_end = 5.0;
    double theta = 1.0;
    int facets = 5;
    long grain_steps = 1000;
    std::string output_dir = ".";
    std::uint64_t seed = 0;

    void validate() const;
    /// Params with mu resolved.
    ModelParams resolved_params() const;
    SchemeConfig scheme(double L, double t_end_override = 0.0) const;
};

/// key = value lines; '#' starts a comment; lists are comma separated.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);
std::string serialize_config(const ExperimentConfig& config);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
};

std::string format_double(double v);
std::string csv_text(const CsvTable& table);
void emit_csv(const CsvTable& table, const std::string& path);
CsvTable series_table(const TimeSeries& series, const std::string& value_name = "xi");

struct TraceErrors {
    std::vector<double> at_horizon;  // |xi^eps(T) - xi(T)| at the last step not beyond T
    std::vector<double> sup;         // sup over the solver grid on [0, T]
};

/// Errors of the trace against the closed-form limit for each horizon T.
TraceErrors trace_errors(const ModelParams& params, const SchemeConfig& scheme, int n,
                         const std::vector<double>& horizons);

enum class ErrorMetric { at_horizon, sup_over_time };

struct ErrorTable {
    std::vector<double> epsilons;
    std::vector<double> cs;
    std::vector<double> horizons;
    std::vector<std::vector<std::vector<double>>> errors;      // [horizon][epsilon][c], at_horizon metric
    std::vector<std::vector<std::vector<double>>> sup_errors;  // same layout, sup_over_time metric

    const std::vector<std::vector<double>>& at(double T, ErrorMetric metric = ErrorMetric::at_horizon) const;
    bool columns_decreasing(double T, ErrorMetric metric = ErrorMetric::at_horizon) const;
    CsvTable csv(double T, ErrorMetric metric = ErrorMetric::at_horizon) const;
};

/// Cells run concurrently and are merged in sweep order.
ErrorTable run_error_table(const ExperimentConfig& config);

/// Hausdorff distance between the graph of v on [-L, L] (even extension of the half-domain field) and
/// the limit set {y = 1} joined with the segment from (0, xi) to (0, 1).
double graph_distance(const GridField& half, double xi_limit);

struct GraphDistanceResult {
    std::vector<double> epsilons;
    std::vector<double> distances;  // sup over sampled times
    std::vector<double> layer_widths;  // (eps / a) ln 100
};

GraphDistanceResult run_graph_distance(const ExperimentConfig& config, int samples = 21);

/// Canonical and random grain runs; rows t, h_1..h_m, xi_1..xi_k.
CsvTable grain_trajectory_table(const std::vector<GrainState>& states);

}  // namespace kwc
