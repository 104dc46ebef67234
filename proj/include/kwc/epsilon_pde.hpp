#pragma once

#include <vector>

#include "kwc/model.hpp"
#include "kwc/tridiagonal.hpp"

namespace kwc {

/// Nodal values v_i at x_i = i dx on [0, L] (or on [-L, L] for the full-domain path).
struct GridField {
    int n = 0;
    double dx = 0.0;
    std::vector<double> values;
    double time = 0.0;

    void validate(double length) const;
};

struct SchemeConfig {
    double dt = 0.0;
    double t_end = 0.0;
    double theta = 1.0;

    void validate() const;
    /// dt = dx^2 with dx = L / n.
    static SchemeConfig squared_mesh(double L, int n, double t_end);
};

/// v0(x_i) = 1 - c exp(-mu x_i / epsilon) on [0, L].
GridField initial_data(const ModelParams& params, int n);

/// Same problem after the change of variables y = x / epsilon: epsilon = 1, L -> L / epsilon.
ModelParams rescaled_params(const ModelParams& params);

/// Theta-weighted implicit stepper for the half-domain Robin problem. The matrix is assembled once.
class RobinStepper {
public:
    RobinStepper(const ModelParams& params, const SchemeConfig& config, int n);

    GridField step(const GridField& field) const;
    void step_in_place(std::vector<double>& values) const;

    /// Exact fixed point of step: the discrete stationary state.
    std::vector<double> stationary() const;

    const Tridiagonal& implicit_matrix() const { return implicit_; }
    int n() const { return n_; }
    double dx() const { return dx_; }
    double dt() const { return dt_; }

private:
    int n_;
    double dx_;
    double dt_;
    double theta_;
    double p_;
    double source_;
    Tridiagonal operator_;  // K, positive semidefinite part including the a^2/eps reaction
    Tridiagonal implicit_;  // p I + theta K
};

/// One step of the scheme (assembles the matrix; use RobinStepper for repeated steps).
GridField step(const GridField& field, const ModelParams& params, const SchemeConfig& config);

struct PdeSolution {
    TimeSeries trace;                 // xi^eps(t_k) = v(0, t_k), including t = 0
    std::vector<GridField> snapshots; // at the requested times (nearest step at or after)
    GridField final_field;
};

PdeSolution solve(const ModelParams& params, const SchemeConfig& config, int n,
                  const std::vector<double>& snapshot_times = {});

/// Stationary state of the discrete problem.
GridField stationary_state(const ModelParams& params, int n);

/// Solve on [-L, L] with 2n + 1 nodes, the delta term as a flux jump at x = 0.
/// initial has 2n + 1 values; an empty vector means the even extension of initial_data.
struct FullDomainSolution {
    TimeSeries trace;
    GridField final_field;  // nodes x_i = -L + i dx
};
FullDomainSolution solve_full_domain(const ModelParams& params, const SchemeConfig& config, int n,
                                     std::vector<double> initial = {});

/// Even extension of a half-domain field to [-L, L].
GridField even_extension(const GridField& half);

struct DerivativeBoundReport {
    double weighted_sup = 0.0;  // max_k max_i |v_i^k - v_i^{k-1}| / (2 (t_k^{1/2} - t_{k-1}^{1/2}))
    double time_of_sup = 0.0;
    double data_norm = 0.0;     // |w0'|_inf + |w0|_inf + 1 in the rescaled variable
    double constant = 0.0;
    bool holds = false;
};

/// Works on the rescaled problem where the estimate is stated.
DerivativeBoundReport time_derivative_bound_check(const ModelParams& params, const SchemeConfig& config,
                                                  int n, double constant);

}  // namespace kwc
