#include "kwc/epsilon_pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kwc {

void GridField::validate(double length) const {
    if (n <= 0) throw std::invalid_argument("GridField: n must be positive");
    if (values.size() != static_cast<std::size_t>(n) + 1) {
        throw std::invalid_argument("GridField: values must have n + 1 entries");
    }
    if (std::fabs(dx * n - length) > 1e-12 * std::max(1.0, length)) {
        throw std::invalid_argument("GridField: dx * n does not match the domain length");
    }
}

void SchemeConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SchemeConfig: dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("SchemeConfig: t_end must be >= dt");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("SchemeConfig: theta must lie in [0, 1]");
}

SchemeConfig SchemeConfig::squared_mesh(double L, int n, double t_end) {
    const double dx = L / n;
    return SchemeConfig{dx * dx, t_end, 1.0};
}

GridField initial_data(const ModelParams& params, int n) {
    params.validate();
    if (n <= 0) throw std::invalid_argument("initial_data: n must be positive");
    GridField field;
    field.n = n;
    field.dx = params.L / n;
    field.values.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = i * field.dx;
        field.values[i] = 1.0 - params.c * std::exp(-params.mu * x / params.epsilon);
    }
    return field;
}

ModelParams rescaled_params(const ModelParams& params) {
    params.validate();
    ModelParams out = params;
    out.L = params.L / params.epsilon;
    out.epsilon = 1.0;
    return out;
}

RobinStepper::RobinStepper(const ModelParams& params, const SchemeConfig& config, int n)
    : n_(n), dx_(params.L / n), dt_(config.dt), theta_(config.theta), operator_(n + 1), implicit_(n + 1) {
    params.validate();
    config.validate();
    if (n < 2) throw std::invalid_argument("RobinStepper: n must be at least 2");
    const double eps = params.epsilon;
    p_ = params.tau1 / (eps * dt_);
    const double q = eps / (dx_ * dx_);
    source_ = params.a * params.a / eps;

    for (int i = 0; i <= n; ++i) {
        operator_.diag[i] = 2.0 * q + source_;
        operator_.lower[i] = -q;
        operator_.upper[i] = -q;
    }
    // Ghost nodes eliminated: v_{-1} = v_1 - 2 dx (b/eps) v_0, v_{N+1} = v_{N-1}.
    operator_.diag[0] += 2.0 * params.b / dx_;
    operator_.upper[0] = -2.0 * q;
    operator_.lower[0] = 0.0;
    operator_.lower[n] = -2.0 * q;
    operator_.upper[n] = 0.0;

    for (int i = 0; i <= n; ++i) {
        implicit_.diag[i] = p_ + theta_ * operator_.diag[i];
        implicit_.lower[i] = theta_ * operator_.lower[i];
        implicit_.upper[i] = theta_ * operator_.upper[i];
    }
    if (!implicit_.strictly_diagonally_dominant()) {
        throw std::logic_error("RobinStepper: implicit matrix lost diagonal dominance");
    }
}

void RobinStepper::step_in_place(std::vector<double>& values) const {
    if (values.size() != static_cast<std::size_t>(n_) + 1) {
        throw std::invalid_argument("RobinStepper::step: field size mismatch");
    }
    std::vector<double> rhs(values.size());
    if (theta_ == 1.0) {
        for (std::size_t i = 0; i < values.size(); ++i) rhs[i] = p_ * values[i] + source_;
    } else {
        const std::vector<double> kv = operator_.multiply(values);
        for (std::size_t i = 0; i < values.size(); ++i) {
            rhs[i] = p_ * values[i] - (1.0 - theta_) * kv[i] + source_;
        }
    }
    values = solve_tridiagonal(implicit_, rhs);
}

GridField RobinStepper::step(const GridField& field) const {
    GridField out = field;
    step_in_place(out.values);
    out.time = field.time + dt_;
    return out;
}

std::vector<double> RobinStepper::stationary() const {
    return solve_tridiagonal(operator_, std::vector<double>(static_cast<std::size_t>(n_) + 1, source_));
}

GridField step(const GridField& field, const ModelParams& params, const SchemeConfig& config) {
    field.validate(params.L);
    return RobinStepper(params, config, field.n).step(field);
}

namespace {

long step_count(const SchemeConfig& config) {
    return std::lround(std::ceil(config.t_end / config.dt - 1e-9));
}

}  // namespace

PdeSolution solve(const ModelParams& params, const SchemeConfig& config, int n,
                  const std::vector<double>& snapshot_times) {
    const RobinStepper stepper(params, config, n);
    GridField field = initial_data(params, n);
    PdeSolution out;
    const long steps = step_count(config);
    out.trace.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.trace.values.reserve(static_cast<std::size_t>(steps) + 1);
    out.trace.push(0.0, field.values[0]);

    std::vector<double> pending = snapshot_times;
    std::sort(pending.begin(), pending.end());
    std::size_t next = 0;
    while (next < pending.size() && pending[next] <= 0.0) {
        out.snapshots.push_back(field);
        ++next;
    }
    for (long k = 1; k <= steps; ++k) {
        stepper.step_in_place(field.values);
        field.time = k * config.dt;
        out.trace.push(field.time, field.values[0]);
        while (next < pending.size() && pending[next] <= field.time + 1e-12 * config.dt) {
            out.snapshots.push_back(field);
            ++next;
        }
    }
    out.final_field = std::move(field);
    return out;
}

GridField stationary_state(const ModelParams& params, int n) {
    const SchemeConfig config{1.0, 1.0, 1.0};
    const RobinStepper stepper(params, config, n);
    GridField field;
    field.n = n;
    field.dx = params.L / n;
    field.values = stepper.stationary();
    field.time = 0.0;
    return field;
}

GridField even_extension(const GridField& half) {
    GridField full;
    full.n = 2 * half.n;
    full.dx = half.dx;
    full.time = half.time;
    full.values.resize(static_cast<std::size_t>(full.n) + 1);
    for (int i = 0; i <= half.n; ++i) {
        full.values[half.n + i] = half.values[i];
        full.values[half.n - i] = half.values[i];
    }
    return full;
}

FullDomainSolution solve_full_domain(const ModelParams& params, const SchemeConfig& config, int n,
                                     std::vector<double> initial) {
    params.validate();
    config.validate();
    if (n < 2) throw std::invalid_argument("solve_full_domain: n must be at least 2");
    const std::size_t size = 2 * static_cast<std::size_t>(n) + 1;
    if (initial.empty()) initial = even_extension(initial_data(params, n)).values;
    if (initial.size() != size) throw std::invalid_argument("solve_full_domain: initial data needs 2n + 1 values");

    const double eps = params.epsilon;
    const double dx = params.L / n;
    const double p = params.tau1 / (eps * config.dt);
    const double q = eps / (dx * dx);
    const double s = params.a * params.a / eps;
    const double theta = config.theta;

    Tridiagonal op(size);
    for (std::size_t i = 0; i < size; ++i) {
        op.diag[i] = 2.0 * q + s;
        op.lower[i] = -q;
        op.upper[i] = -q;
    }
    op.lower[0] = 0.0;
    op.upper[0] = -2.0 * q;
    op.lower[size - 1] = -2.0 * q;
    op.upper[size - 1] = 0.0;
    // Flux jump eps [v_x](0) = 2 b v(0), spread over the control cell of width dx.
    op.diag[static_cast<std::size_t>(n)] += 2.0 * params.b / dx;

    Tridiagonal implicit(size);
    for (std::size_t i = 0; i < size; ++i) {
        implicit.diag[i] = p + theta * op.diag[i];
        implicit.lower[i] = theta * op.lower[i];
        implicit.upper[i] = theta * op.upper[i];
    }

    FullDomainSolution out;
    std::vector<double> v = std::move(initial);
    std::vector<double> rhs(size);
    out.trace.push(0.0, v[static_cast<std::size_t>(n)]);
    const long steps = step_count(config);
    for (long k = 1; k <= steps; ++k) {
        if (theta == 1.0) {
            for (std::size_t i = 0; i < size; ++i) rhs[i] = p * v[i] + s;
        } else {
            const std::vector<double> kv = op.multiply(v);
            for (std::size_t i = 0; i < size; ++i) rhs[i] = p * v[i] - (1.0 - theta) * kv[i] + s;
        }
        v = solve_tridiagonal(implicit, rhs);
        out.trace.push(k * config.dt, v[static_cast<std::size_t>(n)]);
    }
    out.final_field.n = 2 * n;
    out.final_field.dx = dx;
    out.final_field.time = steps * config.dt;
    out.final_field.values = std::move(v);
    return out;
}

DerivativeBoundReport time_derivative_bound_check(const ModelParams& params, const SchemeConfig& config,
                                                  int n, double constant) {
    const ModelParams scaled = rescaled_params(params);
    const RobinStepper stepper(scaled, config, n);
    GridField field = initial_data(scaled, n);
    DerivativeBoundReport report;
    report.constant = constant;
    report.data_norm = std::fabs(scaled.c) * scaled.mu + std::fabs(scaled.c) + 1.0;

    std::vector<double> previous;
    const long steps = step_count(config);
    for (long k = 1; k <= steps; ++k) {
        previous = field.values;
        stepper.step_in_place(field.values);
        double change = 0.0;
        for (std::size_t i = 0; i < previous.size(); ++i) {
            change = std::max(change, std::fabs(field.values[i] - previous[i]));
        }
        const double t = k * config.dt;
        // |dv| / (2 (sqrt t_k - sqrt t_{k-1})) equals t^{1/2} v_t exactly for v = sqrt(t).
        const double root_step = config.dt / (std::sqrt(t) + std::sqrt(t - config.dt));
        const double weighted = change / (2.0 * root_step);
        if (weighted > report.weighted_sup) {
            report.weighted_sup = weighted;
            report.time_of_sup = t;
        }
    }
    report.holds = report.weighted_sup <= constant * report.data_norm;
    return report;
}

}  // namespace kwc
