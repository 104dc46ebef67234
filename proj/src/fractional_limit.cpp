#include "kwc/fractional_limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kwc/special_functions.hpp"

namespace kwc {

void ForcingSpec::validate() const {
    if (!std::isfinite(c)) throw std::invalid_argument("ForcingSpec: c must be finite");
    if (kind == Kind::exponential && !(mu >= 0.0)) throw std::invalid_argument("ForcingSpec: mu must be >= 0");
    if (kind == Kind::general) {
        if (grid.size() < 2 || grid.size() != w0.size()) {
            throw std::invalid_argument("ForcingSpec: general data needs matching grid and w0 of length >= 2");
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!std::isfinite(w0[i]) || !std::isfinite(grid[i])) {
                throw std::invalid_argument("ForcingSpec: general data must be finite");
            }
            if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("ForcingSpec: grid must increase");
        }
    }
}

ForcingSpec ForcingSpec::well_prepared(double c) {
    ForcingSpec s;
    s.kind = Kind::well_prepared;
    s.c = c;
    return s;
}

ForcingSpec ForcingSpec::exponential(double c, double mu) {
    ForcingSpec s;
    s.kind = Kind::exponential;
    s.c = c;
    s.mu = mu;
    return s;
}

ForcingSpec ForcingSpec::constant(double c) {
    ForcingSpec s;
    s.kind = Kind::constant;
    s.c = c;
    return s;
}

ForcingSpec ForcingSpec::general(std::vector<double> grid, std::vector<double> w0) {
    ForcingSpec s;
    s.kind = Kind::general;
    s.grid = std::move(grid);
    s.w0 = std::move(w0);
    s.validate();
    return s;
}

ForcingSpec ForcingSpec::from_params(const ModelParams& params) {
    return params.well_prepared() ? well_prepared(params.c) : exponential(params.c, params.mu);
}

namespace {

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
    if (at <= x.front()) return y.front();
    if (at >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), at);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (at - x[i]) / (x[i + 1] - x[i]);
    return y[i] + w * (y[i + 1] - y[i]);
}

// One-sided slopes of the interpolant at y = 0.
std::pair<double, double> slopes_at_zero(const ForcingSpec& spec) {
    const auto& x = spec.grid;
    const auto& y = spec.w0;
    auto slope_of = [&](std::size_t i) { return (y[i + 1] - y[i]) / (x[i + 1] - x[i]); };
    if (0.0 < x.front() || 0.0 > x.back()) return {0.0, 0.0};
    const auto it = std::lower_bound(x.begin(), x.end(), 0.0);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (x[i] == 0.0) {
        const double right = i + 1 < x.size() ? slope_of(i) : 0.0;
        const double left = i > 0 ? slope_of(i - 1) : 0.0;
        return {left, right};
    }
    const double s = slope_of(i - 1);
    return {s, s};
}

// int_{z0}^{z1} |z| e^{-z^2} (alpha + beta z) dz on an interval of constant sign.
double weighted_linear_piece(double z0, double z1, double alpha, double beta) {
    const double sign = (z0 + z1) >= 0.0 ? 1.0 : -1.0;
    const double first = 0.5 * (std::exp(-z0 * z0) - std::exp(-z1 * z1));
    const double second = 0.5 * (z0 * std::exp(-z0 * z0) - z1 * std::exp(-z1 * z1)) +
                          0.25 * kSqrtPi * (eval_erf(z1) - eval_erf(z0));
    return sign * (alpha * first + beta * second);
}

// (2 e^{-a^2 t} / sqrt(pi t)) int |z| e^{-z^2} (W(2 sqrt(t) z) - W(0)) dz, W the interpolant of w0.
double general_increment_term(const ForcingSpec& spec, double a, double t) {
    const double w00 = interpolate(spec.grid, spec.w0, 0.0);
    const double scale = 2.0 * std::sqrt(t);
    std::vector<double> knots;
    knots.reserve(spec.grid.size() + 1);
    bool has_zero = false;
    for (double y : spec.grid) {
        if (y == 0.0) has_zero = true;
        knots.push_back(y);
    }
    if (!has_zero) {
        knots.push_back(0.0);
        std::sort(knots.begin(), knots.end());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double y0 = knots[i];
        const double y1 = knots[i + 1];
        const double v0 = interpolate(spec.grid, spec.w0, y0) - w00;
        const double v1 = interpolate(spec.grid, spec.w0, y1) - w00;
        const double slope_y = (v1 - v0) / (y1 - y0);
        const double z0 = y0 / scale;
        const double z1 = y1 / scale;
        // W - W(0) = alpha + beta z on this piece.
        const double beta = slope_y * scale;
        const double alpha = v0 - beta * z0;
        sum += weighted_linear_piece(z0, z1, alpha, beta);
    }
    // Constant extension beyond the sampled range.
    const double left_z = knots.front() / scale;
    const double right_z = knots.back() / scale;
    const double left_v = spec.w0.front() - w00;
    const double right_v = spec.w0.back() - w00;
    if (left_z < 0.0) sum += left_v * 0.5 * std::exp(-left_z * left_z);
    if (right_z > 0.0) sum += right_v * 0.5 * std::exp(-right_z * right_z);
    return 2.0 * std::exp(-a * a * t) / std::sqrt(kPi * t) * sum;
}

double exponential_forcing(double a, double c, double mu, double t) {
    const double r = std::sqrt(t);
    const double decay = std::exp(-a * a * t);
    return 2.0 * c * decay * (mu * eval_erfcx(mu * r) - a * eval_erfcx(a * r));
}

}  // namespace

double ForcingSpec::initial_eta() const {
    if (kind == Kind::general) return interpolate(grid, w0, 0.0);
    return -c;
}

double forcing(const ForcingSpec& spec, const ModelParams& params, double t) {
    if (!(t > 0.0)) throw std::domain_error("forcing: requires t > 0");
    spec.validate();
    const double a = params.a;
    double value = 0.0;
    switch (spec.kind) {
        case ForcingSpec::Kind::well_prepared:
            return 0.0;
        case ForcingSpec::Kind::exponential:
            value = exponential_forcing(a, spec.c, spec.mu, t);
            break;
        case ForcingSpec::Kind::constant:
            value = exponential_forcing(a, spec.c, 0.0, t);
            break;
        case ForcingSpec::Kind::general: {
            const double w00 = spec.initial_eta();
            value = 2.0 * a * std::exp(-a * a * t) * eval_erfcx(a * std::sqrt(t)) * w00 +
                    general_increment_term(spec, a, t);
            break;
        }
    }
    if (!std::isfinite(value)) throw std::runtime_error("forcing: non-finite value");
    return value;
}

double forcing_at_zero(const ForcingSpec& spec, const ModelParams& params) {
    spec.validate();
    switch (spec.kind) {
        case ForcingSpec::Kind::well_prepared:
            return 0.0;
        case ForcingSpec::Kind::exponential:
            return 2.0 * spec.c * (spec.mu - params.a);
        case ForcingSpec::Kind::constant:
            return -2.0 * spec.c * params.a;
        case ForcingSpec::Kind::general: {
            const auto [left, right] = slopes_at_zero(spec);
            return 2.0 * params.a * spec.initial_eta() + (right - left);
        }
    }
    return 0.0;
}

VolterraStepper::VolterraStepper(double a, double dt, double xi0, double sqrt_coefficient)
    : a_(a), dt_(dt), xi0_(xi0), sqrt_coefficient_(sqrt_coefficient), xi_(xi0) {
    if (!(dt > 0.0)) throw std::invalid_argument("VolterraStepper: dt must be positive");
    if (!(a >= 0.0)) throw std::invalid_argument("VolterraStepper: a must be >= 0");
}

double VolterraStepper::moment(long i) {
    while (static_cast<long>(moments_.size()) <= i) {
        const double j = static_cast<double>(moments_.size());
        moments_.push_back(kernel_moment(a_, j * dt_, (j + 1.0) * dt_));
    }
    return moments_[static_cast<std::size_t>(i)];
}

double VolterraStepper::advance(const LimitEnergy& energy, double forcing_next) {
    const long k = steps_ + 1;
    const double t = static_cast<double>(k) * dt_;
    const double m0 = moment(0);
    moment(k);
    double history = 0.0;
    for (long j = 1; j < k; ++j) {
        history += moments_[static_cast<std::size_t>(k - j)] * increments_[static_cast<std::size_t>(j - 1)];
    }
    history /= dt_;
    const double g = 2.0 * (energy.a + energy.b);
    const double base = xi0_ + sqrt_coefficient_ * std::sqrt(t);
    const double rhs = m0 * psi_ / dt_ - history - sqrt_coefficient_ * sqrt_profile_response(a_, t) -
                       g * base + 2.0 * energy.a + forcing_next;
    const double psi = rhs / (m0 / dt_ + g);
    if (!std::isfinite(psi)) throw std::runtime_error("VolterraStepper: non-finite step");
    increments_.push_back(psi - psi_);
    psi_ = psi;
    steps_ = k;
    xi_ = base + psi;
    return xi_;
}

double VolterraStepper::memory_term() const {
    const long k = steps_;
    const double t = static_cast<double>(k) * dt_;
    double sum = 0.0;
    for (long j = 1; j <= k; ++j) {
        sum += moments_[static_cast<std::size_t>(k - j)] * increments_[static_cast<std::size_t>(j - 1)];
    }
    return sqrt_coefficient_ * sqrt_profile_response(a_, t) + sum / dt_;
}

double sqrt_start_coefficient(const LimitEnergy& energy, double xi0, double forcing0) {
    return (forcing0 - energy.gradient(xi0)) / kSqrtPi;
}

TimeSeries solve_volterra(const LimitEnergy& energy, const ForcingSpec& spec, const ModelParams& params,
                          double dt, double t_end) {
    energy.validate();
    spec.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("solve_volterra: dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("solve_volterra: t_end must be >= dt");
    if (!(params.tau1 > 0.0)) throw std::invalid_argument("solve_volterra: tau1 must be positive");

    // The limit equation with relaxation tau1 is the tau1 = 1 equation on the clock t / tau1.
    const double ds = dt / params.tau1;
    const double xi0 = 1.0 + spec.initial_eta();
    const double coefficient = sqrt_start_coefficient(energy, xi0, forcing_at_zero(spec, params));
    VolterraStepper stepper(params.a, ds, xi0, coefficient);

    const long steps = std::lround(std::ceil(t_end / dt - 1e-9));
    TimeSeries out;
    out.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.values.reserve(static_cast<std::size_t>(steps) + 1);
    out.push(0.0, xi0);
    for (long k = 1; k <= steps; ++k) {
        const double s = static_cast<double>(k) * ds;
        out.push(static_cast<double>(k) * dt, stepper.advance(energy, forcing(spec, params, s)));
    }
    return out;
}

double volterra_residual(const TimeSeries& xi, const LimitEnergy& energy, const ForcingSpec& spec,
                         const ModelParams& params) {
    xi.validate();
    if (xi.size() < 2) return 0.0;
    const double ds = (xi.times[1] - xi.times[0]) / params.tau1;
    const double xi0 = xi.values[0];
    const double coefficient = sqrt_start_coefficient(energy, xi0, forcing_at_zero(spec, params));
    const std::size_t steps = xi.size() - 1;
    std::vector<double> moments(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        moments[i] = kernel_moment(params.a, static_cast<double>(i) * ds, static_cast<double>(i + 1) * ds);
    }
    std::vector<double> dpsi(steps);
    double previous = 0.0;
    for (std::size_t j = 1; j <= steps; ++j) {
        const double psi = xi.values[j] - xi0 - coefficient * std::sqrt(static_cast<double>(j) * ds);
        dpsi[j - 1] = psi - previous;
        previous = psi;
    }
    double worst = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double s = static_cast<double>(k) * ds;
        double sum = 0.0;
        for (std::size_t j = 1; j <= k; ++j) sum += moments[k - j] * dpsi[j - 1];
        const double lhs = coefficient * sqrt_profile_response(params.a, s) + sum / ds;
        const double rhs = -energy.gradient(xi.values[k]) + forcing(spec, params, s);
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

EtaSplit eta_decomposition(const ModelParams& params, double t) {
    if (t < 0.0) throw std::domain_error("eta_decomposition: requires t >= 0");
    const double s = t / params.tau1;
    EtaSplit split;
    split.eta_bar = -params.b * damped_q_integral(params.a, params.b, s);
    split.eta_e = params.c == 0.0 ? 0.0
                                  : -params.c * std::exp(-params.a * params.a * s) *
                                        scaled_erfc_divided_difference(params.mu, params.b, s);
    return split;
}

double closed_form_eta(const ModelParams& params, double t) {
    params.validate();
    if (t < 0.0) throw std::domain_error("closed_form_eta: requires t >= 0");
    const EtaSplit split = eta_decomposition(params, t);
    return split.eta_bar + split.eta_e;
}

double eta_e_envelope(const ModelParams& params, double t) {
    if (!(params.b > 0.0)) throw std::invalid_argument("eta_e_envelope: b must be positive");
    return std::fabs(params.c) * (params.mu + params.b) * std::exp(-params.a * params.a * t / params.tau1) /
           params.b;
}

}  // namespace kwc
