#include "kwc/grain_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kwc/special_functions.hpp"

namespace kwc {

void WeightProfile::validate() const {
    if (x.size() != beta.size() || x.size() < 3 || x.size() % 2 == 0) {
        throw std::invalid_argument("WeightProfile: needs an odd number (>= 3) of matching samples");
    }
    if (x[center()] != 0.0) throw std::invalid_argument("WeightProfile: x = 0 must be the center node");
    for (double v : beta) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("WeightProfile: beta must be >= 0");
    }
}

WeightProfile WeightProfile::sample(const std::function<double(double)>& f, double L, int n) {
    if (n <= 0 || !(L > 0.0)) throw std::invalid_argument("WeightProfile::sample: bad grid");
    WeightProfile w;
    w.L = L;
    const double dx = L / n;
    for (int i = -n; i <= n; ++i) {
        const double xi = i == 0 ? 0.0 : i * dx;
        w.x.push_back(xi);
        w.beta.push_back(f(xi));
    }
    w.validate();
    return w;
}

StationaryReport verify_stationary(const WeightProfile& profile, double b, double tol) {
    profile.validate();
    if (!(b > 0.0)) throw std::invalid_argument("verify_stationary: b must be positive");
    StationaryReport report;
    const std::size_t n = profile.x.size();
    const std::size_t c = profile.center();
    const double beta0 = profile.beta[c];
    report.field.x = profile.x;
    report.field.z.assign(n, 0.0);
    report.degenerate = beta0 == 0.0;

    auto fail = [&](const char* what, double where) {
        if (report.violation.empty()) {
            report.violation = what;
            report.violation_at = where;
        }
    };

    // Constant flux beta z = beta(0).
    bool flux_ok = true;
    bool bounded_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double beta = profile.beta[i];
        double z = 0.0;
        if (!report.degenerate) {
            if (beta == 0.0) {
                bounded_ok = false;
                fail("bounded", profile.x[i]);
                z = std::numeric_limits<double>::infinity();
            } else {
                z = beta0 / beta;
            }
        }
        report.field.z[i] = z;
        if (std::isfinite(z) && std::fabs(beta * z - beta0) > tol * std::max(1.0, beta0)) {
            flux_ok = false;
            fail("constant_flux", profile.x[i]);
        }
        if (std::fabs(z) > 1.0 + tol) {
            bounded_ok = false;
            fail("bounded", profile.x[i]);
        }
    }
    report.constant_flux = flux_ok;
    report.bounded = bounded_ok;

    // u = 0 on x < 0 and b on x > 0, with boundary data g equal to the traces of u.
    const double flux_at_jump = beta0 * report.field.z[c];
    report.pairing = std::isfinite(flux_at_jump) ? flux_at_jump * b : std::numeric_limits<double>::infinity();
    const double boundary_terms = std::fabs(0.0 - 0.0) * profile.beta.front() + std::fabs(b - b) * profile.beta.back();
    report.energy = beta0 * b + boundary_terms;
    report.energy_identity = std::fabs(report.pairing - report.energy) <= tol * std::max(1.0, report.energy);
    if (!report.energy_identity) fail("energy_identity", 0.0);
    return report;
}

std::pair<std::size_t, std::size_t> GrainState::junction_facets(std::size_t j) const {
    const std::size_t m = facets();
    return {j, (j + 1) % m};
}

double GrainState::jump(std::size_t j) const {
    const auto [l, r] = junction_facets(j);
    return heights[r] - heights[l];
}

void GrainState::validate() const {
    const std::size_t m = heights.size();
    if (m < 2) throw std::invalid_argument("GrainState: needs at least two facets");
    if (partition.size() != m + 1) throw std::invalid_argument("GrainState: partition must have m + 1 points");
    for (std::size_t i = 1; i < partition.size(); ++i) {
        if (!(partition[i] > partition[i - 1])) throw std::domain_error("GrainState: degenerate partition");
    }
    const std::size_t expected = boundary == GrainBoundary::periodic ? m : m - 1;
    if (xis.size() != expected || chis.size() != expected) {
        throw std::invalid_argument("GrainState: junction count does not match the boundary type");
    }
    if (!(alpha_w1 > 0.0)) throw std::invalid_argument("GrainState: alpha_w1 must be positive");
    if (!(a >= 0.0)) throw std::invalid_argument("GrainState: a must be >= 0");
    if (!memory.empty() && memory.size() != expected) throw std::logic_error("GrainState: memory size mismatch");
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

GrainState make_grain_state(std::vector<double> partition, std::vector<double> heights,
                            const std::vector<double>& c, double a, double alpha_w1, GrainBoundary boundary) {
    GrainState s;
    s.partition = std::move(partition);
    s.heights = std::move(heights);
    s.a = a;
    s.alpha_w1 = alpha_w1;
    s.boundary = boundary;
    const std::size_t m = s.heights.size();
    const std::size_t junctions = boundary == GrainBoundary::periodic ? m : (m > 0 ? m - 1 : 0);
    if (c.size() != junctions) throw std::invalid_argument("make_grain_state: one c per junction required");
    for (std::size_t j = 0; j < junctions; ++j) {
        s.xis.push_back(1.0 - c[j]);
        s.chis.push_back(0);
    }
    s.validate();
    for (std::size_t j = 0; j < junctions; ++j) s.chis[j] = sign_of(s.jump(j));
    return s;
}

GrainState step_grains(const GrainState& state, double dt) {
    state.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("step_grains: dt must be positive");
    GrainState next = state;
    const std::size_t m = state.facets();
    const std::size_t nj = state.junctions();

    if (next.memory.empty()) {
        for (std::size_t j = 0; j < nj; ++j) {
            const LimitEnergy energy{state.a, std::fabs(state.jump(j))};
            const double coefficient = sqrt_start_coefficient(energy, state.xis[j], 0.0);
            next.memory.emplace_back(state.a, dt, state.xis[j], coefficient);
        }
    } else if (std::fabs(next.memory.front().dt() - dt) > 1e-14 * dt) {
        throw std::invalid_argument("step_grains: dt must stay fixed along a trajectory");
    }

    // Order parameters, b_j frozen at the start of the step.
    for (std::size_t j = 0; j < nj; ++j) {
        const LimitEnergy energy{state.a, std::fabs(state.jump(j))};
        next.xis[j] = next.memory[j].advance(energy, 0.0);
    }

    // Heights by explicit Euler with start-of-step fluxes.
    std::vector<double> flux(nj);
    for (std::size_t j = 0; j < nj; ++j) flux[j] = state.xis[j] * state.xis[j] * state.chis[j];
    const bool periodic = state.boundary == GrainBoundary::periodic;
    for (std::size_t i = 0; i < m; ++i) {
        if (state.boundary == GrainBoundary::dirichlet && (i == 0 || i + 1 == m)) continue;
        double right = 0.0;
        double left = 0.0;
        if (i + 1 < m || periodic) right = flux[i];
        if (i > 0) left = flux[i - 1];
        else if (periodic) left = flux[nj - 1];
        const double length = state.partition[i + 1] - state.partition[i];
        next.heights[i] = state.heights[i] + dt * (right - left) / (length * state.alpha_w1);
    }

    // Facets that overshoot each other merge at the collision value and the junction freezes.
    auto fixed = [&](std::size_t i) {
        return state.boundary == GrainBoundary::dirichlet && (i == 0 || i + 1 == m);
    };
    std::vector<bool> frozen(nj, false);
    for (std::size_t pass = 0; pass < 4 * m + 4; ++pass) {
        bool changed = false;
        for (std::size_t j = 0; j < nj; ++j) {
            const int before = frozen[j] ? 0 : state.chis[j];
            if (before == 0) continue;
            if (sign_of(next.jump(j)) == before) continue;
            const auto [l, r] = next.junction_facets(j);
            double merged = 0.0;
            if (fixed(l)) {
                merged = next.heights[l];
            } else if (fixed(r)) {
                merged = next.heights[r];
            } else {
                const double wl = state.partition[l + 1] - state.partition[l];
                const double wr = state.partition[r + 1] - state.partition[r];
                merged = (wl * next.heights[l] + wr * next.heights[r]) / (wl + wr);
            }
            next.heights[l] = merged;
            next.heights[r] = merged;
            frozen[j] = true;
            changed = true;
        }
        if (!changed) break;
    }

    for (std::size_t j = 0; j < nj; ++j) next.chis[j] = frozen[j] ? 0 : sign_of(next.jump(j));
    next.time = state.time + dt;
    return next;
}

double weighted_height_sum(const GrainState& state) {
    double sum = 0.0;
    for (std::size_t i = 0; i < state.facets(); ++i) {
        sum += (state.partition[i + 1] - state.partition[i]) * state.heights[i];
    }
    return sum;
}

double height_variation(const GrainState& state) {
    double sum = 0.0;
    for (std::size_t j = 0; j < state.junctions(); ++j) sum += std::fabs(state.jump(j));
    return sum;
}

}  // namespace kwc
