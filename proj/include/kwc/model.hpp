#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kwc {

/// Constants shared by the epsilon-problem and the limit equation.
struct ModelParams {
    double a = 1.0;      // potential stiffness, F(v) = a^2 (v-1)^2
    double b = 1.0;      // jump height of u
    double c = 0.0;      // initial perturbation amplitude
    double mu = 1.0;     // initial decay rate; mu == a is well-prepared
    double tau1 = 1.0;   // time relaxation
    double L = 1.0;      // half-length of the domain
    double epsilon = 1.0;

    void validate() const;
    bool well_prepared() const { return mu == a; }
};

/// E(xi) = b xi^2 + a (xi - 1)^2.
struct LimitEnergy {
    double a = 1.0;
    double b = 1.0;

    void validate() const;
    double value(double xi) const;
    double gradient(double xi) const;
    double stationary_point() const;
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    void push(double t, double v);
    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    void validate() const;
};

/// grad E(xi) = 2((b + a) xi - a).
double grad_energy(const LimitEnergy& energy, double xi);

}  // namespace kwc
