#pragma once

#include <vector>

#include "kwc/model.hpp"

namespace kwc {

/// Initial data of the limit problem, written as w0 = v0 - 1 in the rescaled variable y.
struct ForcingSpec {
    enum class Kind { well_prepared, exponential, constant, general };

    Kind kind = Kind::well_prepared;
    double c = 0.0;
    double mu = 0.0;               // exponential only
    std::vector<double> grid;      // general only: increasing y samples
    std::vector<double> w0;        // general only: w0(grid[i])

    void validate() const;

    static ForcingSpec well_prepared(double c);
    static ForcingSpec exponential(double c, double mu);
    static ForcingSpec constant(double c);
    static ForcingSpec general(std::vector<double> grid, std::vector<double> w0);
    /// The spec matching ModelParams: well_prepared when mu == a, exponential otherwise.
    static ForcingSpec from_params(const ModelParams& params);

    /// w0(0); the limit starts from xi(0) = 1 + w0(0).
    double initial_eta() const;
};

/// Inhomogeneous term F(t) in M_a xi_t = -grad E(xi) + F(t). It collects -m_a(t) eta(0) and the
/// inverse transform of 2 sqrt(lambda + a^2) g^a, which cancel their t^{-1/2} parts exactly.
double forcing(const ForcingSpec& spec, const ModelParams& params, double t);

/// Limit of forcing as t -> 0+.
double forcing_at_zero(const ForcingSpec& spec, const ModelParams& params);

/// Product-integration stepper for M_a xi_t = -grad E(xi) + F(t) on a uniform grid.
/// xi = xi0 + A sqrt(t) + psi(t) with the sqrt part handled exactly and psi_t piecewise constant.
class VolterraStepper {
public:
    VolterraStepper(double a, double dt, double xi0, double sqrt_coefficient);

    /// Advance to t_{k+1}; forcing_next is F(t_{k+1}).
    double advance(const LimitEnergy& energy, double forcing_next);

    double value() const { return xi_; }
    double time() const { return static_cast<double>(steps_) * dt_; }
    long steps() const { return steps_; }
    double dt() const { return dt_; }
    double sqrt_coefficient() const { return sqrt_coefficient_; }

    /// Discrete memory term at the current step: A R(t_k) + sum_j mom_{k-j} dpsi_j / dt.
    double memory_term() const;

private:
    double moment(long i);

    double a_;
    double dt_;
    double xi0_;
    double sqrt_coefficient_;
    double xi_;
    double psi_ = 0.0;
    long steps_ = 0;
    std::vector<double> moments_;
    std::vector<double> increments_;
};

/// Coefficient A of the sqrt(t) start: A = (F(0) - grad E(xi0)) / sqrt(pi).
double sqrt_start_coefficient(const LimitEnergy& energy, double xi0, double forcing0);

/// xi on t_k = k dt, k = 0..K with K dt >= t_end. Times are physical: tau1 rescales the clock.
TimeSeries solve_volterra(const LimitEnergy& energy, const ForcingSpec& spec, const ModelParams& params,
                          double dt, double t_end);

/// Max over steps of |memory_term - (-grad E(xi_k) + F(t_k))| recomputed from the stored series.
double volterra_residual(const TimeSeries& xi, const LimitEnergy& energy, const ForcingSpec& spec,
                         const ModelParams& params);

/// Closed-form eta = xi - 1 for exponential data 1 - c exp(-mu |y|).
double closed_form_eta(const ModelParams& params, double t);
inline double closed_form_xi(const ModelParams& params, double t) { return 1.0 + closed_form_eta(params, t); }

struct EtaSplit {
    double eta_bar = 0.0;  // -b int_0^t e^{-a^2 s} q^b(s) ds
    double eta_e = 0.0;    // -c e^{-a^2 t} times a bounded factor
};

EtaSplit eta_decomposition(const ModelParams& params, double t);

/// |c| (mu + b) e^{-a^2 t} / b.
double eta_e_envelope(const ModelParams& params, double t);

}  // namespace kwc
