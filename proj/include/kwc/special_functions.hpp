#pragma once

#include <complex>

namespace kwc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
inline constexpr double kInvSqrtPi = 0.564189583547756286948079451560772586;

/// Parameters of the weighted power kernel f(t) = e^{-alpha t} t^{beta-1} / Gamma(beta).
struct KernelParams {
    double alpha = 0.0;
    double beta = 0.5;

    void validate() const;
};

// Error functions (Cody's rational Chebyshev approximations).
double eval_erf(double x);
double eval_erfc(double x);
/// exp(x^2) erfc(x); finite for every x above -26.6 and never overflows for x >= 0.
double eval_erfcx(double x);

/// 1 - sqrt(pi) y erfcx(y) for y >= 0, evaluated without cancellation for large y.
double one_minus_scaled_erfc(double y);

/// e^{-alpha t} t^{beta-1} / Gamma(beta); throws std::domain_error for t <= 0.
double eval_f(const KernelParams& params, double t);

/// q^mu(t) = 1/sqrt(pi t) - mu e^{mu^2 t} erfc(mu sqrt t), via the scaled erfc.
double eval_q(double mu, double t);

/// Memory kernel m_a(t) = 2 (f_{1/2}^{a^2}(t) - a erfc(a sqrt t)) = 2 e^{-a^2 t} q^a(t).
double eval_m(double a, double t);

/// int_0^t m_a(s) ds.
double kernel_cumulative(double a, double t);

/// int_{t0}^{t1} m_a(s) ds in closed form. Requires 0 <= t0 < t1.
double kernel_moment(double a, double t0, double t1);

/// Total mass int_0^inf m_a = 1/a (infinite for a = 0).
double kernel_total_mass(double a);

/// Heat kernel with exponential damping: e^{-a^2 t} (4 pi t)^{-1/2} e^{-x^2/(4t)}.
double eval_gauss_kernel(double x, double t, double a);

/// int_0^t f_{1/2}^{a^2}(s) ds = erf(a sqrt t)/a.
double integral_f_half(double a, double t);

/// Divided difference of x -> x erfcx(x sqrt t) between the nodes k and b (derivative when k == b).
double scaled_erfc_divided_difference(double k, double b, double t);

/// int_0^t e^{-k^2 s} q^b(s) ds for k >= 0, b >= 0, k + b > 0.
double damped_q_integral(double k, double b, double t);

/// int_0^t m_a(t - s) / (2 sqrt s) ds, the memory response to a sqrt(t) profile.
double sqrt_profile_response(double a, double t);

/// e^{-x} I_nu(x) for nu in {0, 1}, x >= 0.
double scaled_bessel_i(int nu, double x);

// Laplace-domain counterparts, principal branch of the square root.
std::complex<double> laplace_f(const KernelParams& params, std::complex<double> lambda);
std::complex<double> laplace_m(double a, std::complex<double> lambda);
std::complex<double> laplace_q(double mu, std::complex<double> lambda);
/// G_lambda^a(y) = e^{-sqrt(lambda+a^2)|y|} / (2 sqrt(lambda+a^2)), the transform of the damped Gauss kernel.
std::complex<double> green_function(double a, std::complex<double> lambda, double y);

}  // namespace kwc
