#include "kwc/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kwc {

namespace {

// W. J. Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients from the netlib CALERF packet.
constexpr std::array<double, 5> kA = {3.16112374387056560e00, 1.13864154151050156e02,
                                      3.77485237685302021e02, 3.20937758913846947e03,
                                      1.85777706184603153e-1};
constexpr std::array<double, 4> kB = {2.36012909523441209e01, 2.44024637934444173e02,
                                      1.28261652607737228e03, 2.84423683343917062e03};
constexpr std::array<double, 9> kC = {5.64188496988670089e-1, 8.88314979438837594e00,
                                      6.61191906371416295e01, 2.98635138197400131e02,
                                      8.81952221241769090e02, 1.71204761263407058e03,
                                      2.05107837782607147e03, 1.23033935479799725e03,
                                      2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {1.57449261107098347e01, 1.17693950891312499e02,
                                      5.37181101862009858e02, 1.62138957456669019e03,
                                      3.29079923573345963e03, 4.36261909014324716e03,
                                      3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kP = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                      1.25781726111229246e-1, 1.60837851487422766e-2,
                                      6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ = {2.56852019228982242e00, 1.87295284992346047e00,
                                      5.27905102951428412e-1, 6.05183413124413191e-2,
                                      2.33520497626869185e-3};

constexpr double kThresh = 0.46875;
constexpr double kXNeg = -26.628;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;
constexpr double kXHuge = 6.71e7;
constexpr double kXMax = 2.53e307;

enum class ErfKind { erf, erfc, erfcx };

// exp(-y^2) computed as exp(-ysq^2) exp(-del) with ysq = y truncated to 1/16,
// which keeps the argument split exact.
double gaussian_split(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

// R(y) with erfcx(y) = (1/sqrt(pi) - R(y)) / y for y > 4.
double tail_rational(double y) {
    const double ysq = 1.0 / (y * y);
    double xnum = kP[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
        xnum = (xnum + kP[i]) * ysq;
        xden = (xden + kQ[i]) * ysq;
    }
    return ysq * (xnum + kP[4]) / (xden + kQ[4]);
}

double calerf(double x, ErfKind kind) {
    const double y = std::fabs(x);
    double result = 0.0;

    if (y <= kThresh) {
        const double ysq = y > kXSmall ? y * y : 0.0;
        double xnum = kA[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + kA[i]) * ysq;
            xden = (xden + kB[i]) * ysq;
        }
        result = x * (xnum + kA[3]) / (xden + kB[3]);
        if (kind != ErfKind::erf) result = 1.0 - result;
        if (kind == ErfKind::erfcx) result *= std::exp(ysq);
        return result;
    }

    if (y <= 4.0) {
        double xnum = kC[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + kC[i]) * y;
            xden = (xden + kD[i]) * y;
        }
        result = (xnum + kC[7]) / (xden + kD[7]);
        if (kind != ErfKind::erfcx) result *= gaussian_split(y);
    } else {
        bool done = false;
        if (y >= kXBig) {
            if (kind != ErfKind::erfcx || y >= kXMax) {
                result = 0.0;
                done = true;
            } else if (y >= kXHuge) {
                result = kInvSqrtPi / y;
                done = true;
            }
        }
        if (!done) {
            result = (kInvSqrtPi - tail_rational(y)) / y;
            if (kind != ErfKind::erfcx) result *= gaussian_split(y);
        }
    }

    switch (kind) {
        case ErfKind::erf:
            result = (0.5 - result) + 0.5;
            if (x < 0.0) result = -result;
            break;
        case ErfKind::erfc:
            if (x < 0.0) result = 2.0 - result;
            break;
        case ErfKind::erfcx:
            if (x < 0.0) {
                if (x < kXNeg) {
                    result = std::numeric_limits<double>::infinity();
                } else {
                    const double ysq = std::trunc(x * 16.0) / 16.0;
                    const double del = (x - ysq) * (x + ysq);
                    const double e = std::exp(ysq * ysq) * std::exp(del);
                    result = (e + e) - result;
                }
            }
            break;
    }
    return result;
}

void require_positive_time(double t, const char* what) {
    if (!(t > 0.0)) {
        throw std::domain_error(std::string(what) + ": requires t > 0, got " + std::to_string(t));
    }
}

// x erfcx(x sqrt t) and its x-derivative.
double phi_scaled(double x, double sqrt_t) { return x * eval_erfcx(x * sqrt_t); }

double phi_scaled_derivative(double x, double sqrt_t) {
    const double y = x * sqrt_t;
    return eval_erfcx(y) * (1.0 + 2.0 * y * y) - 2.0 * y * kInvSqrtPi;
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double kernel_tail(double a, double t) {
    const double s = a * a * t;
    const double r = std::sqrt(s);
    if (r == 0.0) return 1.0 / a;
    return (2.0 / a) * std::exp(-s) * (0.5 - one_minus_scaled_erfc(r) * (0.5 + s)) / (kSqrtPi * r);
}

}  // namespace

void KernelParams::validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("KernelParams: beta must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("KernelParams: alpha must be nonnegative");
}

double eval_erf(double x) { return calerf(x, ErfKind::erf); }
double eval_erfc(double x) { return calerf(x, ErfKind::erfc); }
double eval_erfcx(double x) { return calerf(x, ErfKind::erfcx); }

double one_minus_scaled_erfc(double y) {
    if (y < 0.0) throw std::domain_error("one_minus_scaled_erfc: requires y >= 0");
    if (y <= 4.0) return 1.0 - kSqrtPi * y * eval_erfcx(y);
    // sqrt(pi) y erfcx(y) = 1 - sqrt(pi) R(y) on the third Cody interval.
    return kSqrtPi * tail_rational(y);
}

double eval_f(const KernelParams& params, double t) {
    params.validate();
    require_positive_time(t, "eval_f");
    return std::exp(-params.alpha * t + (params.beta - 1.0) * std::log(t) - std::lgamma(params.beta));
}

double eval_q(double mu, double t) {
    require_positive_time(t, "eval_q");
    if (mu < 0.0) throw std::domain_error("eval_q: requires mu >= 0");
    const double base = 1.0 / std::sqrt(kPi * t);
    if (mu == 0.0) return base;
    return base * one_minus_scaled_erfc(mu * std::sqrt(t));
}

double eval_m(double a, double t) {
    require_positive_time(t, "eval_m");
    if (a < 0.0) throw std::domain_error("eval_m: requires a >= 0");
    return 2.0 * std::exp(-a * a * t) * eval_q(a, t);
}

double kernel_cumulative(double a, double t) {
    if (t < 0.0) throw std::domain_error("kernel_cumulative: requires t >= 0");
    if (a < 0.0) throw std::domain_error("kernel_cumulative: requires a >= 0");
    if (std::isinf(t)) return kernel_total_mass(a);
    if (a == 0.0) return 4.0 * std::sqrt(t) * kInvSqrtPi;
    const double s = a * a * t;
    const double r = std::sqrt(s);
    return (2.0 / a) * (0.5 * eval_erf(r) - s * eval_erfc(r) + r * std::exp(-s) * kInvSqrtPi);
}

double kernel_total_mass(double a) {
    if (a < 0.0) throw std::domain_error("kernel_total_mass: requires a >= 0");
    return a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / a;
}

double kernel_moment(double a, double t0, double t1) {
    if (!(t0 >= 0.0) || !(t1 > t0)) {
        throw std::domain_error("kernel_moment: requires 0 <= t0 < t1");
    }
    if (a < 0.0) throw std::domain_error("kernel_moment: requires a >= 0");
    if (a == 0.0) {
        if (std::isinf(t1)) return std::numeric_limits<double>::infinity();
        return 4.0 * kInvSqrtPi * (t1 - t0) / (std::sqrt(t1) + std::sqrt(t0));
    }
    const double tail1 = std::isinf(t1) ? 0.0 : kernel_tail(a, t1);
    if (a * a * t0 < 1.0) {
        if (std::isinf(t1)) return kernel_tail(a, t0);
        return kernel_cumulative(a, t1) - kernel_cumulative(a, t0);
    }
    return kernel_tail(a, t0) - tail1;
}

double eval_gauss_kernel(double x, double t, double a) {
    require_positive_time(t, "eval_gauss_kernel");
    return std::exp(-a * a * t - x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double integral_f_half(double a, double t) {
    if (t < 0.0) throw std::domain_error("integral_f_half: requires t >= 0");
    if (a == 0.0) return 2.0 * std::sqrt(t) * kInvSqrtPi;
    return eval_erf(a * std::sqrt(t)) / a;
}

double scaled_erfc_divided_difference(double k, double b, double t) {
    if (t < 0.0) throw std::domain_error("scaled_erfc_divided_difference: requires t >= 0");
    if (t == 0.0) return 1.0;
    const double sqrt_t = std::sqrt(t);
    const double spread = std::fabs(b - k);
    if (spread > 0.25 * std::max(std::fabs(b), std::fabs(k))) {
        return (phi_scaled(b, sqrt_t) - phi_scaled(k, sqrt_t)) / (b - k);
    }
    // Mean of the derivative over [k, b]; exact limit when k == b.
    const double mid = 0.5 * (k + b);
    const double half = 0.5 * (b - k);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGl16Nodes.size(); ++i) {
        sum += kGl16Weights[i] * (phi_scaled_derivative(mid - half * kGl16Nodes[i], sqrt_t) +
                                  phi_scaled_derivative(mid + half * kGl16Nodes[i], sqrt_t));
    }
    return 0.5 * sum;
}

double damped_q_integral(double k, double b, double t) {
    if (k < 0.0 || b < 0.0 || !(k + b > 0.0)) {
        throw std::domain_error("damped_q_integral: requires k, b >= 0 with k + b > 0");
    }
    if (t < 0.0) throw std::domain_error("damped_q_integral: requires t >= 0");
    if (std::isinf(t)) return 1.0 / (b + k);
    return (1.0 - std::exp(-k * k * t) * scaled_erfc_divided_difference(k, b, t)) / (b + k);
}

double scaled_bessel_i(int nu, double x) {
    if (nu != 0 && nu != 1) throw std::invalid_argument("scaled_bessel_i: nu must be 0 or 1");
    if (x < 0.0) throw std::domain_error("scaled_bessel_i: requires x >= 0");
    if (x <= 500.0) return std::cyl_bessel_i(static_cast<double>(nu), x) * std::exp(-x);
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

double sqrt_profile_response(double a, double t) {
    if (t < 0.0) throw std::domain_error("sqrt_profile_response: requires t >= 0");
    if (a == 0.0) return kSqrtPi;
    // Transform sqrt(pi) / (sqrt(lambda) (sqrt(lambda+a^2) + a)) inverted through
    // L^{-1}[1/sqrt(lambda(lambda+a^2))] = e^{-a^2 t/2} I_0(a^2 t/2) and its primitive.
    const double x = 0.5 * a * a * t;
    const double i0 = scaled_bessel_i(0, x);
    const double i1 = scaled_bessel_i(1, x);
    return kSqrtPi * (i0 + a * a * t * (i0 + i1)) - 2.0 * a * std::sqrt(t);
}

std::complex<double> laplace_f(const KernelParams& params, std::complex<double> lambda) {
    params.validate();
    return std::pow(lambda + params.alpha, -params.beta);
}

std::complex<double> laplace_m(double a, std::complex<double> lambda) {
    return 2.0 / (std::sqrt(lambda + a * a) + a);
}

std::complex<double> laplace_q(double mu, std::complex<double> lambda) {
    return 1.0 / (std::sqrt(lambda) + mu);
}

std::complex<double> green_function(double a, std::complex<double> lambda, double y) {
    const std::complex<double> root = std::sqrt(lambda + a * a);
    return std::exp(-root * std::fabs(y)) / (2.0 * root);
}

}  // namespace kwc
