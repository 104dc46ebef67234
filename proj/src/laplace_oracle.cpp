#include "kwc/laplace_oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

#include "kwc/special_functions.hpp"

namespace kwc {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kRelTol = 1e-13;
constexpr unsigned kMaxDepth = 20;

void check_lambda(const ModelParams& params, std::complex<double> lambda) {
    if (lambda == std::complex<double>(0.0, 0.0)) throw std::domain_error("eta transform: lambda = 0");
    if (!(lambda.real() + params.a * params.a > 0.0) && lambda.imag() == 0.0) {
        throw std::domain_error("eta transform: lambda on the branch cut");
    }
}

}  // namespace

double forward_laplace(const std::function<double(double)>& g, double lambda, double p) {
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("forward_laplace: singular exponent must lie in [0, 1)");
    if (!(lambda > 0.0)) throw std::domain_error("forward_laplace: lambda must be positive");
    const double t0 = std::min(1.0, 1.0 / lambda);

    // t = u^{2/(1-p)} turns t^{-p} dt into u du and half-integer powers of t into integer powers of u.
    const double power = 2.0 / (1.0 - p);
    auto head = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double t = std::pow(u, power);
        return std::exp(-lambda * t) * g(t) * power * std::pow(u, power - 1.0);
    };
    const double u0 = std::pow(t0, 1.0 / power);
    double err = 0.0;
    const double near = gauss_kronrod<double, 61>::integrate(head, 0.0, u0, kMaxDepth, kRelTol, &err);

    auto tail = [&](double s) { return std::exp(-lambda * (t0 + s)) * g(t0 + s); };
    const double far = gauss_kronrod<double, 61>::integrate(tail, 0.0, std::numeric_limits<double>::infinity(),
                                                            kMaxDepth, kRelTol, &err);
    const double value = near + far;
    if (!std::isfinite(value)) throw std::runtime_error("forward_laplace: non-finite result");
    return value;
}

double talbot_invert(const LaplaceFunction& F, double t, int nodes) {
    if (!(t > 0.0)) throw std::domain_error("talbot_invert: requires t > 0");
    if (nodes < 16) throw std::domain_error("talbot_invert: requires at least 16 nodes");
    const double r = 2.0 * nodes / (5.0 * t);
    if (!(F.abscissa < r)) throw std::domain_error("talbot_invert: contour crosses the abscissa");

    double sum = 0.5 * std::real(F.evaluator({r, 0.0})) * std::exp(r * t);
    for (int k = 1; k < nodes; ++k) {
        const double theta = k * kPi / nodes;
        const double cot = 1.0 / std::tan(theta);
        const std::complex<double> s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        sum += std::real(std::exp(t * s) * F.evaluator(s) * std::complex<double>(1.0, sigma));
    }
    return r / nodes * sum;
}

std::complex<double> eval_g_hat(const ModelParams& params, std::complex<double> lambda) {
    const std::complex<double> root = std::sqrt(lambda + params.a * params.a);
    return -params.c / (root * (params.mu + root));
}

std::complex<double> eval_eta_hat(const ModelParams& params, std::complex<double> lambda) {
    check_lambda(params, lambda);
    const std::complex<double> root = std::sqrt(lambda + params.a * params.a);
    return (-params.c / (params.mu + root) - params.b / lambda) / (root + params.b);
}

std::complex<double> eval_eta_hat_split(const ModelParams& params, std::complex<double> lambda) {
    check_lambda(params, lambda);
    const std::complex<double> root = std::sqrt(lambda + params.a * params.a);
    const std::complex<double> g = eval_g_hat(params, lambda);
    return -params.b / (root + params.b) * (g + 1.0 / lambda) + g;
}

LaplaceFunction eta_transform(const ModelParams& params) {
    params.validate();
    return LaplaceFunction{[params](std::complex<double> lambda) { return eval_eta_hat(params, lambda); }, 0.0};
}

}  // namespace kwc
