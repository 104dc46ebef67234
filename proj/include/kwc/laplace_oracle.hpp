#pragma once

#include <complex>
#include <functional>

#include "kwc/model.hpp"

namespace kwc {

struct LaplaceFunction {
    std::function<std::complex<double>(std::complex<double>)> evaluator;
    double abscissa = 0.0;  // every singularity lies at or left of this real value
};

/// int_0^inf e^{-lambda t} g(t) dt for g with at worst a t^{-p} singularity at 0, 0 <= p < 1.
double forward_laplace(const std::function<double(double)>& g, double lambda, double singular_exponent = 0.0);

/// Fixed Talbot contour inversion with the given number of nodes.
double talbot_invert(const LaplaceFunction& F, double t, int nodes = 32);

/// Transform of eta for exponential data, in the product form.
std::complex<double> eval_eta_hat(const ModelParams& params, std::complex<double> lambda);

/// Same transform, written through g^a as -b/(sqrt(lambda+a^2)+b) (g^a + 1/lambda) + g^a.
std::complex<double> eval_eta_hat_split(const ModelParams& params, std::complex<double> lambda);

/// g^a(lambda) = -c / (sqrt(lambda+a^2) (mu + sqrt(lambda+a^2))).
std::complex<double> eval_g_hat(const ModelParams& params, std::complex<double> lambda);

LaplaceFunction eta_transform(const ModelParams& params);

}  // namespace kwc
