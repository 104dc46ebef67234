#include "kwc/checks.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>

#include "kwc/fractional_limit.hpp"
#include "kwc/laplace_oracle.hpp"
#include "kwc/special_functions.hpp"

namespace kwc {

KernelCheck run_kernel_check(int points) {
    KernelCheck check;
    check.as = {0.0, 0.5, 1.0, 2.0};
    const double lo = std::log(1e-4);
    const double hi = std::log(20.0);
    for (int i = 0; i < points; ++i) check.times.push_back(std::exp(lo + (hi - lo) * i / (points - 1)));
    auto fail = [&](bool& flag, const std::string& what) {
        if (flag && check.first_failure.empty()) check.first_failure = what;
        flag = false;
    };
    for (double a : check.as) {
        std::vector<double> row;
        for (std::size_t i = 0; i < check.times.size(); ++i) {
            const double t = check.times[i];
            const double m = eval_m(a, t);
            row.push_back(m);
            if (!(m > 0.0)) fail(check.positive, "positivity a=" + std::to_string(a) + " t=" + std::to_string(t));
            if (i > 0 && !(m < row[i - 1])) {
                fail(check.decreasing, "monotonicity a=" + std::to_string(a) + " t=" + std::to_string(t));
            }
            const double bound = 2.0 * eval_f(KernelParams{a * a, 0.5}, t);
            if (m > bound * (1.0 + 1e-15)) fail(check.bounded, "bound a=" + std::to_string(a) + " t=" + std::to_string(t));
        }
        check.values.push_back(std::move(row));
    }
    check.decay_value = eval_m(1.0, 50.0);
    if (!(check.decay_value < 1e-6)) fail(check.decays, "decay m_1(50)");
    return check;
}

namespace {

// (g1 * g2)(t) with g1 weakly singular at 0; s = t - u^2 removes the singularity.
double singular_convolution(const std::function<double(double)>& g1, const std::function<double(double)>& g2,
                            double t) {
    using boost::math::quadrature::gauss_kronrod;
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        return g1(u * u) * g2(t - u * u) * 2.0 * u;
    };
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, std::sqrt(t), 4, 1e-11);
}

}  // namespace

std::vector<IdentityRow> run_laplace_identities(const std::vector<double>& lambdas) {
    struct Identity {
        std::string name;
        std::function<double(double)> g;
        double singular_exponent;
        std::function<double(double)> closed;
    };
    const KernelParams f_half{1.0, 0.5};
    std::vector<Identity> identities = {
        {"kernel m_1", [](double t) { return eval_m(1.0, t); }, 0.5,
         [](double l) { return 2.0 * (std::sqrt(l + 1.0) - 1.0) / l; }},
        {"kernel m_0.5", [](double t) { return eval_m(0.5, t); }, 0.5,
         [](double l) { return 2.0 * (std::sqrt(l + 0.25) - 0.5) / l; }},
        {"power f_1/2^1", [f_half](double t) { return eval_f(f_half, t); }, 0.5,
         [](double l) { return 1.0 / std::sqrt(l + 1.0); }},
        {"power f_3/2^0", [](double t) { return eval_f(KernelParams{0.0, 1.5}, t); }, 0.0,
         [](double l) { return std::pow(l, -1.5); }},
        {"shift e^{-2s} q^1", [](double t) { return std::exp(-2.0 * t) * eval_q(1.0, t); }, 0.5,
         [](double l) { return 1.0 / (std::sqrt(l + 2.0) + 1.0); }},
        {"integral of m_1", [](double t) { return kernel_cumulative(1.0, t); }, 0.0,
         [](double l) { return 2.0 * (std::sqrt(l + 1.0) - 1.0) / (l * l); }},
        {"convolution m_1 * e^{-s}",
         [](double t) {
             return singular_convolution([](double s) { return eval_m(1.0, s); },
                                         [](double s) { return std::exp(-s); }, t);
         },
         0.0, [](double l) { return 2.0 * (std::sqrt(l + 1.0) - 1.0) / (l * (l + 1.0)); }},
        {"erfc(sqrt t)", [](double t) { return eval_erfc(std::sqrt(t)); }, 0.0,
         [](double l) { return (1.0 - 1.0 / std::sqrt(l + 1.0)) / l; }},
        {"q^1", [](double t) { return eval_q(1.0, t); }, 0.5,
         [](double l) { return 1.0 / (std::sqrt(l) + 1.0); }},
        {"q^2", [](double t) { return eval_q(2.0, t); }, 0.5,
         [](double l) { return 1.0 / (std::sqrt(l) + 2.0); }},
        {"f - a erfc, a=1",
         [f_half](double t) { return eval_f(f_half, t) - eval_erfc(std::sqrt(t)); }, 0.5,
         [](double l) { return 1.0 / (std::sqrt(l + 1.0) + 1.0); }},
        {"Gauss E^1(1, t)", [](double t) { return eval_gauss_kernel(1.0, t, 1.0); }, 0.0,
         [](double l) { return std::real(green_function(1.0, {l, 0.0}, 1.0)); }},
    };
    std::vector<IdentityRow> rows;
    for (const Identity& id : identities) {
        for (double lambda : lambdas) {
            IdentityRow row;
            row.name = id.name;
            row.lambda = lambda;
            row.quadrature = forward_laplace(id.g, lambda, id.singular_exponent);
            row.closed = id.closed(lambda);
            row.rel_error = std::fabs(row.quadrature - row.closed) / std::fabs(row.closed);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<ModelParams> default_inversion_sets() {
    std::vector<ModelParams> sets(3);
    sets[0].a = 1.0, sets[0].b = 1.0, sets[0].c = 0.25, sets[0].mu = 2.0;
    sets[1].a = 0.5, sets[1].b = 2.0, sets[1].c = 2.0, sets[1].mu = 0.5;
    sets[2].a = 1.0, sets[2].b = 0.5, sets[2].c = 1.0, sets[2].mu = 1.0;
    return sets;
}

std::vector<InversionRow> run_eta_inversion_check(const std::vector<ModelParams>& sets,
                                                  const std::vector<double>& times, int nodes) {
    std::vector<InversionRow> rows;
    for (const ModelParams& p : sets) {
        const LaplaceFunction F = eta_transform(p);
        for (double t : times) {
            InversionRow row;
            row.params = p;
            row.t = t;
            row.inverted = talbot_invert(F, t, nodes);
            row.closed = closed_form_eta(p, t);
            row.abs_error = std::fabs(row.inverted - row.closed);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace kwc
