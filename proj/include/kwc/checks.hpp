#pragma once

#include <string>
#include <vector>

#include "kwc/model.hpp"

namespace kwc {

struct KernelCheck {
    bool positive = true;
    bool decreasing = true;
    bool decays = true;  // m_1(50) < 1e-6
    bool bounded = true; // m_a <= 2 f_{1/2}^{a^2}
    double decay_value = 0.0;
    std::string first_failure;
    std::vector<double> times;
    std::vector<double> as;
    std::vector<std::vector<double>> values;  // [a][t]

    bool ok() const { return positive && decreasing && decays && bounded; }
};

/// Log-spaced grid on [1e-4, 20] for a in {0, 0.5, 1, 2}.
KernelCheck run_kernel_check(int points = 400);

struct IdentityRow {
    std::string name;
    double lambda = 0.0;
    double quadrature = 0.0;
    double closed = 0.0;
    double rel_error = 0.0;
};

/// Laplace identities of the kernel family checked by forward quadrature.
std::vector<IdentityRow> run_laplace_identities(const std::vector<double>& lambdas = {0.5, 1.0, 2.0, 5.0});

struct InversionRow {
    ModelParams params;
    double t = 0.0;
    double inverted = 0.0;
    double closed = 0.0;
    double abs_error = 0.0;
};

/// Talbot inversion of the eta transform against the closed-form eta.
std::vector<InversionRow> run_eta_inversion_check(const std::vector<ModelParams>& sets,
                                                  const std::vector<double>& times = {0.25, 1.0, 4.0},
                                                  int nodes = 32);

std::vector<ModelParams> default_inversion_sets();

}  // namespace kwc
