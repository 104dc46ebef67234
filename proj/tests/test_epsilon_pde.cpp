#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kwc/epsilon_pde.hpp"
#include "kwc/fractional_limit.hpp"

using namespace kwc;

namespace {

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::fabs(x[i] - y[i]));
    return d;
}

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST_CASE("initial data samples the exponential profile") {
    ModelParams p;
    p.c = 0.5;
    p.mu = 2.0;
    p.epsilon = 0.25;
    const GridField f = initial_data(p, 4);
    REQUIRE(f.values.size() == 5);
    CHECK(f.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.values[4] == doctest::Approx(1.0 - 0.5 * std::exp(-8.0)).epsilon(1e-15));
    CHECK(f.dx == doctest::Approx(0.25));
    const ModelParams r = rescaled_params(p);
    CHECK(r.L == doctest::Approx(4.0));
    CHECK(r.epsilon == 1.0);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS(SchemeConfig{0.0, 1.0, 1.0}.validate());
    CHECK_THROWS(SchemeConfig{1e-3, -1.0, 1.0}.validate());
    CHECK_THROWS(SchemeConfig{1e-3, 1.0, 1.2}.validate());
    CHECK_NOTHROW(SchemeConfig{1e-3, 1.0, 0.5}.validate());
    ModelParams p;
    p.epsilon = 0.0;
    CHECK_THROWS(p.validate());
    p = ModelParams{};
    p.b = -1.0;
    CHECK_THROWS(p.validate());
    p.b = 0.0;
    CHECK_NOTHROW(p.validate());
    p.b = -1.0;
    CHECK_THROWS(p.validate());
    GridField g;
    g.n = 2;
    g.dx = 0.5;
    g.values = {1.0, 1.0};
    CHECK_THROWS(g.validate(1.0));
}

TEST_CASE("v = 1 is a fixed point without the jump term") {
    ModelParams p;
    p.b = 0.0;
    p.c = 0.0;
    p.epsilon = 0.3;
    const SchemeConfig cfg{1e-3, 1.0, 1.0};
    GridField f = initial_data(p, 50);
    for (int k = 0; k < 100; ++k) f = step(f, p, cfg);
    for (double v : f.values) CHECK(std::fabs(v - 1.0) < 1e-13);
}

TEST_CASE("mass is conserved without reaction or jump") {
    ModelParams p;
    p.a = 0.0;
    p.b = 0.0;
    p.c = 0.8;
    p.mu = 3.0;
    const int n = 64;
    const SchemeConfig cfg{1e-3, 1.0, 1.0};
    RobinStepper stepper(p, cfg, n);
    std::vector<double> v = initial_data(p, n).values;
    auto mass = [&](const std::vector<double>& w) {
        double m = 0.5 * (w.front() + w.back());
        for (int i = 1; i < n; ++i) m += w[i];
        return m * stepper.dx();
    };
    const double m0 = mass(v);
    for (int k = 0; k < 200; ++k) {
        const double before = mass(v);
        stepper.step_in_place(v);
        CHECK(std::fabs(mass(v) - before) < 1e-12);
    }
    CHECK(std::fabs(mass(v) - m0) < 1e-11);
}

TEST_CASE("one step agrees with the hand-assembled three-node system") {
    ModelParams p;
    p.a = 1.0;
    p.b = 1.0;
    p.c = 0.0;
    p.epsilon = 0.5;
    p.tau1 = 2.0;
    const double dt = 0.01;
    const double dx = 0.5;  // L = 1, n = 2
    const double eps = p.epsilon;
    // tau1 (v - 1)/dt = eps v_xx - (a^2/eps)(v - 1), eps v_x(0) = b v(0), v_x(L) = 0; ghost values eliminated.
    const double r = p.tau1 / (eps * dt);
    const double k = eps / (dx * dx);
    const double s = p.a * p.a / eps;
    const double m[3][3] = {{r + 2 * k + s + 2 * p.b / dx, -2 * k, 0},
                            {-k, r + 2 * k + s, -k},
                            {0, -2 * k, r + 2 * k + s}};
    const double rhs[3] = {r + s, r + s, r + s};
    const double d = det3(m);
    double expected[3];
    for (int col = 0; col < 3; ++col) {
        double mc[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mc[i][j] = j == col ? rhs[i] : m[i][j];
        expected[col] = det3(mc) / d;
    }
    const GridField out = step(initial_data(p, 2), p, SchemeConfig{dt, dt, 1.0});
    for (int i = 0; i < 3; ++i) CHECK(out.values[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    CHECK(out.values[0] < 1.0);
    CHECK(out.values[0] < out.values[1]);
    CHECK(out.values[1] <= out.values[2]);
}

TEST_CASE("implicit matrix is an M-matrix and steps contract toward the stationary state") {
    ModelParams p;
    p.c = 2.0;
    p.epsilon = 0.125;
    const int n = 80;
    const SchemeConfig cfg = SchemeConfig::squared_mesh(p.L, n, 1.0);
    RobinStepper stepper(p, cfg, n);
    const Tridiagonal& m = stepper.implicit_matrix();
    CHECK(m.strictly_diagonally_dominant());
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(m.diag[i] > 0.0);
        CHECK(m.lower[i] <= 0.0);
        CHECK(m.upper[i] <= 0.0);
    }
    const std::vector<double> star = stepper.stationary();
    std::vector<double> fixed = star;
    stepper.step_in_place(fixed);
    CHECK(max_abs_diff(fixed, star) < 1e-13);

    std::vector<double> v = initial_data(p, n).values;
    double distance = max_abs_diff(v, star);
    for (int k = 0; k < 2000; ++k) {
        stepper.step_in_place(v);
        const double next = max_abs_diff(v, star);
        CHECK(next <= distance + 1e-15);
        distance = next;
    }
    const GridField s = stationary_state(p, n);
    CHECK(max_abs_diff(s.values, star) < 1e-14);
}

TEST_CASE("full-domain solve agrees with the half-domain solve for even data") {
    ModelParams p;
    p.c = 0.25;
    p.epsilon = 0.25;
    const int n = 60;
    const SchemeConfig cfg{1e-3, 0.5, 1.0};
    const PdeSolution half = solve(p, cfg, n);
    const FullDomainSolution full = solve_full_domain(p, cfg, n);
    REQUIRE(half.trace.size() == full.trace.size());
    CHECK(max_abs_diff(half.trace.values, full.trace.values) < 1e-10);
    const GridField ext = even_extension(half.final_field);
    CHECK(max_abs_diff(ext.values, full.final_field.values) < 1e-10);
}

TEST_CASE("the scheme commutes with the change of variables y = x / eps") {
    ModelParams p;
    p.c = 2.0;
    p.epsilon = 0.25;
    const int n = 100;
    const SchemeConfig cfg{2e-4, 0.2, 1.0};
    const PdeSolution original = solve(p, cfg, n);
    const PdeSolution rescaled = solve(rescaled_params(p), cfg, n);
    REQUIRE(original.trace.size() == rescaled.trace.size());
    CHECK(max_abs_diff(original.trace.values, rescaled.trace.values) < 1e-13);
    CHECK(max_abs_diff(original.final_field.values, rescaled.final_field.values) < 1e-13);
}

TEST_CASE("second-order spatial convergence on the squared mesh") {
    ModelParams p;
    p.c = 0.25;
    p.epsilon = 1.0;
    const double T = 0.5;
    auto field = [&](int n) { return solve(p, SchemeConfig::squared_mesh(p.L, n, T), n).final_field.values; };
    const auto v1 = field(20);
    const auto v2 = field(40);
    const auto v3 = field(80);
    double e1 = 0.0;
    double e2 = 0.0;
    for (int i = 0; i <= 20; ++i) {
        e1 = std::max(e1, std::fabs(v1[i] - v2[2 * i]));
        e2 = std::max(e2, std::fabs(v2[2 * i] - v3[4 * i]));
    }
    CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("theta = 1/2 keeps the same stationary state") {
    ModelParams p;
    p.c = 0.5;
    const int n = 40;
    RobinStepper euler(p, SchemeConfig{1e-3, 1.0, 1.0}, n);
    RobinStepper cn(p, SchemeConfig{1e-3, 1.0, 0.5}, n);
    CHECK(max_abs_diff(euler.stationary(), cn.stationary()) < 1e-13);
    std::vector<double> v = cn.stationary();
    cn.step_in_place(v);
    CHECK(max_abs_diff(v, cn.stationary()) < 1e-13);
}

TEST_CASE("trace relaxes to the stationary value of the limit energy") {
    for (double c : {0.0, 2.0}) {
        ModelParams p;
        p.c = c;
        p.epsilon = 0.125;
        const int n = 100;
        const PdeSolution sol = solve(p, SchemeConfig::squared_mesh(p.L, n, 20.0), n);
        const double xi = sol.trace.values.back();
        CHECK(xi == doctest::Approx(LimitEnergy{1.0, 1.0}.stationary_point()).epsilon(0.04));
        CHECK(std::fabs(xi - 0.5) <= 0.02);
    }
}

TEST_CASE("trace at eps = 1/8 is close to the limit") {
    for (double c : {0.0, 0.25, 2.0}) {
        ModelParams p;
        p.c = c;
        p.epsilon = 0.125;
        const int n = 200;
        const PdeSolution sol = solve(p, SchemeConfig::squared_mesh(p.L, n, 5.0), n);
        const double err = std::fabs(sol.trace.values.back() - closed_form_xi(p, sol.trace.times.back()));
        CHECK(err < 2.0 * 4.6e-5);
    }
}

TEST_CASE("weighted time derivative stays below the data bound") {
    for (double c : {0.0, 0.25, 2.0}) {
        ModelParams p;
        p.c = c;
        p.epsilon = 0.125;
        const int n = 200;
        const SchemeConfig cfg{1e-3, 2.0, 1.0};
        const DerivativeBoundReport r = time_derivative_bound_check(p, cfg, n, 1.0);
        CHECK(r.holds);
        CHECK(r.weighted_sup <= r.data_norm);
        CHECK(r.data_norm == doctest::Approx(std::fabs(c) * p.mu + std::fabs(c) + 1.0));
    }
}

TEST_CASE("derivative estimate is stable under step halving") {
    ModelParams p;
    p.c = 2.0;
    p.epsilon = 0.125;
    const int n = 400;
    const double coarse = time_derivative_bound_check(p, SchemeConfig{1e-3, 1.0, 1.0}, n, 1.0).weighted_sup;
    const double fine = time_derivative_bound_check(p, SchemeConfig{5e-4, 1.0, 1.0}, n, 1.0).weighted_sup;
    CHECK(std::fabs(coarse - fine) <= 0.05 * fine);
}
