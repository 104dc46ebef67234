#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "kwc/fractional_limit.hpp"
#include "kwc/grain_dynamics.hpp"

using namespace kwc;

namespace {

GrainState run(GrainState s, double dt, long steps) {
    for (long k = 0; k < steps; ++k) s = step_grains(s, dt);
    return s;
}

double dirichlet_error(double a, double b, double c, double dt, double t_end, bool against_closed) {
    GrainState s = make_grain_state({0.0, 1.0, 2.0}, {0.0, b}, {c}, a, 1.0, GrainBoundary::dirichlet);
    ModelParams p;
    p.a = a;
    p.b = b;
    p.c = c;
    p.mu = a;
    const TimeSeries ref = solve_volterra(LimitEnergy{a, b}, ForcingSpec::well_prepared(c), p, dt, t_end);
    double worst = 0.0;
    for (std::size_t k = 1; k < ref.size(); ++k) {
        s = step_grains(s, dt);
        const double target = against_closed ? closed_form_xi(p, s.time) : ref.values[k];
        worst = std::max(worst, std::fabs(s.xis[0] - target));
    }
    return worst;
}

}  // namespace

TEST_CASE("stationary check on admissible weights") {
    const StationaryReport flat = verify_stationary(WeightProfile::sample([](double) { return 1.0; }, 1.0, 50), 1.0);
    CHECK(flat.ok());
    for (double z : flat.field.z) CHECK(z == 1.0);
    CHECK(flat.energy == doctest::Approx(1.0));

    const WeightProfile w = WeightProfile::sample([](double x) { return 1.0 + x * x; }, 1.0, 50);
    const StationaryReport r = verify_stationary(w, 2.0);
    CHECK(r.ok());
    CHECK(r.violation.empty());
    for (std::size_t i = 0; i < w.x.size(); ++i) CHECK(r.field.z[i] == doctest::Approx(1.0 / (1.0 + w.x[i] * w.x[i])));
    CHECK(r.pairing == doctest::Approx(2.0));
}

TEST_CASE("stationary check reports the first violation") {
    const StationaryReport r = verify_stationary(WeightProfile::sample([](double x) { return 2.0 - std::fabs(x); }, 1.0, 50), 1.0);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.bounded);
    CHECK(r.constant_flux);
    CHECK(r.violation == "bounded");
    CHECK(r.violation_at < 0.0);
}

TEST_CASE("degenerate weight at the jump") {
    const StationaryReport r = verify_stationary(WeightProfile::sample([](double x) { return std::fabs(x); }, 1.0, 20), 1.0);
    CHECK(r.degenerate);
    CHECK(r.energy_identity);
    CHECK(r.pairing == 0.0);
    CHECK(r.energy == 0.0);
    for (double z : r.field.z) CHECK(z == 0.0);
}

TEST_CASE("weight profile validation") {
    WeightProfile w;
    w.x = {-1.0, 0.0, 1.0};
    w.beta = {1.0, -1.0, 1.0};
    CHECK_THROWS(w.validate());
    w.beta = {1.0, 1.0};
    CHECK_THROWS(w.validate());
    CHECK_THROWS(verify_stationary(WeightProfile::sample([](double) { return 1.0; }, 1.0, 4), 0.0));
}

TEST_CASE("degenerate partitions are rejected") {
    CHECK_THROWS_AS(make_grain_state({0.0, 1.0, 1.0}, {0.0, 1.0}, {0.0}, 1.0, 1.0, GrainBoundary::neumann), std::domain_error);
    CHECK_THROWS(make_grain_state({0.0, 1.0, 2.0}, {0.0, 1.0}, {0.0, 0.0}, 1.0, 1.0, GrainBoundary::neumann));
    GrainState s = make_grain_state({0.0, 1.0, 2.0}, {0.0, 1.0}, {0.0}, 1.0, 1.0, GrainBoundary::neumann);
    CHECK_THROWS(step_grains(s, 0.0));
    s = step_grains(s, 0.01);
    CHECK_THROWS(step_grains(s, 0.02));
}

TEST_CASE("equal heights with xi = 1 and a = 0 is a fixed point") {
    for (GrainBoundary bc : {GrainBoundary::neumann, GrainBoundary::periodic, GrainBoundary::dirichlet}) {
        const std::size_t junctions = bc == GrainBoundary::periodic ? 4 : 3;
        const GrainState s0 = make_grain_state({0.0, 0.5, 1.0, 1.7, 2.0}, {0.3, 0.3, 0.3, 0.3},
                                               std::vector<double>(junctions, 0.0), 0.0, 1.0, bc);
        const GrainState s = run(s0, 0.01, 100);
        for (double h : s.heights) CHECK(h == 0.3);
        for (double xi : s.xis) CHECK(xi == 1.0);
        for (int chi : s.chis) CHECK(chi == 0);
    }
}

TEST_CASE("periodic steps conserve the weighted height sum") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> partition{0.0};
        std::vector<double> heights;
        std::vector<double> c;
        for (int j = 0; j < 5; ++j) {
            partition.push_back(partition.back() + 0.2 + u(rng));
            heights.push_back(2.0 * u(rng) - 1.0);
            c.push_back(u(rng));
        }
        GrainState s = make_grain_state(partition, heights, c, 1.0, 1.0, GrainBoundary::periodic);
        const double initial = weighted_height_sum(s);
        for (int k = 0; k < 1000; ++k) {
            const double before = weighted_height_sum(s);
            s = step_grains(s, 1e-3);
            CHECK(std::fabs(weighted_height_sum(s) - before) <= 1e-12);
        }
        CHECK(std::fabs(weighted_height_sum(s) - initial) <= 1e-11);
    }
}

TEST_CASE("two-facet Dirichlet junction reproduces the limit solver") {
    for (auto [a, b, c] : {std::tuple{1.0, 1.0, 0.25}, {0.5, 2.0, 0.8}, {2.0, 0.3, 0.0}}) {
        CHECK(dirichlet_error(a, b, c, 1e-2, 2.0, false) <= 1e-6);
        CHECK(dirichlet_error(a, b, c, 5e-3, 2.0, false) <= 1e-6);
    }
}

TEST_CASE("two-facet Dirichlet junction converges at first order") {
    const double coarse = dirichlet_error(1.0, 1.0, 0.25, 2e-2, 2.0, true);
    const double fine = dirichlet_error(1.0, 1.0, 0.25, 1e-2, 2.0, true);
    CHECK(fine < coarse);
    CHECK(coarse / fine >= 1.8);
}

TEST_CASE("jumps shrink along canonical runs") {
    const GrainState two = make_grain_state({0.0, 1.0, 2.0}, {0.0, 1.0}, {0.2}, 1.0, 1.0, GrainBoundary::neumann);
    const GrainState three = make_grain_state({0.0, 1.0, 1.5, 2.5}, {0.0, 1.0, 0.2}, {0.2, 0.5}, 1.0, 1.0, GrainBoundary::neumann);
    for (GrainState s : {two, three}) {
        double tv = height_variation(s);
        for (int k = 0; k < 3000; ++k) {
            const GrainState next = step_grains(s, 1e-3);
            for (std::size_t j = 0; j < s.junctions(); ++j) {
                if (s.chis[j] != 0) CHECK(std::fabs(next.jump(j)) <= std::fabs(s.jump(j)) + 1e-15);
            }
            CHECK(height_variation(next) <= tv + 1e-15);
            tv = height_variation(next);
            s = next;
        }
        CHECK(tv < height_variation(two) + height_variation(three));
    }
}

TEST_CASE("facets that meet merge and freeze") {
    GrainState s = make_grain_state({0.0, 1.0, 3.0}, {0.0, 1e-4}, {0.0}, 1.0, 1.0, GrainBoundary::neumann);
    const double mass = weighted_height_sum(s);
    s = step_grains(s, 0.1);
    CHECK(s.heights[0] == s.heights[1]);
    CHECK(s.chis[0] == 0);
    CHECK(weighted_height_sum(s) == doctest::Approx(mass).epsilon(1e-14));
    CHECK(s.heights[0] == doctest::Approx(2e-4 / 3.0));
    const GrainState later = step_grains(s, 0.1);
    CHECK(later.heights == s.heights);
}

TEST_CASE("order parameters stay between their start and the stationary targets") {
    const double a = 1.0;
    const double dt = 1e-3;
    GrainState s = make_grain_state({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 0.5, 2.0}, {0.1, 0.3, 0.0}, a, 1.0,
                                    GrainBoundary::neumann);
    std::vector<double> lower(s.junctions());
    for (std::size_t j = 0; j < s.junctions(); ++j) lower[j] = std::min(s.xis[j], a / (a + std::fabs(s.jump(j))));
    for (int k = 0; k < 2000; ++k) {
        s = step_grains(s, dt);
        for (std::size_t j = 0; j < s.junctions(); ++j) {
            CHECK(s.xis[j] >= lower[j] - dt);
            CHECK(s.xis[j] <= 1.0 + dt);
        }
    }
}
