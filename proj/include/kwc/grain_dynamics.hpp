#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kwc/fractional_limit.hpp"
#include "kwc/model.hpp"

namespace kwc {

/// beta sampled on a uniform grid over [-L, L].
struct WeightProfile {
    double L = 1.0;
    std::vector<double> x;
    std::vector<double> beta;

    void validate() const;
    /// Samples f on 2 n + 1 nodes so that x = 0 is a node.
    static WeightProfile sample(const std::function<double(double)>& f, double L, int n);
    std::size_t center() const { return (x.size() - 1) / 2; }
};

struct CahnHoffmanField {
    std::vector<double> x;
    std::vector<double> z;
};

struct StationaryReport {
    bool constant_flux = false;  // beta z constant: u_t = (beta z)_x with u_t = 0
    bool bounded = false;        // |z| <= 1
    bool energy_identity = false;
    bool degenerate = false;     // beta(0) = 0, z = 0 candidate
    double pairing = 0.0;        // -int u (beta z)_x for the single jump of height b at 0
    double energy = 0.0;         // int beta |u_x| + boundary terms with g = u at the ends
    std::string violation;       // first violated condition, empty on success
    double violation_at = 0.0;
    CahnHoffmanField field;

    bool ok() const { return constant_flux && bounded && energy_identity; }
};

StationaryReport verify_stationary(const WeightProfile& beta, double b, double tol = 1e-12);

enum class GrainBoundary { periodic, dirichlet, neumann };

/// Facet heights h_j on [p_{j-1}, p_j] and junction order parameters. Junction j sits between facets j
/// and j + 1; periodic states carry one extra junction joining the last facet to the first.
struct GrainState {
    std::vector<double> partition;
    std::vector<double> heights;
    std::vector<double> xis;
    std::vector<int> chis;
    double alpha_w1 = 1.0;
    double a = 1.0;
    double time = 0.0;
    GrainBoundary boundary = GrainBoundary::neumann;
    std::vector<VolterraStepper> memory;

    std::size_t facets() const { return heights.size(); }
    std::size_t junctions() const { return xis.size(); }
    /// Facets joined by junction j.
    std::pair<std::size_t, std::size_t> junction_facets(std::size_t j) const;
    double jump(std::size_t j) const;
    void validate() const;
};

/// xi_j(0) = 1 - c_j; chis from the heights; empty memory.
GrainState make_grain_state(std::vector<double> partition, std::vector<double> heights,
                            const std::vector<double>& c, double a, double alpha_w1, GrainBoundary boundary);

/// One explicit step of the coupled system with b_j frozen at |h_{j+1} - h_j|.
GrainState step_grains(const GrainState& state, double dt);

/// sum_j (p_j - p_{j-1}) h_j.
double weighted_height_sum(const GrainState& state);

/// sum over junctions of |h_{j+1} - h_j|.
double height_variation(const GrainState& state);

}  // namespace kwc
