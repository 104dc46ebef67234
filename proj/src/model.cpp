#include "kwc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace kwc {

void ModelParams::validate() const {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("ModelParams: a must be finite and >= 0");
    if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("ModelParams: b must be finite and >= 0");
    if (!std::isfinite(c)) throw std::invalid_argument("ModelParams: c must be finite");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("ModelParams: mu must be finite and >= 0");
    if (!(tau1 > 0.0)) throw std::invalid_argument("ModelParams: tau1 must be > 0");
    if (!(L > 0.0)) throw std::invalid_argument("ModelParams: L must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be > 0");
}

void LimitEnergy::validate() const {
    if (!(a >= 0.0)) throw std::invalid_argument("LimitEnergy: a must be >= 0");
    if (!(b >= 0.0)) throw std::invalid_argument("LimitEnergy: b must be >= 0");
    if (a + b == 0.0) throw std::invalid_argument("LimitEnergy: a + b must be positive");
}

double LimitEnergy::value(double xi) const { return b * xi * xi + a * (xi - 1.0) * (xi - 1.0); }

double LimitEnergy::gradient(double xi) const { return 2.0 * ((b + a) * xi - a); }

double LimitEnergy::stationary_point() const { return a / (a + b); }

double grad_energy(const LimitEnergy& energy, double xi) { return energy.gradient(xi); }

void TimeSeries::push(double t, double v) {
    if (!times.empty() && !(t > times.back())) {
        throw std::invalid_argument("TimeSeries: times must be strictly increasing");
    }
    times.push_back(t);
    values.push_back(v);
}

void TimeSeries::validate() const {
    if (times.size() != values.size()) throw std::logic_error("TimeSeries: length mismatch");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(values[i])) throw std::logic_error("TimeSeries: non-finite value");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::logic_error("TimeSeries: times not increasing");
    }
}

}  // namespace kwc
