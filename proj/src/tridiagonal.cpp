#include "kwc/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace kwc {

bool Tridiagonal::strictly_diagonally_dominant() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        if (i > 0) off += std::fabs(lower[i]);
        if (i + 1 < n) off += std::fabs(upper[i]);
        if (!(std::fabs(diag[i]) > off)) return false;
    }
    return true;
}

std::vector<double> Tridiagonal::multiply(const std::vector<double>& x) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("Tridiagonal::multiply: size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& m, const std::vector<double>& rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_tridiagonal: size mismatch");
    if (n == 0) return {};
    std::vector<double> c(n), d(n);
    double pivot = m.diag[0];
    if (pivot == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    c[0] = n > 1 ? m.upper[0] / pivot : 0.0;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) throw std::runtime_error("solve_tridiagonal: zero pivot");
        c[i] = i + 1 < n ? m.upper[i] / pivot : 0.0;
        d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

}  // namespace kwc
