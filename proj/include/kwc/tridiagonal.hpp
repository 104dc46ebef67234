#pragma once

#include <vector>

namespace kwc {

/// Tridiagonal system; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
    std::size_t size() const { return diag.size(); }

    bool strictly_diagonally_dominant() const;
    std::vector<double> multiply(const std::vector<double>& x) const;
};

/// Thomas elimination without pivoting. Throws std::runtime_error on a zero pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& m, const std::vector<double>& rhs);

}  // namespace kwc
