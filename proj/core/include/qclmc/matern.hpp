#pragma once

#include <stdexcept>

// Matern covariance kernels on the line. Half-integer smoothness uses the
// closed forms; nu = 1 goes through the modified Bessel function K_1.

namespace qclmc {

struct MaternParams {
    double nu = 1.5;      // smoothness, one of {0.5, 1, 1.5, 2.5}
    double lambda = 0.1;  // correlation length
    double variance = 0.5;

    void validate() const {
        if (!(lambda > 0.0)) throw std::invalid_argument("MaternParams: lambda must be positive");
        if (!(variance > 0.0)) throw std::invalid_argument("MaternParams: variance must be positive");
        if (!(nu == 0.5 || nu == 1.0 || nu == 1.5 || nu == 2.5))
            throw std::invalid_argument("MaternParams: nu must be one of 0.5, 1, 1.5, 2.5");
    }
};

/// Cov(x, y); returns the variance at x == y.
double matern_covariance(const MaternParams& p, double x, double y);

/// d/dx Cov(x, y); zero at x == y (one-sided limits for nu = 0.5).
double matern_covariance_dx(const MaternParams& p, double x, double y);

}  // namespace qclmc
