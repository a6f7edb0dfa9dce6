#pragma once

#include <stdexcept>

namespace qclmc {

/// Exponential envelopes of the level process: |E[dQ/dl]| <= c1 e^{-alpha l},
/// V[dQ/dl] <= c2 e^{-beta l}, dC/dl <= c3 e^{gamma l}, plus the estimator
/// rate r and the discrepancy constants of the level sequence.
struct RateParams {
    double c1 = 5.21e-2;
    double alpha = 1.85;
    double c2 = 4.13e-4;
    double beta = 3.69;
    double c3 = 1.0;
    double gamma = 1.83;
    double r = 2.76;

    double c_disc = 1.0;   // discrepancy constant, D_M <= c_disc M^{kappa-1}
    double c_tilde = 0.5;  // max point constant, max x^(k) = 1 - c_tilde M^{kappa-1}
    double kappa = 0.0;

    void validate() const {
        if (!(c1 > 0 && alpha > 0 && c2 >= 0 && beta > 0 && c3 > 0 && gamma > 0 && r > 0))
            throw std::invalid_argument("RateParams: rates must be positive");
        if (!(c_disc > 0) || !(c_tilde > 0) || c_tilde > c_disc)
            throw std::invalid_argument("RateParams: need 0 < c_tilde <= c_disc");
        if (!(kappa >= 0.0 && kappa < 1.0))
            throw std::invalid_argument("RateParams: kappa must lie in [0,1)");
    }
};

}  // namespace qclmc
