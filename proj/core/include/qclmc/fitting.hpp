#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qclmc/level_path.hpp"
#include "qclmc/rate_params.hpp"

// Log-linear estimation of the rate parameters (c1, alpha, c2, beta, c3,
// gamma) from sampled paths: per refinement index j the cross-path mean and
// variance of dQ_j/dl_j and the mean of dC_j/dl_j are regressed against the
// averaged level grid.

namespace qclmc {

struct FitWindow {
    std::size_t j_min = 0;  // inclusive refinement indices
    std::size_t j_max = 0;
};

struct FitOptions {
    std::optional<FitWindow> window;  // default: drop j = 1 and the last refinement
    bool fit_mean = true;
    bool fit_variance = true;
    bool fit_cost = true;
};

struct FitReport {
    double c1 = 0.0, alpha = 0.0;
    double c2 = 0.0, beta = 0.0;
    double c3 = 0.0, gamma = 0.0;
    bool has_mean = false, has_variance = false, has_cost = false;

    double mean_rms = 0.0, variance_rms = 0.0, cost_rms = 0.0;  // log-space residuals
    std::vector<double> level_grid;                             // averaged l_j over the window
    FitWindow window;

    /// Bundle into RateParams with the estimator rate r (requires all fits).
    RateParams to_rate_params(double r) const;
};

class DegenerateDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Least-squares rate fit. Throws DegenerateDataError (naming the refinement
/// index) when a mean magnitude or variance vanishes or the mean changes sign
/// inside the window.
FitReport estimate_rates(const std::vector<LevelPath>& paths, const FitOptions& opts = {});

struct RateRecommendation {
    double r = 0.0;
    bool optimal_regime = false;  // gamma < min(beta, 2 alpha)
};

/// r = (gamma + min(beta, 2 alpha)) / 2.
RateRecommendation recommend_r(const RateParams& p);

}  // namespace qclmc
