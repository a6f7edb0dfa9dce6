#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "qclmc/rate_params.hpp"

// Closed-form bias/variance/MSE upper bounds for the QCLMC and CLMC
// estimators, the closed forms of the two variance integrals behind them,
// and the epsilon-driven (L_max, M) schedule with its cost exponent.
//
// Special-rate branches (r equal to alpha, beta/2, beta or gamma) engage
// within 1e-9 of the degenerate value; the general branches use expm1-based
// evaluation so they stay accurate arbitrarily close to the branch points.

namespace qclmc {

enum class Method { clmc, qclmc };

inline constexpr double kRateBranchTol = 1e-9;

struct BiasTerms {
    double standard = 0.0;
    double discrepancy = 0.0;

    double total() const { return standard + discrepancy; }
};

struct QclmcVarianceTerms {
    double discrepancy = 0.0;
    double convergence = 0.0;

    double total() const { return discrepancy + convergence; }
};

struct ClmcVarianceTerms {
    double convergence = 0.0;       // from the variance decay assumption
    double bias_convergence = 0.0;  // from the mean decay assumption

    double total() const { return convergence + bias_convergence; }
};

/// Itemized MSE upper bound; mse == sum of variance terms + (sum of bias terms)^2.
struct BoundReport {
    Method method = Method::qclmc;
    std::size_t m = 0;
    double l_eff = 0.0;  // L_max ^ Lbar in force (infinity for unbiased CLMC)
    double bias_standard = 0.0;
    double bias_discrepancy = 0.0;
    double var_convergence = 0.0;
    double var_bias_convergence = 0.0;  // CLMC only
    double var_discrepancy = 0.0;       // QCLMC only
    double mse = 0.0;
};

/// Lbar = ln(c_tilde^{-1/r} M^{(1-kappa)/r}) for a sequence meeting the
/// discrepancy convergence property.
double effective_max_level(const RateParams& p, std::size_t m);

/// (standard, discrepancy) bias terms of the QCLMC estimator at level l_eff.
BiasTerms qclmc_bias_bound(const RateParams& p, std::size_t m, double l_eff);

/// (discrepancy, convergence) variance terms of the QCLMC estimator; the
/// discrepancy term equals integral I's closed form and the convergence term
/// equals integral II's.
QclmcVarianceTerms qclmc_variance_bound(const RateParams& p, std::size_t m, double l_eff);

/// (c_disc c2 / M^2) (integral_0^l e^{(r-beta/2) u} du)^2.
double appendix_integral_I_closed(const RateParams& p, std::size_t m, double l);

/// (c2/M) int int e^{-r max(u,u')} e^{(r-beta/2)(u+u')} du du' over [0,l]^2,
/// evaluated by its exact case-split closed form.
double appendix_integral_II_closed(const RateParams& p, std::size_t m, double l);

/// CLMC variance terms; l_max may be infinity, which requires r < min(beta, 2 alpha).
ClmcVarianceTerms clmc_variance_bound(const RateParams& p, std::size_t m, double l_max);

/// (c1/alpha) e^{-alpha l_max}; zero at infinity.
double clmc_bias_bound(const RateParams& p, double l_max);

/// Assemble the full report. QCLMC uses l_eff = effective_max_level(p, m)
/// unless an observed maximal level is supplied; CLMC uses l_max = infinity.
BoundReport mse_bound(Method method, const RateParams& p, std::size_t m,
                      std::optional<double> l_eff_override = std::nullopt);

/// Thrown by clmc_variance_bound at l_max = infinity when r >= min(beta, 2 alpha).
class DivergentBoundError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EpsilonSchedule {
    double l_max = 0.0;            // (1/alpha) ln(c1 sqrt(2) / (alpha eps))
    double m_eps_exponent = 0.0;   // M >~ eps^{m_eps_exponent} |ln eps|^{m_log_power}
    int m_log_power = 0;
    double cost_eps_exponent = 0.0;  // cost <~ eps^{cost_eps_exponent} |ln eps|^{cost_log_power}
    int cost_log_power = 0;
    bool optimal_regime = false;  // gamma < min(beta, 2 alpha)
};

/// The epsilon-driven schedule of the complexity theorem; requires eps in (0, 1/e).
EpsilonSchedule epsilon_schedule(const RateParams& p, double eps);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace qclmc
