#include "qclmc/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace qclmc {

namespace {

// phi(t, l) = int_0^l e^{t u} du and its t-derivatives (= int u^n e^{tu} du).
double phi(double t, double l) {
    if (std::abs(t) < kRateBranchTol) return l;
    return std::expm1(t * l) / t;
}

double phi_d1(double t, double l) {
    const double x = t * l;
    return (std::exp(x) * (x - 1.0) + 1.0) / (t * t);
}

double phi_d2(double t, double l) {
    const double x = t * l;
    return (std::exp(x) * (x * x - 2.0 * x + 2.0) - 2.0) / (t * t * t);
}

double phi_d3(double t, double l) {
    const double x = t * l;
    return (std::exp(x) * (x * x * x - 3.0 * x * x + 6.0 * x - 6.0) + 6.0) / (t * t * t * t);
}

// (2/a) [phi(b0 + a) - phi(b0)] with b0 = -beta/2; Taylor in a near the
// r = beta/2 branch point, where the direct difference cancels.
double variance_convergence_shape(double r, double beta, double l) {
    const double a = r - beta / 2.0;
    const double b0 = -beta / 2.0;
    if (std::abs(a) < 1e-6) {
        return 2.0 * phi_d1(b0, l) + a * phi_d2(b0, l) + a * a / 3.0 * phi_d3(b0, l);
    }
    return 2.0 / a * (phi(r - beta, l) - phi(b0, l));
}

}  // namespace

double effective_max_level(const RateParams& p, std::size_t m) {
    p.validate();
    if (m == 0) throw std::invalid_argument("effective_max_level: m must be >= 1");
    return (-std::log(p.c_tilde) + (1.0 - p.kappa) * std::log(static_cast<double>(m))) / p.r;
}

BiasTerms qclmc_bias_bound(const RateParams& p, std::size_t m, double l_eff) {
    p.validate();
    if (!(l_eff >= 0.0)) throw std::invalid_argument("qclmc_bias_bound: l_eff must be >= 0");
    BiasTerms t;
    t.standard = p.c1 / p.alpha * std::exp(-p.alpha * l_eff);
    t.discrepancy = p.c_disc * p.c1 / static_cast<double>(m) * phi(p.r - p.alpha, l_eff);
    return t;
}

double appendix_integral_I_closed(const RateParams& p, std::size_t m, double l) {
    p.validate();
    if (!(l >= 0.0)) throw std::invalid_argument("appendix_integral_I_closed: l must be >= 0");
    const double md = static_cast<double>(m);
    const double s = phi(p.r - p.beta / 2.0, l);
    return p.c_disc * p.c2 / (md * md) * s * s;
}

double appendix_integral_II_closed(const RateParams& p, std::size_t m, double l) {
    p.validate();
    if (!(l >= 0.0)) throw std::invalid_argument("appendix_integral_II_closed: l must be >= 0");
    return p.c2 / static_cast<double>(m) * variance_convergence_shape(p.r, p.beta, l);
}

QclmcVarianceTerms qclmc_variance_bound(const RateParams& p, std::size_t m, double l_eff) {
    QclmcVarianceTerms t;
    t.discrepancy = appendix_integral_I_closed(p, m, l_eff);
    t.convergence = appendix_integral_II_closed(p, m, l_eff);
    return t;
}

ClmcVarianceTerms clmc_variance_bound(const RateParams& p, std::size_t m, double l_max) {
    p.validate();
    if (!(l_max > 0.0)) throw std::invalid_argument("clmc_variance_bound: l_max must be positive");
    const double md = static_cast<double>(m);
    const double min_b2a = std::min(p.beta, 2.0 * p.alpha);

    ClmcVarianceTerms t;
    if (std::isinf(l_max)) {
        if (!(p.r < min_b2a))
            throw DivergentBoundError("clmc_variance_bound: needs r < min(beta, 2 alpha) at l_max = inf");
        t.convergence = 4.0 * p.c2 / ((p.beta - p.r) * p.beta) / md;
        t.bias_convergence = p.c1 * p.c1 * p.r / ((2.0 * p.alpha - p.r) * p.alpha * p.alpha) / md;
        return t;
    }

    const double r = p.r, al = p.alpha, be = p.beta;
    for (double bad : {be, be / 2.0, 2.0 * al, al}) {
        if (std::abs(r - bad) < kRateBranchTol)
            throw std::invalid_argument("clmc_variance_bound: finite-l_max form is degenerate at this r");
    }
    const double a = r - be / 2.0;
    t.convergence = p.c2 / md *
                    (((2.0 * r - be) / (r - be) * std::exp((r - be) * l_max) +
                      (4.0 * r - 2.0 * be) / be * std::exp(-be / 2.0 * l_max)) / (a * a) +
                     4.0 / ((be - r) * be));
    const double ra = r - al;
    t.bias_convergence =
        p.c1 * p.c1 / md *
        (((2.0 * r - 2.0 * al) / (r - 2.0 * al) * std::exp((r - 2.0 * al) * l_max) -
          ra * ra / (al * al) * std::exp(-2.0 * al * l_max) +
          (2.0 * r * r - 2.0 * r * al) / (al * al) * std::exp(-al * l_max)) /
             (ra * ra) +
         r / ((2.0 * al - r) * al * al));
    return t;
}

double clmc_bias_bound(const RateParams& p, double l_max) {
    p.validate();
    if (!(l_max >= 0.0)) throw std::invalid_argument("clmc_bias_bound: l_max must be >= 0");
    return p.c1 / p.alpha * std::exp(-p.alpha * l_max);
}

BoundReport mse_bound(Method method, const RateParams& p, std::size_t m,
                      std::optional<double> l_eff_override) {
    BoundReport rep;
    rep.method = method;
    rep.m = m;
    if (method == Method::qclmc) {
        rep.l_eff = l_eff_override ? *l_eff_override : effective_max_level(p, m);
        const BiasTerms b = qclmc_bias_bound(p, m, rep.l_eff);
        const QclmcVarianceTerms v = qclmc_variance_bound(p, m, rep.l_eff);
        rep.bias_standard = b.standard;
        rep.bias_discrepancy = b.discrepancy;
        rep.var_discrepancy = v.discrepancy;
        rep.var_convergence = v.convergence;
    } else {
        rep.l_eff = l_eff_override ? *l_eff_override : kInfinity;
        const ClmcVarianceTerms v = clmc_variance_bound(p, m, rep.l_eff);
        rep.var_convergence = v.convergence;
        rep.var_bias_convergence = v.bias_convergence;
        const double bias = clmc_bias_bound(p, rep.l_eff);
        rep.bias_standard = bias;
    }
    const double bias_total = rep.bias_standard + rep.bias_discrepancy;
    rep.mse = rep.var_convergence + rep.var_bias_convergence + rep.var_discrepancy +
              bias_total * bias_total;
    return rep;
}

EpsilonSchedule epsilon_schedule(const RateParams& p, double eps) {
    p.validate();
    if (!(eps > 0.0 && eps < std::exp(-1.0)))
        throw std::invalid_argument("epsilon_schedule: eps must lie in (0, 1/e)");
    const double min_b2a = std::min(p.beta, 2.0 * p.alpha);
    EpsilonSchedule s;
    s.l_max = std::log(p.c1 * std::sqrt(2.0) / (p.alpha * eps)) / p.alpha;
    s.m_eps_exponent = -2.0 - std::max(0.0, (p.r - min_b2a) / p.alpha);
    s.m_log_power = std::abs(p.r - p.beta) < kRateBranchTol ? 1 : 0;
    s.cost_eps_exponent = -2.0 - std::max(0.0, (p.gamma - min_b2a) / p.alpha);
    s.cost_log_power = s.m_log_power + (std::abs(p.r - p.gamma) < kRateBranchTol ? 1 : 0);
    s.optimal_regime = p.gamma < min_b2a;
    return s;
}

}  // namespace qclmc
