#include "qclmc/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qclmc {

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

RateParams FitReport::to_rate_params(double r) const {
    if (!(has_mean && has_variance && has_cost))
        throw std::invalid_argument("FitReport: not all regressions were run");
    RateParams p;
    p.c1 = c1; p.alpha = alpha;
    p.c2 = c2; p.beta = beta;
    p.c3 = c3; p.gamma = gamma;
    p.r = r;
    p.validate();
    return p;
}

FitReport estimate_rates(const std::vector<LevelPath>& paths, const FitOptions& opts) {
    if (paths.empty()) throw std::invalid_argument("estimate_rates: no paths");
    std::size_t j_common = paths.front().j_stop();
    for (const auto& p : paths) j_common = std::min(j_common, p.j_stop());

    FitWindow w;
    if (opts.window) {
        w = *opts.window;
    } else {
        // drop the pre-asymptotic first refinement and the final one
        w.j_min = 2;
        w.j_max = j_common >= 3 ? j_common - 1 : j_common;
    }
    if (w.j_min < 1 || w.j_max < w.j_min)
        throw std::invalid_argument("estimate_rates: bad fit window");
    if (w.j_max > j_common)
        throw std::invalid_argument("estimate_rates: not every path reaches the window end");
    if (w.j_max - w.j_min + 1 < 2)
        throw std::invalid_argument("estimate_rates: need at least 2 refinement indices");

    const std::size_t n = w.j_max - w.j_min + 1;
    const double m = static_cast<double>(paths.size());
    std::vector<double> grid(n), mean_dq(n), var_dq(n), mean_dc(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = w.j_min + i;
        double sl = 0, s1 = 0, s2 = 0, sc = 0;
        for (const auto& p : paths) {
            const double dl = p.levels[j] - p.levels[j - 1];
            const double d = (p.values[j] - p.values[j - 1]) / dl;
            sl += p.levels[j];
            s1 += d;
            s2 += d * d;
            sc += p.step_costs[j] / dl;
        }
        grid[i] = sl / m;
        mean_dq[i] = s1 / m;
        var_dq[i] = paths.size() > 1 ? std::max(0.0, (s2 - m * mean_dq[i] * mean_dq[i]) / (m - 1.0))
                                     : 0.0;
        mean_dc[i] = sc / m;
    }

    FitReport rep;
    rep.window = w;
    rep.level_grid = grid;

    if (opts.fit_mean) {
        const double sign0 = mean_dq[0] > 0 ? 1.0 : -1.0;
        std::vector<double> logs(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (mean_dq[i] == 0.0 || mean_dq[i] * sign0 < 0.0)
                throw DegenerateDataError("estimate_rates: mean of dQ/dl vanishes or changes sign at j=" +
                                          std::to_string(w.j_min + i));
            logs[i] = std::log(std::abs(mean_dq[i]));
        }
        const LineFit f = ols(grid, logs);
        rep.c1 = std::exp(f.intercept);
        rep.alpha = -f.slope;
        rep.mean_rms = f.rms;
        rep.has_mean = true;
    }
    if (opts.fit_variance) {
        std::vector<double> logs(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(var_dq[i] > 0.0))
                throw DegenerateDataError("estimate_rates: variance of dQ/dl vanishes at j=" +
                                          std::to_string(w.j_min + i));
            logs[i] = std::log(var_dq[i]);
        }
        const LineFit f = ols(grid, logs);
        rep.c2 = std::exp(f.intercept);
        rep.beta = -f.slope;
        rep.variance_rms = f.rms;
        rep.has_variance = true;
    }
    if (opts.fit_cost) {
        std::vector<double> logs(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mean_dc[i] > 0.0))
                throw DegenerateDataError("estimate_rates: mean of dC/dl vanishes at j=" +
                                          std::to_string(w.j_min + i));
            logs[i] = std::log(mean_dc[i]);
        }
        const LineFit f = ols(grid, logs);
        rep.c3 = std::exp(f.intercept);
        rep.gamma = f.slope;
        rep.cost_rms = f.rms;
        rep.has_cost = true;
    }
    return rep;
}

RateRecommendation recommend_r(const RateParams& p) {
    p.validate();
    const double min_b2a = std::min(p.beta, 2.0 * p.alpha);
    return {(p.gamma + min_b2a) / 2.0, p.gamma < min_b2a};
}

}  // namespace qclmc
