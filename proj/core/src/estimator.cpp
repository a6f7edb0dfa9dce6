#include "qclmc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qclmc/lowdisc.hpp"
#include "qclmc/rng.hpp"

namespace qclmc {

void EstimatorConfig::validate() const {
    if (m == 0) throw std::invalid_argument("EstimatorConfig: m must be >= 1");
    if (!(rate > 0.0)) throw std::invalid_argument("EstimatorConfig: rate must be positive");
    if (!(l_max > 0.0)) throw std::invalid_argument("EstimatorConfig: l_max must be positive");
    if (level_source == LevelSource::explicit_list && explicit_levels.size() != m)
        throw std::invalid_argument("EstimatorConfig: explicit level list must have m entries");
}

double per_sample_contribution(const LevelPath& path, double l_r, double rate, double l_max) {
    const double cutoff = std::min(l_r, l_max);
    double sum = 0.0;
    for (std::size_t j = 1; j < path.levels.size(); ++j) {
        const double lj = path.levels[j];
        const double lprev = path.levels[j - 1];
        const double dl = lj - lprev;
        if (!(dl > 0.0)) throw std::invalid_argument("per_sample_contribution: zero-length level step");
        const double lt = std::min(lj, cutoff);
        const double w = (std::exp(rate * lt) - std::exp(rate * lprev)) / (rate * dl);
        sum += w * (path.values[j] - path.values[j - 1]);
        if (lj >= cutoff) break;
    }
    return sum;
}

namespace {

// J and the truncated endpoint actually used by the weights, kept for audit.
struct WeightTail {
    std::size_t j_stop = 0;
    double l_tilde = 0.0;
};

WeightTail weight_tail(const LevelPath& path, double cutoff) {
    WeightTail t;
    for (std::size_t j = 1; j < path.levels.size(); ++j) {
        t.j_stop = j;
        t.l_tilde = std::min(path.levels[j], cutoff);
        if (path.levels[j] >= cutoff) break;
    }
    return t;
}

std::vector<double> draw_cutoffs(const EstimatorConfig& cfg) {
    switch (cfg.level_source) {
        case LevelSource::explicit_list:
            return cfg.explicit_levels;
        case LevelSource::quasi: {
            const auto seq = generate_sequence(SequenceKind::sobol_owen, cfg.m,
                                               rng::mix(cfg.seed, rng::tag_level_sequence));
            return exp_inverse_transform(seq, cfg.rate).levels;
        }
        case LevelSource::pseudo: {
            const auto seq = generate_sequence(SequenceKind::pseudo, cfg.m,
                                               rng::mix(cfg.seed, rng::tag_level_sequence));
            return exp_inverse_transform(seq, cfg.rate).levels;
        }
    }
    throw std::invalid_argument("unknown level source");
}

}  // namespace

EstimateResult run_estimator(const LevelProcess& model, const EstimatorConfig& cfg) {
    cfg.validate();
    const std::vector<double> cutoffs = draw_cutoffs(cfg);

    EstimateResult res;
    res.cutoff_levels = cutoffs;
    res.contributions.resize(cfg.m);
    res.j_stops.resize(cfg.m);
    res.l_tilde_last.resize(cfg.m);

    for (std::size_t k = 0; k < cfg.m; ++k) {
        const double l_r = cutoffs[k];
        const double stop = std::min(l_r, cfg.l_max);
        // Path randomness is keyed by (seed, k) only: swapping the level
        // source changes L^(k) but not the sample's path.
        const std::uint64_t path_seed = rng::mix(cfg.seed, rng::tag_path, k);
        LevelPath path;
        try {
            path = model.sample_path(path_seed, stop);
        } catch (const CappedPathError& e) {
            res.capped_samples.push_back(k);
            path = e.path;
        }
        res.contributions[k] = per_sample_contribution(path, l_r, cfg.rate, cfg.l_max);
        const WeightTail tail = weight_tail(path, std::min(l_r, cfg.l_max));
        res.j_stops[k] = tail.j_stop;
        res.l_tilde_last[k] = tail.l_tilde;
        res.total_cost += path.total_cost();
        res.realized_max_level = std::max(res.realized_max_level, l_r);
    }

    double sum = 0.0;  // ascending index order for bit-reproducibility
    for (double c : res.contributions) sum += c;
    res.estimate = sum / static_cast<double>(cfg.m);
    return res;
}

EstimateResult qclmc_estimate(const LevelProcess& model, const EstimatorConfig& cfg) {
    if (cfg.level_source == LevelSource::pseudo)
        throw std::invalid_argument("qclmc_estimate: level source must be quasi (or explicit)");
    return run_estimator(model, cfg);
}

EstimateResult clmc_estimate(const LevelProcess& model, const EstimatorConfig& cfg) {
    if (cfg.level_source == LevelSource::quasi)
        throw std::invalid_argument("clmc_estimate: level source must be pseudo (or explicit)");
    return run_estimator(model, cfg);
}

MlmcReductionResult mlmc_reduction_check(const std::vector<LevelPath>& paths,
                                         const std::vector<double>& tail_probs) {
    if (paths.empty()) throw std::invalid_argument("mlmc_reduction_check: no paths");
    std::size_t depth = 0;
    for (const auto& p : paths) {
        for (std::size_t j = 0; j < p.levels.size(); ++j) {
            if (std::abs(p.levels[j] - static_cast<double>(j)) > 1e-12)
                throw std::invalid_argument("mlmc_reduction_check: levels must be the integers 0..J");
        }
        depth = std::max(depth, p.j_stop());
    }
    if (tail_probs.size() < depth)
        throw std::invalid_argument("mlmc_reduction_check: tail probabilities missing for deep levels");
    for (std::size_t j = 0; j < depth; ++j) {
        if (!(tail_probs[j] > 0.0 && tail_probs[j] <= 1.0))
            throw std::invalid_argument("mlmc_reduction_check: tail probabilities must lie in (0,1]");
    }

    const double md = static_cast<double>(paths.size());
    MlmcReductionResult res;

    // per-sample weighted sum, then average
    for (const auto& p : paths) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= p.j_stop(); ++j)
            acc += (p.values[j] - p.values[j - 1]) / tail_probs[j - 1];
        res.clmc_value += acc;
    }
    res.clmc_value /= md;

    // telescoped form: level-major sums with M_j = M * P(L >= j)
    for (std::size_t j = 1; j <= depth; ++j) {
        double level_sum = 0.0;
        for (const auto& p : paths) {
            if (p.j_stop() >= j) level_sum += p.values[j] - p.values[j - 1];
        }
        res.mlmc_value += level_sum / (md * tail_probs[j - 1]);
    }
    return res;
}

namespace {

double path_value_at(const LevelPath& path, double level) {
    if (level <= path.levels.front()) return path.values.front();
    for (std::size_t j = 1; j < path.levels.size(); ++j) {
        if (level <= path.levels[j]) {
            const double t = (level - path.levels[j - 1]) / (path.levels[j] - path.levels[j - 1]);
            return path.values[j - 1] + t * (path.values[j] - path.values[j - 1]);
        }
    }
    return path.values.back();
}

struct LevelStats {
    std::size_t n = 0;
    double sum = 0.0, sum2 = 0.0, cost = 0.0;

    void add(double y, double c) { ++n; sum += y; sum2 += y * y; cost += c; }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        const double m = mean();
        return std::max(0.0, (sum2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    }
    double mean_cost() const { return n ? cost / static_cast<double>(n) : 1.0; }
};

}  // namespace

double mlmc_reference(const LevelProcess& model, double tolerance, std::uint64_t seed,
                      const MlmcReferenceOptions& opts) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("mlmc_reference: tolerance must be positive");
    const double step = opts.level_step;
    std::vector<LevelStats> stats;
    std::size_t total_samples = 0;

    auto draw = [&](std::size_t level_j) {
        const std::uint64_t s = rng::mix(seed, level_j, stats[level_j - 1].n + 1);
        const double stop = (static_cast<double>(level_j) - 0.5) * step;
        const LevelPath path = model.sample_path(rng::mix(s, rng::tag_path), stop);
        const double y = path_value_at(path, static_cast<double>(level_j) * step) -
                         path_value_at(path, (static_cast<double>(level_j) - 1.0) * step);
        stats[level_j - 1].add(y, path.total_cost());
        ++total_samples;
    };

    auto current_estimate = [&]() {
        double e = 0.0;
        for (const auto& s : stats) e += s.mean();
        return e;
    };

    std::size_t levels = 2;
    stats.resize(levels);
    while (true) {
        bool drew_any = false;
        for (std::size_t j = 1; j <= levels; ++j) {
            while (stats[j - 1].n < opts.warmup_samples) {
                if (total_samples >= opts.max_total_samples)
                    throw BudgetError("mlmc_reference: sample budget exceeded", current_estimate());
                draw(j);
                drew_any = true;
            }
        }

        // balanced sample sizes N_j ~ sqrt(V_j / C_j)
        double sum_vc = 0.0;
        for (const auto& s : stats) sum_vc += std::sqrt(s.variance() * s.mean_cost());
        for (std::size_t j = 1; j <= levels; ++j) {
            const auto& s = stats[j - 1];
            const std::size_t target = static_cast<std::size_t>(std::ceil(
                2.0 / (tolerance * tolerance) * std::sqrt(s.variance() / s.mean_cost()) * sum_vc));
            while (stats[j - 1].n < std::max<std::size_t>(target, opts.warmup_samples)) {
                if (total_samples >= opts.max_total_samples)
                    throw BudgetError("mlmc_reference: sample budget exceeded", current_estimate());
                draw(j);
                drew_any = true;
            }
        }

        // remaining bias from the geometric decay of |E[Y_j]|
        double log_sum_x = 0, log_sum_y = 0, log_sxx = 0, log_sxy = 0;
        std::size_t fit_n = 0;
        for (std::size_t j = 1; j <= levels; ++j) {
            const double m = std::abs(stats[j - 1].mean());
            if (m > 0.0) {
                const double x = static_cast<double>(j);
                log_sum_x += x; log_sum_y += std::log(m);
                ++fit_n;
            }
        }
        double tail = std::abs(stats[levels - 1].mean());
        if (tail == 0.0) {
            // flat-zero top level: nothing left to resolve
            return current_estimate();
        }
        if (fit_n >= 2) {
            const double mean_x = log_sum_x / fit_n;
            double mean_y = log_sum_y / fit_n;
            for (std::size_t j = 1; j <= levels; ++j) {
                const double m = std::abs(stats[j - 1].mean());
                if (m > 0.0) {
                    log_sxx += (j - mean_x) * (j - mean_x);
                    log_sxy += (j - mean_x) * (std::log(m) - mean_y);
                }
            }
            const double slope = log_sxy / log_sxx;  // ln|E Y_j| ~ intercept + slope j
            const double rho = std::exp(slope);
            tail = (rho < 0.95) ? tail * rho / (1.0 - rho) : tail;
        }

        double est_var = 0.0;
        for (const auto& s : stats) est_var += s.variance() / static_cast<double>(s.n);

        const bool bias_ok = tail <= tolerance / std::sqrt(2.0);
        const bool var_ok = est_var <= tolerance * tolerance / 2.0;
        if (bias_ok && var_ok) return current_estimate();
        if (!bias_ok) {
            if (levels >= opts.max_levels)
                throw BudgetError("mlmc_reference: level budget exceeded", current_estimate());
            ++levels;
            stats.resize(levels);
        } else if (!var_ok && !drew_any) {
            // variance targets met on stale estimates; push the worst level
            std::size_t worst = 1;
            double worst_ratio = 0.0;
            for (std::size_t j = 1; j <= levels; ++j) {
                const double ratio = stats[j - 1].variance() / static_cast<double>(stats[j - 1].n);
                if (ratio > worst_ratio) { worst_ratio = ratio; worst = j; }
            }
            const std::size_t extra = stats[worst - 1].n / 4 + 1;
            for (std::size_t t = 0; t < extra; ++t) {
                if (total_samples >= opts.max_total_samples)
                    throw BudgetError("mlmc_reference: sample budget exceeded", current_estimate());
                draw(worst);
            }
        }
    }
}

}  // namespace qclmc
