#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "qclmc/level_path.hpp"

// Practical continuous-level estimators. Each sample k draws a level cutoff
// L^(k), samples one path of the level process up to min(L^(k), l_max), and
// contributes
//
//   sum_{j=1..J}  (exp(r lt_j) - exp(r l_{j-1})) / (r (l_j - l_{j-1}))  (Q_j - Q_{j-1})
//
// with lt_j = min(l_j, L^(k), l_max) and J the first index with
// l_J >= min(L^(k), l_max). CLMC feeds pseudo-random uniforms through the
// exponential inverse transform; QCLMC feeds a scrambled Sobol sequence
// through the same transform.

namespace qclmc {

enum class LevelSource { pseudo, quasi, explicit_list };

struct EstimatorConfig {
    std::size_t m = 16;                                    // total samples M
    double rate = 1.0;                                     // exponential rate r
    double l_max = std::numeric_limits<double>::infinity();
    LevelSource level_source = LevelSource::quasi;
    std::uint64_t seed = 1;
    std::vector<double> explicit_levels;  // used only with explicit_list

    void validate() const;
};

struct EstimateResult {
    double estimate = 0.0;
    std::vector<double> contributions;   // per sample, index order
    double total_cost = 0.0;
    double realized_max_level = 0.0;     // max_k L^(k)
    std::vector<double> cutoff_levels;   // L^(k) as drawn
    std::vector<std::size_t> j_stops;    // per-sample J^(k) used by the weights
    std::vector<double> l_tilde_last;    // per-sample lt_J
    std::vector<std::size_t> capped_samples;  // indices whose path hit the cap
};

/// Weight-sum contribution of a single path; the path must cover
/// min(l_r, l_max) unless the caller accepts a capped path.
double per_sample_contribution(const LevelPath& path, double l_r, double rate, double l_max);

/// Run the estimator with the level source from the config.
EstimateResult run_estimator(const LevelProcess& model, const EstimatorConfig& cfg);

/// QCLMC: scrambled-Sobol level cutoffs (accepts quasi or explicit_list).
EstimateResult qclmc_estimate(const LevelProcess& model, const EstimatorConfig& cfg);

/// CLMC: pseudo-random level cutoffs (accepts pseudo or explicit_list).
EstimateResult clmc_estimate(const LevelProcess& model, const EstimatorConfig& cfg);

// ---------------------------------------------------------------------------
// Integer-level reduction to multilevel Monte Carlo.

struct MlmcReductionResult {
    double clmc_value = 0.0;  // uniform-level CLMC with weights 1/P(L >= j)
    double mlmc_value = 0.0;  // telescoped form with M_j = M * P(L >= j)
};

/// Evaluate both forms on paths with integer levels l_j = j. tail_probs[j-1]
/// holds P(L >= j); each path's depth must be consistent with it.
MlmcReductionResult mlmc_reduction_check(const std::vector<LevelPath>& paths,
                                         const std::vector<double>& tail_probs);

// ---------------------------------------------------------------------------
// MLMC reference value for MSE studies.

class BudgetError : public std::runtime_error {
public:
    BudgetError(std::string what, double partial)
        : std::runtime_error(std::move(what)), partial_result(partial) {}

    double partial_result;
};

struct MlmcReferenceOptions {
    double level_step = 1.0;          // uniform level spacing of the schedule
    std::size_t warmup_samples = 64;  // pilot samples per level
    std::size_t max_total_samples = 50'000'000;
    std::size_t max_levels = 40;
};

/// Estimate E[Q(inf) - Q(0)] by a non-adaptive MLMC run: levels j*level_step,
/// sample sizes balanced by sqrt(V_j / C_j), levels added until the estimated
/// remaining bias is below tolerance/sqrt(2) and the variance below
/// tolerance^2 / 2.
double mlmc_reference(const LevelProcess& model, double tolerance, std::uint64_t seed,
                      const MlmcReferenceOptions& opts = {});

}  // namespace qclmc
