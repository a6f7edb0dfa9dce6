#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qclmc/bounds.hpp"
#include "qclmc/csv.hpp"
#include "qclmc/estimator.hpp"
#include "qclmc/kvconfig.hpp"
#include "qclmc/pde_model.hpp"
#include "qclmc/synthetic.hpp"

// Experiment orchestration: the MSE-versus-M convergence study, averaged
// bound curves, and deterministic CSV/SVG persistence.

namespace qclmc {

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct StudyConfig {
    std::variant<SyntheticParams, PdeModelConfig> model = SyntheticParams{};
    double rate = 2.76;
    std::vector<Method> methods{Method::clmc, Method::qclmc};
    std::vector<std::size_t> m_list;  // default 16 * 2^i, i = 0..9
    unsigned k_runs = 100;            // independent estimator replications
    double reference_tolerance = 0.0; // 0: analytic limit when known, else auto
    std::uint64_t master_seed = 1;
    std::string out_dir;

    void validate() const;
    std::shared_ptr<const LevelProcess> make_model() const;
};

std::vector<std::size_t> default_m_list(unsigned i_max = 9);

struct MseStudyCell {
    Method method;
    std::size_t m = 0;
    double mse = 0.0;
    double ci_half_width = 0.0;  // 95% normal approximation on the MSE
    double mean_cost = 0.0;
    double mean_max_level = 0.0;
    std::size_t capped_paths = 0;
};

struct MseStudyResult {
    std::vector<MseStudyCell> cells;
    double reference = 0.0;
    std::map<Method, double> fitted_slopes;   // log MSE vs log M
    std::vector<double> quotients;            // CLMC/QCLMC per M (when both ran)
    double mean_quotient = 0.0;
    bool capped_warning = false;  // more than 1% of paths hit the cap
};

/// K independent estimator replications per (method, M); the replication
/// master seed is hash(master, method, M, replication) so extending the study
/// never reshuffles earlier replications.
MseStudyResult run_mse_study(const StudyConfig& cfg);

struct BoundStudyRow {
    Method method;
    std::size_t m = 0;
    BoundReport report;  // averaged over runs for QCLMC
};

/// Deterministic CLMC bound curve (l_max = inf) and the QCLMC bound averaged
/// over `runs` scrambled sequences, each evaluated at its realized max level.
std::vector<BoundStudyRow> run_bound_study(const RateParams& p,
                                           const std::vector<std::size_t>& m_list,
                                           unsigned runs, std::uint64_t seed);

csv::Table mse_study_table(const MseStudyResult& result);
csv::Table bound_study_table(const std::vector<BoundStudyRow>& rows);

/// Write table.csv plus one log-log SVG per named curve set into out_dir.
/// Byte-deterministic given the inputs.
void export_plot_data(const csv::Table& table, const std::string& out_dir,
                      const std::string& base_name, const std::string& x_column,
                      const std::vector<std::string>& y_columns,
                      const std::string& group_column = {});

// RateParams <-> key-value config bridging for the CLI.
RateParams rate_params_from_config(const kv::Config& cfg);
kv::Config rate_params_to_config(const RateParams& p);

}  // namespace qclmc
