#include "qclmc/study.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "qclmc/lowdisc.hpp"
#include "qclmc/rng.hpp"
#include "qclmc/svg.hpp"

namespace qclmc {

namespace {

constexpr std::uint64_t kMethodTag[2] = {0x434c4d4321212121ULL, 0x51434c4d43212121ULL};

std::uint64_t method_tag(Method m) { return kMethodTag[m == Method::qclmc ? 1 : 0]; }

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace

std::string to_string(Method m) { return m == Method::qclmc ? "qclmc" : "clmc"; }

Method method_from_string(const std::string& name) {
    if (name == "qclmc") return Method::qclmc;
    if (name == "clmc") return Method::clmc;
    throw std::invalid_argument("unknown method: " + name);
}

std::vector<std::size_t> default_m_list(unsigned i_max) {
    std::vector<std::size_t> out;
    for (unsigned i = 0; i <= i_max; ++i) out.push_back(std::size_t{16} << i);
    return out;
}

void StudyConfig::validate() const {
    if (methods.empty()) throw std::invalid_argument("StudyConfig: no methods selected");
    if (k_runs < 2) throw std::invalid_argument("StudyConfig: k_runs must be >= 2");
    const auto& ms = m_list.empty() ? default_m_list() : m_list;
    for (std::size_t i = 1; i < ms.size(); ++i)
        if (!(ms[i] > ms[i - 1]))
            throw std::invalid_argument("StudyConfig: m_list must be strictly increasing");
    if (!(rate > 0.0)) throw std::invalid_argument("StudyConfig: rate must be positive");
}

std::shared_ptr<const LevelProcess> StudyConfig::make_model() const {
    if (std::holds_alternative<SyntheticParams>(model))
        return std::make_shared<SyntheticProcess>(std::get<SyntheticParams>(model));
    return std::make_shared<PdeProcess>(std::get<PdeModelConfig>(model));
}

MseStudyResult run_mse_study(const StudyConfig& cfg) {
    cfg.validate();
    const auto model = cfg.make_model();
    const auto m_list = cfg.m_list.empty() ? default_m_list() : cfg.m_list;

    MseStudyResult result;

    // Reference: analytic limit when the model provides one, otherwise an
    // MLMC run at the configured (or derived) tolerance.
    const double analytic = model->analytic_limit();
    if (std::isfinite(analytic) && cfg.reference_tolerance == 0.0) {
        result.reference = analytic;
    } else {
        double tol = cfg.reference_tolerance;
        if (tol == 0.0) tol = 1e-4;
        MlmcReferenceOptions opts;
        if (std::holds_alternative<SyntheticParams>(cfg.model))
            opts.level_step = std::get<SyntheticParams>(cfg.model).delta;
        result.reference = mlmc_reference(*model, tol, rng::mix(cfg.master_seed, 0x5245464552454652ULL),
                                          opts);
    }

    std::size_t total_paths = 0, total_capped = 0;
    for (Method method : cfg.methods) {
        std::vector<double> log_m, log_mse;
        for (std::size_t m : m_list) {
            MseStudyCell cell;
            cell.method = method;
            cell.m = m;
            double sum_sq = 0.0, sum_sq2 = 0.0, sum_cost = 0.0, sum_lbar = 0.0;
            for (unsigned rep = 0; rep < cfg.k_runs; ++rep) {
                EstimatorConfig ec;
                ec.m = m;
                ec.rate = cfg.rate;
                ec.level_source =
                    method == Method::qclmc ? LevelSource::quasi : LevelSource::pseudo;
                ec.seed = rng::mix(rng::mix(cfg.master_seed, method_tag(method)),
                                   rng::mix(m, rep));
                const EstimateResult er = run_estimator(*model, ec);
                const double dev = er.estimate - result.reference;
                sum_sq += dev * dev;
                sum_sq2 += dev * dev * dev * dev;
                sum_cost += er.total_cost;
                sum_lbar += er.realized_max_level;
                cell.capped_paths += er.capped_samples.size();
                total_paths += m;
            }
            const double k = static_cast<double>(cfg.k_runs);
            cell.mse = sum_sq / k;
            const double var_sq = std::max(0.0, (sum_sq2 - k * cell.mse * cell.mse) / (k - 1.0));
            cell.ci_half_width = 1.959963984540054 * std::sqrt(var_sq / k);
            cell.mean_cost = sum_cost / k;
            cell.mean_max_level = sum_lbar / k;
            total_capped += cell.capped_paths;
            result.cells.push_back(cell);
            log_m.push_back(std::log(static_cast<double>(m)));
            log_mse.push_back(std::log(cell.mse));
        }
        if (log_m.size() >= 2) result.fitted_slopes[method] = ols_slope(log_m, log_mse);
    }

    // CLMC/QCLMC quotient per M when both methods ran
    const bool both = std::count(cfg.methods.begin(), cfg.methods.end(), Method::clmc) &&
                      std::count(cfg.methods.begin(), cfg.methods.end(), Method::qclmc);
    if (both) {
        for (std::size_t m : m_list) {
            double num = 0, den = 0;
            for (const auto& c : result.cells) {
                if (c.m != m) continue;
                if (c.method == Method::clmc) num = c.mse;
                if (c.method == Method::qclmc) den = c.mse;
            }
            result.quotients.push_back(num / den);
        }
        double s = 0;
        for (double q : result.quotients) s += q;
        result.mean_quotient = s / static_cast<double>(result.quotients.size());
    }
    result.capped_warning = total_capped * 100 > total_paths;
    return result;
}

std::vector<BoundStudyRow> run_bound_study(const RateParams& p,
                                           const std::vector<std::size_t>& m_list,
                                           unsigned runs, std::uint64_t seed) {
    p.validate();
    if (m_list.empty()) throw std::invalid_argument("run_bound_study: empty m list");
    if (runs == 0) throw std::invalid_argument("run_bound_study: runs must be >= 1");

    std::vector<BoundStudyRow> rows;
    for (std::size_t m : m_list) {
        BoundStudyRow clmc_row{Method::clmc, m, mse_bound(Method::clmc, p, m)};
        rows.push_back(clmc_row);

        // average the QCLMC report over freshly scrambled sequences, each
        // evaluated at its own realized maximal level
        BoundReport mean;
        mean.method = Method::qclmc;
        mean.m = m;
        for (unsigned t = 0; t < runs; ++t) {
            const auto seq = generate_sequence(SequenceKind::sobol_owen, m, rng::mix(seed, t));
            const double lbar = max_level(exp_inverse_transform(seq, p.r));
            const BoundReport rep = mse_bound(Method::qclmc, p, m, lbar);
            mean.l_eff += rep.l_eff;
            mean.bias_standard += rep.bias_standard;
            mean.bias_discrepancy += rep.bias_discrepancy;
            mean.var_convergence += rep.var_convergence;
            mean.var_discrepancy += rep.var_discrepancy;
            mean.mse += rep.mse;
        }
        const double n = static_cast<double>(runs);
        mean.l_eff /= n;
        mean.bias_standard /= n;
        mean.bias_discrepancy /= n;
        mean.var_convergence /= n;
        mean.var_discrepancy /= n;
        mean.mse /= n;
        rows.push_back({Method::qclmc, m, mean});
    }
    return rows;
}

csv::Table mse_study_table(const MseStudyResult& result) {
    csv::Table t;
    t.header = {"method", "M", "mse", "ci_half_width", "mean_cost", "mean_max_level",
                "capped_paths", "reference"};
    for (const auto& c : result.cells) {
        t.rows.push_back({to_string(c.method), std::to_string(c.m), csv::format_double(c.mse),
                          csv::format_double(c.ci_half_width), csv::format_double(c.mean_cost),
                          csv::format_double(c.mean_max_level), std::to_string(c.capped_paths),
                          csv::format_double(result.reference)});
    }
    return t;
}

csv::Table bound_study_table(const std::vector<BoundStudyRow>& rows) {
    csv::Table t;
    t.header = {"method", "M", "l_eff", "bias_standard", "bias_discrepancy", "var_convergence",
                "var_bias_convergence", "var_discrepancy", "mse_bound"};
    for (const auto& row : rows) {
        const BoundReport& r = row.report;
        t.rows.push_back({to_string(row.method), std::to_string(row.m), csv::format_double(r.l_eff),
                          csv::format_double(r.bias_standard), csv::format_double(r.bias_discrepancy),
                          csv::format_double(r.var_convergence),
                          csv::format_double(r.var_bias_convergence),
                          csv::format_double(r.var_discrepancy), csv::format_double(r.mse)});
    }
    return t;
}

void export_plot_data(const csv::Table& table, const std::string& out_dir,
                      const std::string& base_name, const std::string& x_column,
                      const std::vector<std::string>& y_columns,
                      const std::string& group_column) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    csv::save(table, (fs::path(out_dir) / (base_name + ".csv")).string());

    auto column_index = [&table](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < table.header.size(); ++i)
            if (table.header[i] == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    const auto xi = column_index(x_column);
    if (xi < 0) throw std::invalid_argument("export_plot_data: unknown x column " + x_column);
    const auto gi = group_column.empty() ? -1 : column_index(group_column);

    for (const std::string& y_name : y_columns) {
        const auto yi = column_index(y_name);
        if (yi < 0) throw std::invalid_argument("export_plot_data: unknown y column " + y_name);
        std::vector<svg::Curve> curves;
        auto curve_for = [&curves](const std::string& label) -> svg::Curve& {
            for (auto& c : curves)
                if (c.label == label) return c;
            curves.push_back({label, {}, {}});
            return curves.back();
        };
        for (const auto& row : table.rows) {
            const std::string label = gi >= 0 ? row[gi] : y_name;
            svg::Curve& c = curve_for(label);
            c.x.push_back(std::strtod(row[xi].c_str(), nullptr));
            c.y.push_back(std::strtod(row[yi].c_str(), nullptr));
        }
        svg::ChartOptions opts;
        opts.title = base_name + ": " + y_name;
        opts.x_label = x_column;
        opts.y_label = y_name;
        svg::save(svg::line_chart_loglog(curves, opts),
                  (fs::path(out_dir) / (base_name + "_" + y_name + ".svg")).string());
    }
}

RateParams rate_params_from_config(const kv::Config& cfg) {
    RateParams p;
    p.c1 = cfg.get_double("c1");
    p.alpha = cfg.get_double("alpha");
    p.c2 = cfg.get_double("c2");
    p.beta = cfg.get_double("beta");
    p.c3 = cfg.get_double("c3", 1.0);
    p.gamma = cfg.get_double("gamma");
    p.r = cfg.get_double("r", (p.gamma + std::min(p.beta, 2.0 * p.alpha)) / 2.0);
    p.c_disc = cfg.get_double("c_disc", 1.0);
    p.c_tilde = cfg.get_double("c_tilde", 0.5);
    p.kappa = cfg.get_double("kappa", 0.0);
    p.validate();
    return p;
}

kv::Config rate_params_to_config(const RateParams& p) {
    kv::Config cfg;
    cfg.set("c1", csv::format_double(p.c1));
    cfg.set("alpha", csv::format_double(p.alpha));
    cfg.set("c2", csv::format_double(p.c2));
    cfg.set("beta", csv::format_double(p.beta));
    cfg.set("c3", csv::format_double(p.c3));
    cfg.set("gamma", csv::format_double(p.gamma));
    cfg.set("r", csv::format_double(p.r));
    cfg.set("c_disc", csv::format_double(p.c_disc));
    cfg.set("c_tilde", csv::format_double(p.c_tilde));
    cfg.set("kappa", csv::format_double(p.kappa));
    return cfg;
}

}  // namespace qclmc
