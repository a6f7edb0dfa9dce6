#include "qclmc/pde_model.hpp"

#include <cmath>

#include "qclmc/rng.hpp"

namespace qclmc {

void PdeModelConfig::validate() const {
    matern.validate();
    if (kl_terms == 0) throw std::invalid_argument("PdeModelConfig: kl_terms must be positive");
    if (quad_points < kl_terms)
        throw std::invalid_argument("PdeModelConfig: quad_points must be >= kl_terms");
    if (initial_elements == 0)
        throw std::invalid_argument("PdeModelConfig: initial_elements must be positive");
    if (!(dorfler_theta > 0.0 && dorfler_theta <= 1.0))
        throw std::invalid_argument("PdeModelConfig: dorfler_theta must lie in (0,1]");
}

PdeProcess::PdeProcess(const PdeModelConfig& cfg) : config_(cfg) {
    cfg.validate();
    basis_ = std::make_shared<const KLBasis>(cfg.matern, cfg.kl_terms, cfg.quad_points);
}

KLBasis::Field PdeProcess::sample_field(std::uint64_t path_seed) const {
    rng::NormalStream xi_stream(rng::mix(path_seed, rng::tag_xi));
    std::vector<double> xi(config_.kl_terms);
    for (double& x : xi) x = xi_stream.next();
    return basis_->field(xi);
}

LevelPath PdeProcess::sample_path(std::uint64_t path_seed, double stop_level) const {
    return sample_pde_path(*this, path_seed, stop_level);
}

namespace {

struct Step {
    FemSolution solution;
    IndicatorReport indicators;
};

Step solve_and_estimate(const Coefficient& a, const SourceFn& f, const Mesh1D& mesh) {
    Step s;
    s.solution = solve_fem_1d(a, f, mesh);
    s.indicators = a_posteriori_indicators(s.solution, mesh, a, f);
    return s;
}

std::size_t argmax_indicator(const std::vector<double>& phi) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < phi.size(); ++k)
        if (phi[k] > phi[best]) best = k;
    return best;
}

}  // namespace

LevelPath sample_pde_path(const PdeProcess& model, std::uint64_t path_seed, double stop_level) {
    if (!(stop_level >= 0.0)) throw std::invalid_argument("sample_pde_path: stop_level < 0");
    const PdeModelConfig& cfg = model.config();
    const KLBasis::Field field = model.sample_field(path_seed);
    const Coefficient a{[&field](double x) { return field.value(x); },
                        [&field](double x) { return field.derivative(x); }};
    const double fval = cfg.source;
    const SourceFn f = [fval](double) { return fval; };

    Mesh1D mesh = uniform_mesh(cfg.initial_elements);
    Step step = solve_and_estimate(a, f, mesh);
    const double e0 = step.indicators.total;
    if (!(e0 > 0.0)) throw ModelError("sample_pde_path: baseline error estimate vanished");

    LevelPath path;
    path.levels = {0.0};
    path.values = {step.solution.qoi};
    path.errors = {e0};
    path.step_costs = {static_cast<double>(step.solution.dof)};

    while (path.levels.back() <= stop_level) {
        if (path.j_stop() >= cfg.refine_cap)
            throw CappedPathError("sample_pde_path: refinement cap reached before level " +
                                      std::to_string(stop_level),
                                  path);
        const double e_prev = path.errors.back();
        Mesh1D candidate = dorfler_refine(mesh, step.indicators.per_element, cfg.dorfler_theta);
        Step next = solve_and_estimate(a, f, candidate);
        double step_cost = static_cast<double>(next.solution.dof);
        if (!(next.indicators.total < e_prev)) {
            // level tie: reject, force-bisect the worst element, try once more
            candidate = bisect_element(candidate, argmax_indicator(next.indicators.per_element));
            next = solve_and_estimate(a, f, candidate);
            step_cost += static_cast<double>(next.solution.dof);
            if (!(next.indicators.total < e_prev))
                throw ModelError("sample_pde_path: error estimate refused to decrease");
        }
        mesh = std::move(candidate);
        step = std::move(next);
        path.errors.push_back(step.indicators.total);
        path.levels.push_back(-std::log(step.indicators.total / e0));
        path.values.push_back(step.solution.qoi);
        path.step_costs.push_back(step_cost);
    }
    return path;
}

}  // namespace qclmc
