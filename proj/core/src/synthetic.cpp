#include "qclmc/synthetic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qclmc/rng.hpp"

namespace qclmc {

double LevelProcess::analytic_limit() const {
    return std::numeric_limits<double>::quiet_NaN();
}

void LevelPath::validate() const {
    const std::size_t n = levels.size();
    if (n == 0) throw std::invalid_argument("LevelPath: empty");
    if (values.size() != n || step_costs.size() != n)
        throw std::invalid_argument("LevelPath: list lengths disagree");
    if (!errors.empty() && errors.size() != n)
        throw std::invalid_argument("LevelPath: errors length disagrees");
    if (levels[0] != 0.0) throw std::invalid_argument("LevelPath: l_0 must be 0");
    for (std::size_t j = 1; j < n; ++j) {
        if (!(levels[j] > levels[j - 1]))
            throw std::invalid_argument("LevelPath: levels must be strictly increasing");
    }
    for (double c : step_costs)
        if (c < 0.0) throw std::invalid_argument("LevelPath: negative step cost");
    if (!errors.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!(errors[j] > 0.0)) throw std::invalid_argument("LevelPath: e_j must be positive");
        }
    }
}

void SyntheticParams::validate() const {
    if (!(c1 > 0 && alpha > 0 && c2 >= 0 && beta > 0 && c3 > 0 && gamma > 0))
        throw std::invalid_argument("SyntheticParams: rates must be positive");
    if (!(delta > 0)) throw std::invalid_argument("SyntheticParams: delta must be positive");
}

LevelPath sample_synthetic_path(const SyntheticParams& p, std::uint64_t path_seed,
                                double stop_level) {
    p.validate();
    if (!(stop_level >= 0.0)) throw std::invalid_argument("sample_synthetic_path: stop_level < 0");

    rng::NormalStream noise(rng::mix(path_seed, rng::tag_step_noise));
    const double sqrt_c2 = std::sqrt(p.c2);

    LevelPath path;
    path.levels = {0.0};
    path.values = {p.q0};
    path.step_costs = {p.c3 / p.gamma};  // C[0]

    double l = 0.0;
    std::size_t j = 0;
    while (l <= stop_level) {
        ++j;
        const double lj = static_cast<double>(j) * p.delta;
        const double z = noise.next();
        const double dq = p.delta * (p.c1 * std::exp(-p.alpha * lj) +
                                     sqrt_c2 * std::exp(-p.beta * lj / 2.0) * z);
        path.values.push_back(path.values.back() + dq);
        path.levels.push_back(lj);
        path.step_costs.push_back(p.c3 / p.gamma * (std::exp(p.gamma * lj) - std::exp(p.gamma * l)));
        l = lj;
    }
    return path;
}

double synthetic_analytic_limit(const SyntheticParams& p) {
    const double rho = std::exp(-p.alpha * p.delta);
    return p.delta * p.c1 * rho / (1.0 - rho);
}

}  // namespace qclmc
