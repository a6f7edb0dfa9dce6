#pragma once

#include <cstdint>

#include "qclmc/level_path.hpp"

// Synthetic level process with exactly known rate parameters. On the grid
// l_j = j*delta the increments are
//
//   dQ_j = delta * (c1 exp(-alpha l_j) + sqrt(c2) exp(-beta l_j / 2) Z_j)
//
// with independent standard normal Z_j, so E[dQ_j/delta] = c1 exp(-alpha l_j)
// and V[dQ_j/delta] = c2 exp(-beta l_j) hold with equality at the right
// endpoint of each step. The accumulated cost is C[l] = (c3/gamma) exp(gamma l).

namespace qclmc {

struct SyntheticParams {
    double c1 = 5.21e-2;
    double alpha = 1.85;
    double c2 = 4.13e-4;
    double beta = 3.69;
    double c3 = 1.0;
    double gamma = 1.83;
    double delta = 1.25;  // level step
    double q0 = 0.0;      // baseline Q(0)

    void validate() const;
};

LevelPath sample_synthetic_path(const SyntheticParams& p, std::uint64_t path_seed,
                                double stop_level);

/// Exact E[Q(inf) - Q(0)] = delta c1 e^{-alpha delta} / (1 - e^{-alpha delta}).
double synthetic_analytic_limit(const SyntheticParams& p);

class SyntheticProcess final : public LevelProcess {
public:
    explicit SyntheticProcess(const SyntheticParams& p) : params_(p) { p.validate(); }

    LevelPath sample_path(std::uint64_t path_seed, double stop_level) const override {
        return sample_synthetic_path(params_, path_seed, stop_level);
    }

    double analytic_limit() const override { return synthetic_analytic_limit(params_); }

    const SyntheticParams& params() const { return params_; }

private:
    SyntheticParams params_;
};

}  // namespace qclmc
