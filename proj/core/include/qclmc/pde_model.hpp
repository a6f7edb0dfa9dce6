#pragma once

#include <cstdint>
#include <memory>

#include "qclmc/fem1d.hpp"
#include "qclmc/level_path.hpp"
#include "qclmc/nystrom.hpp"

// Random elliptic model on (0,1): -(a u')' = f with a log-Gauss Matern
// coefficient, adaptive FEM driven by the residual indicator, and levels
// defined per sample as l_j = -ln(e_j / e_0). Cost is counted in degrees of
// freedom per solve.

namespace qclmc {

struct PdeModelConfig {
    MaternParams matern;
    std::size_t kl_terms = 16;       // truncation R
    std::size_t quad_points = 64;    // Nystrom rule size (>= kl_terms)
    std::size_t initial_elements = 8;
    double dorfler_theta = 0.5;
    std::size_t refine_cap = 25;
    double source = 1.0;  // constant right hand side

    void validate() const;
};

class PdeProcess final : public LevelProcess {
public:
    explicit PdeProcess(const PdeModelConfig& cfg);

    LevelPath sample_path(std::uint64_t path_seed, double stop_level) const override;

    const KLBasis& basis() const { return *basis_; }
    const PdeModelConfig& config() const { return config_; }

    /// The coefficient realization drawn by a given path seed.
    KLBasis::Field sample_field(std::uint64_t path_seed) const;

private:
    PdeModelConfig config_;
    std::shared_ptr<const KLBasis> basis_;  // immutable, shared across threads
};

/// One adaptive path: solve, estimate, refine while the level is below
/// stop_level. Throws CappedPathError when the refinement cap is reached
/// first, carrying the partial path.
LevelPath sample_pde_path(const PdeProcess& model, std::uint64_t path_seed, double stop_level);

}  // namespace qclmc
