#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// A level path is one sample's refinement trajectory: strictly increasing
// levels l_j starting at l_0 = 0, the quantity-of-interest approximations Q_j,
// and the incremental cost of each refinement step. Adaptive models also
// record the a-posteriori error estimates e_j that define the levels via
// l_j = -ln(e_j / e_0).

namespace qclmc {

struct LevelPath {
    std::vector<double> levels;      // l_0 = 0, strictly increasing
    std::vector<double> values;      // Q_j
    std::vector<double> errors;      // e_j; empty when the model has no error estimator
    std::vector<double> step_costs;  // step_costs[0] is the baseline cost

    /// Index J of the last computed refinement.
    std::size_t j_stop() const { return levels.empty() ? 0 : levels.size() - 1; }

    double total_cost() const {
        double c = 0.0;
        for (double s : step_costs) c += s;
        return c;
    }

    void validate() const;
};

/// Thrown when a path hits its refinement cap before covering the requested
/// stop level; carries the partial path so the caller can decide.
class CappedPathError : public std::runtime_error {
public:
    CappedPathError(std::string what, LevelPath partial)
        : std::runtime_error(std::move(what)), path(std::move(partial)) {}

    LevelPath path;
};

/// A stochastic level process Q(l) that can be sampled one path at a time.
/// Implementations must be pure given (path_seed, stop_level) so paths can be
/// drawn concurrently and reproducibly.
class LevelProcess {
public:
    virtual ~LevelProcess() = default;

    /// Sample one path, refining while the last level is <= stop_level
    /// (one step always runs, so the path covers stop_level).
    virtual LevelPath sample_path(std::uint64_t path_seed, double stop_level) const = 0;

    /// Exact E[Q(inf) - Q(0)] when the model knows it; NaN otherwise.
    virtual double analytic_limit() const;
};

}  // namespace qclmc
