#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

// Piecewise-linear Galerkin solver for -(a u')' = f on (0,1) with
// homogeneous Dirichlet conditions, the residual a-posteriori error
// indicator, and Dorfler bulk-chasing refinement.

namespace qclmc {

struct Mesh1D {
    std::vector<double> nodes;  // strictly increasing, nodes.front()=0, nodes.back()=1

    std::size_t element_count() const { return nodes.size() - 1; }
    double element_size(std::size_t k) const { return nodes[k + 1] - nodes[k]; }

    void validate() const;
};

/// Uniform mesh with n elements.
Mesh1D uniform_mesh(std::size_t n_elements);

/// Scalar field with an analytic derivative, as the residual indicator needs a'.
struct Coefficient {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

inline Coefficient constant_coefficient(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
}

using SourceFn = std::function<double(double)>;

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FemSolution {
    std::vector<double> nodal;  // includes the boundary zeros
    double qoi = 0.0;           // H1(0,1) norm of the discrete solution
    std::size_t dof = 0;        // interior unknowns of the solve
};

/// Assemble (3-point Gauss per element), solve the tridiagonal system, and
/// evaluate the H1 norm. Throws ModelError if the coefficient is not strictly
/// positive at a quadrature point.
FemSolution solve_fem_1d(const Coefficient& a, const SourceFn& f, const Mesh1D& mesh);

struct IndicatorReport {
    std::vector<double> per_element;  // phi_K >= 0
    double total = 0.0;               // (sum phi_K^2)^(1/2)
};

/// Residual indicator: phi_K^2 = h_K^2 || f + (a u_h')' ||_{L2(K)}^2 plus half
/// the flux-jump terms at interior nodes, with h_gamma the mean of the two
/// adjacent element sizes.
IndicatorReport a_posteriori_indicators(const FemSolution& u, const Mesh1D& mesh,
                                        const Coefficient& a, const SourceFn& f);

/// Bisect the minimal set of elements whose squared indicators reach
/// theta * sum phi_K^2 (largest first, leftmost on ties).
Mesh1D dorfler_refine(const Mesh1D& mesh, const std::vector<double>& indicators, double theta);

/// Bisect exactly one element.
Mesh1D bisect_element(const Mesh1D& mesh, std::size_t k);

}  // namespace qclmc
