#pragma once

#include <cstddef>
#include <vector>

#include "qclmc/matern.hpp"

// Nystrom discretization of the covariance eigenproblem on [0,1]:
// Gauss-Legendre nodes, symmetric weighted eigensolve, and eigenfunction
// interpolation off the nodes. Feeds the truncated Karhunen-Loeve expansion
// a_R(x) = exp(sum_m sqrt(mu_m) phi_m(x) xi_m).

namespace qclmc {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [0,1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0,1].
GaussLegendreRule gauss_legendre(std::size_t n);

class KLBasis {
public:
    /// Top-R eigenpairs of the kernel on [0,1] from an n_q-point rule (n_q >= R).
    KLBasis(const MaternParams& p, std::size_t r_trunc, std::size_t n_q);

    std::size_t truncation() const { return eigenvalues_.size(); }
    std::size_t quadrature_size() const { return rule_.nodes.size(); }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    const GaussLegendreRule& rule() const { return rule_; }
    const MaternParams& kernel() const { return kernel_; }

    /// Nodal value of eigenfunction m at quadrature node i.
    double eigenfunction_at_node(std::size_t m, std::size_t i) const {
        return nodal_[m][i];
    }

    /// Nystrom interpolation of eigenfunction m at x.
    double eigenfunction(std::size_t m, double x) const;

    /// Derivative of eigenfunction m at x (kernel gradient interpolation).
    double eigenfunction_dx(std::size_t m, double x) const;

    /// log a_R(x) = sum_m sqrt(mu_m) phi_m(x) xi_m and its x-derivative.
    double log_field(const std::vector<double>& xi, double x) const;
    double log_field_dx(const std::vector<double>& xi, double x) const;

    /// One realization of the log-Gauss coefficient with the nodal
    /// combination cached; cheap to evaluate repeatedly.
    class Field {
    public:
        Field(const KLBasis& basis, std::vector<double> combo)
            : basis_(&basis), combo_(std::move(combo)) {}

        double log_value(double x) const;
        double value(double x) const;       // a(x), strictly positive
        double derivative(double x) const;  // a'(x)

    private:
        const KLBasis* basis_;
        std::vector<double> combo_;
    };

    Field field(const std::vector<double>& xi) const { return Field(*this, nodal_combination(xi)); }

    std::vector<double> nodal_combination(const std::vector<double>& xi) const;

private:
    MaternParams kernel_;
    GaussLegendreRule rule_;
    std::vector<double> eigenvalues_;           // non-increasing, clamped at 0
    std::vector<std::vector<double>> nodal_;    // nodal_[m][i] = phi_m(x_i)
    std::vector<std::size_t> active_;           // modes with mu_m large enough to interpolate

    friend class Field;
};

/// exp(sum_m sqrt(mu_m) phi_m(x) xi_m); strictly positive.
double evaluate_coefficient(const KLBasis& kl, const std::vector<double>& xi, double x);

}  // namespace qclmc
