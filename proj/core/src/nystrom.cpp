#include "qclmc/nystrom.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qclmc {

GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n over [-1,1], then map to [0,1].
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = 0.5 * (1.0 - x);  // descending x -> ascending node
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

KLBasis::KLBasis(const MaternParams& p, std::size_t r_trunc, std::size_t n_q)
    : kernel_(p) {
    p.validate();
    if (r_trunc == 0) throw std::invalid_argument("KLBasis: truncation must be positive");
    if (n_q < r_trunc) throw std::invalid_argument("KLBasis: need n_q >= truncation");
    rule_ = gauss_legendre(n_q);

    Eigen::MatrixXd b(n_q, n_q);
    std::vector<double> sqw(n_q);
    for (std::size_t i = 0; i < n_q; ++i) sqw[i] = std::sqrt(rule_.weights[i]);
    for (std::size_t i = 0; i < n_q; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double kij = matern_covariance(p, rule_.nodes[i], rule_.nodes[j]);
            b(i, j) = b(j, i) = sqw[i] * sqw[j] * kij;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("KLBasis: eigensolver failed");

    // Eigen orders ascending; take the top r_trunc, clamp round-off negatives.
    eigenvalues_.resize(r_trunc);
    nodal_.assign(r_trunc, std::vector<double>(n_q));
    for (std::size_t m = 0; m < r_trunc; ++m) {
        const auto col = static_cast<Eigen::Index>(n_q - 1 - m);
        eigenvalues_[m] = std::max(0.0, solver.eigenvalues()(col));
        // fix the sign so results do not depend on eigensolver conventions
        double pick = 0.0;
        for (std::size_t i = 0; i < n_q; ++i) {
            const double u = solver.eigenvectors()(static_cast<Eigen::Index>(i), col);
            if (std::abs(u) > std::abs(pick)) pick = u;
        }
        const double sign = pick < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n_q; ++i) {
            nodal_[m][i] = sign * solver.eigenvectors()(static_cast<Eigen::Index>(i), col) / sqw[i];
        }
    }
    // Modes whose eigenvalue underflowed relative to the leading one cannot be
    // interpolated stably; they contribute nothing to the field either.
    const double floor = eigenvalues_.front() * 1e-14;
    for (std::size_t m = 0; m < r_trunc; ++m) {
        if (eigenvalues_[m] > floor) active_.push_back(m);
    }
}

double KLBasis::eigenfunction(std::size_t m, double x) const {
    const double mu = eigenvalues_[m];
    if (!(mu > 0.0)) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i)
        acc += rule_.weights[i] * matern_covariance(kernel_, x, rule_.nodes[i]) * nodal_[m][i];
    return acc / mu;
}

double KLBasis::eigenfunction_dx(std::size_t m, double x) const {
    const double mu = eigenvalues_[m];
    if (!(mu > 0.0)) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i)
        acc += rule_.weights[i] * matern_covariance_dx(kernel_, x, rule_.nodes[i]) * nodal_[m][i];
    return acc / mu;
}

namespace {

// sum_m sqrt(mu_m) phi_m(x) xi_m collapses to one kernel sweep: the nodal
// combination sum_m xi_m / sqrt(mu_m) phi_m(x_i) is x-independent.
template <typename Kernel>
double kernel_sweep(const GaussLegendreRule& rule, const std::vector<double>& combo,
                    Kernel&& k, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * k(x, rule.nodes[i]) * combo[i];
    return acc;
}

}  // namespace

std::vector<double> KLBasis::nodal_combination(const std::vector<double>& xi) const {
    if (xi.size() != eigenvalues_.size())
        throw std::invalid_argument("KLBasis: xi length must equal the truncation");
    std::vector<double> combo(rule_.nodes.size(), 0.0);
    for (std::size_t m : active_) {
        const double c = xi[m] / std::sqrt(eigenvalues_[m]);
        for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += c * nodal_[m][i];
    }
    return combo;
}

double KLBasis::log_field(const std::vector<double>& xi, double x) const {
    const auto combo = nodal_combination(xi);
    return kernel_sweep(rule_, combo,
                        [this](double a, double b) { return matern_covariance(kernel_, a, b); }, x);
}

double KLBasis::log_field_dx(const std::vector<double>& xi, double x) const {
    const auto combo = nodal_combination(xi);
    return kernel_sweep(rule_, combo,
                        [this](double a, double b) { return matern_covariance_dx(kernel_, a, b); }, x);
}

double KLBasis::Field::log_value(double x) const {
    return kernel_sweep(basis_->rule_, combo_,
                        [this](double a, double b) { return matern_covariance(basis_->kernel_, a, b); }, x);
}

double KLBasis::Field::value(double x) const { return std::exp(log_value(x)); }

double KLBasis::Field::derivative(double x) const {
    const double dlog = kernel_sweep(
        basis_->rule_, combo_,
        [this](double a, double b) { return matern_covariance_dx(basis_->kernel_, a, b); }, x);
    return value(x) * dlog;
}

double evaluate_coefficient(const KLBasis& kl, const std::vector<double>& xi, double x) {
    return std::exp(kl.log_field(xi, x));
}

}  // namespace qclmc
