#include "qclmc/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qclmc {

namespace {

// 3-point Gauss rule on [0,1]
constexpr double kGx[3] = {0.1127016653792583114820735, 0.5, 0.8872983346207416885179265};
constexpr double kGw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

}  // namespace

void Mesh1D::validate() const {
    if (nodes.size() < 2) throw std::invalid_argument("Mesh1D: need at least one element");
    if (nodes.front() != 0.0 || nodes.back() != 1.0)
        throw std::invalid_argument("Mesh1D: domain must be [0,1]");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("Mesh1D: nodes must be strictly increasing");
}

Mesh1D uniform_mesh(std::size_t n_elements) {
    if (n_elements == 0) throw std::invalid_argument("uniform_mesh: need at least one element");
    Mesh1D mesh;
    mesh.nodes.resize(n_elements + 1);
    for (std::size_t i = 0; i <= n_elements; ++i)
        mesh.nodes[i] = static_cast<double>(i) / static_cast<double>(n_elements);
    mesh.nodes.back() = 1.0;
    return mesh;
}

FemSolution solve_fem_1d(const Coefficient& a, const SourceFn& f, const Mesh1D& mesh) {
    mesh.validate();
    const std::size_t ne = mesh.element_count();
    const std::size_t n = ne - 1;  // interior nodes

    // per-element integrals of a and f*phi by 3-point Gauss
    std::vector<double> int_a(ne), load_left(ne, 0.0), load_right(ne, 0.0);
    for (std::size_t k = 0; k < ne; ++k) {
        const double xl = mesh.nodes[k], h = mesh.element_size(k);
        double ia = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double x = xl + kGx[q] * h;
            const double av = a.value(x);
            if (!(av > 0.0)) throw ModelError("solve_fem_1d: coefficient not positive at x=" + std::to_string(x));
            ia += kGw[q] * av;
            const double fv = f(x);
            load_left[k] += kGw[q] * fv * (1.0 - kGx[q]) * h;
            load_right[k] += kGw[q] * fv * kGx[q] * h;
        }
        int_a[k] = ia * h;
    }

    FemSolution sol;
    sol.nodal.assign(ne + 1, 0.0);
    sol.dof = n;
    if (n > 0) {
        // tridiagonal system over interior nodes; element stiffness int_a/h^2 * [[1,-1],[-1,1]]
        std::vector<double> diag(n), lower(n, 0.0), upper(n, 0.0), rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double hl = mesh.element_size(i), hr = mesh.element_size(i + 1);
            diag[i] = int_a[i] / (hl * hl) + int_a[i + 1] / (hr * hr);
            rhs[i] = load_right[i] + load_left[i + 1];
            if (i + 1 < n) upper[i] = -int_a[i + 1] / (hr * hr);
            if (i > 0) lower[i] = -int_a[i] / (hl * hl);
        }
        // Thomas algorithm
        std::vector<double> cs(n, 0.0), ds(n, 0.0);
        cs[0] = upper[0] / diag[0];
        ds[0] = rhs[0] / diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double denom = diag[i] - lower[i] * cs[i - 1];
            cs[i] = upper[i] / denom;
            ds[i] = (rhs[i] - lower[i] * ds[i - 1]) / denom;
        }
        sol.nodal[n] = ds[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            sol.nodal[i + 1] = ds[i] - cs[i] * sol.nodal[i + 2];
    }

    // H1 norm: exact elementwise integrals for piecewise linears
    double l2 = 0.0, h1semi = 0.0;
    for (std::size_t k = 0; k < ne; ++k) {
        const double h = mesh.element_size(k);
        const double ul = sol.nodal[k], ur = sol.nodal[k + 1];
        l2 += h * (ul * ul + ul * ur + ur * ur) / 3.0;
        const double slope = (ur - ul) / h;
        h1semi += h * slope * slope;
    }
    sol.qoi = std::sqrt(l2 + h1semi);
    return sol;
}

IndicatorReport a_posteriori_indicators(const FemSolution& u, const Mesh1D& mesh,
                                        const Coefficient& a, const SourceFn& f) {
    mesh.validate();
    const std::size_t ne = mesh.element_count();
    if (u.nodal.size() != ne + 1)
        throw std::invalid_argument("a_posteriori_indicators: solution does not match mesh");

    std::vector<double> slope(ne);
    for (std::size_t k = 0; k < ne; ++k)
        slope[k] = (u.nodal[k + 1] - u.nodal[k]) / mesh.element_size(k);

    std::vector<double> sq(ne, 0.0);
    // element residual: u_h'' = 0 on the element, so (a u_h')' = a' u_h'
    for (std::size_t k = 0; k < ne; ++k) {
        const double xl = mesh.nodes[k], h = mesh.element_size(k);
        double rint = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double x = xl + kGx[q] * h;
            const double res = f(x) + a.derivative(x) * slope[k];
            rint += kGw[q] * res * res;
        }
        sq[k] += h * h * (rint * h);
    }
    // flux jumps [a u_h'] at interior nodes, split between the two elements
    for (std::size_t i = 1; i < ne; ++i) {
        const double av = a.value(mesh.nodes[i]);
        const double jump = av * (slope[i - 1] - slope[i]);
        const double h_gamma = 0.5 * (mesh.element_size(i - 1) + mesh.element_size(i));
        const double half = 0.5 * h_gamma * jump * jump;
        sq[i - 1] += half;
        sq[i] += half;
    }

    IndicatorReport rep;
    rep.per_element.resize(ne);
    double total_sq = 0.0;
    for (std::size_t k = 0; k < ne; ++k) {
        rep.per_element[k] = std::sqrt(sq[k]);
        total_sq += sq[k];
    }
    rep.total = std::sqrt(total_sq);
    return rep;
}

Mesh1D bisect_element(const Mesh1D& mesh, std::size_t k) {
    if (k >= mesh.element_count()) throw std::invalid_argument("bisect_element: index out of range");
    Mesh1D out;
    out.nodes.reserve(mesh.nodes.size() + 1);
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        out.nodes.push_back(mesh.nodes[i]);
        if (i == k) out.nodes.push_back(0.5 * (mesh.nodes[i] + mesh.nodes[i + 1]));
    }
    return out;
}

Mesh1D dorfler_refine(const Mesh1D& mesh, const std::vector<double>& indicators, double theta) {
    mesh.validate();
    if (indicators.size() != mesh.element_count())
        throw std::invalid_argument("dorfler_refine: indicator count does not match mesh");
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("dorfler_refine: theta must lie in (0,1]");

    const std::size_t ne = indicators.size();
    std::vector<std::size_t> order(ne);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        return indicators[lhs] * indicators[lhs] > indicators[rhs] * indicators[rhs];
    });

    double total_sq = 0.0;
    for (double phi : indicators) total_sq += phi * phi;

    std::vector<bool> marked(ne, false);
    double acc = 0.0;
    for (std::size_t idx : order) {
        if (acc >= theta * total_sq) break;
        if (indicators[idx] == 0.0) break;
        marked[idx] = true;
        acc += indicators[idx] * indicators[idx];
    }

    Mesh1D out;
    out.nodes.reserve(mesh.nodes.size() + ne);
    for (std::size_t k = 0; k < ne; ++k) {
        out.nodes.push_back(mesh.nodes[k]);
        if (marked[k]) out.nodes.push_back(0.5 * (mesh.nodes[k] + mesh.nodes[k + 1]));
    }
    out.nodes.push_back(mesh.nodes.back());
    return out;
}

}  // namespace qclmc
