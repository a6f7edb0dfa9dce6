#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

// Adaptive Gauss-Kronrod (G7/K15) quadrature used as an independent oracle
// for the closed-form integral checks. Deliberately self-contained: it shares
// no evaluation path with the library under test.

namespace testsupport {

namespace detail {

// K15 abscissae (positive half) and weights; G7 weights for the shared nodes.
inline constexpr double kx[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kw[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gw[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double fv = f(c - h * kx[i]) + f(c + h * kx[i]);
        resk += kw[i] * fv;
        if (i % 2 == 1) resg += gw[i / 2] * fv;
    }
    const double f0 = f(c);
    resk += kw[7] * f0;
    resg += gw[3] * f0;
    result = resk * h;
    err = std::abs((resk - resg) * h);
}

}  // namespace detail

/// Adaptive integration of f over [a,b] to abs_tol + rel_tol * |integral|.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-13,
                 double rel_tol = 1e-12, std::size_t max_panels = 4000) {
    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    double v, e;
    detail::gk15(f, a, b, v, e);
    panels.push_back({a, b, v, e});
    for (std::size_t it = 0; it < max_panels; ++it) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= abs_tol + rel_tol * std::abs(total)) return total;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        Panel left{p.a, mid, 0, 0}, right{mid, p.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        panels[worst] = left;
        panels.push_back(right);
    }
    throw std::runtime_error("testsupport::integrate did not converge");
}

/// Double integral of the max-kernel variance integrand over [0,L]^2:
/// int int e^{-r max(l,l')} e^{(r-beta/2)(l+l')} dl dl'.
/// The inner integral is split at the kink l = l'.
inline double variance_double_integral(double r, double beta, double L) {
    const double s = r - beta / 2.0;
    auto inner = [&](double lp) {
        auto f = [&](double l) { return std::exp(-r * std::max(l, lp) + s * (l + lp)); };
        return integrate(f, 0.0, lp, 1e-15, 1e-13) + integrate(f, lp, L, 1e-15, 1e-13);
    };
    return integrate(inner, 0.0, L, 1e-14, 5e-12);
}

/// Single integral int_0^L e^{(r-beta/2) l} dl by quadrature.
inline double drift_single_integral(double r, double beta, double L) {
    const double s = r - beta / 2.0;
    return integrate([&](double l) { return std::exp(s * l); }, 0.0, L);
}

}  // namespace testsupport
