#include "qclmc/matern.hpp"

#include <cmath>

namespace qclmc {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415059;
constexpr double kSqrt5 = 2.2360679774997896964091736687747;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

// z K_1(z) -> 1 as z -> 0; below this the correction is under 1e-15.
constexpr double kTinyArg = 1e-8;

}  // namespace

double matern_covariance(const MaternParams& p, double x, double y) {
    p.validate();
    const double d = std::abs(x - y);
    const double v = p.variance;
    if (d == 0.0) return v;
    if (p.nu == 0.5) return v * std::exp(-d / p.lambda);
    if (p.nu == 1.5) {
        const double s = kSqrt3 * d / p.lambda;
        return v * (1.0 + s) * std::exp(-s);
    }
    if (p.nu == 2.5) {
        const double s = kSqrt5 * d / p.lambda;
        return v * (1.0 + s + s * s / 3.0) * std::exp(-s);
    }
    // nu = 1: v * z K_1(z), z = sqrt(2) d / lambda
    const double z = kSqrt2 * d / p.lambda;
    if (z < kTinyArg) return v;
    return v * z * std::cyl_bessel_k(1.0, z);
}

double matern_covariance_dx(const MaternParams& p, double x, double y) {
    p.validate();
    const double d = std::abs(x - y);
    if (d == 0.0) return 0.0;
    const double sgn = x > y ? 1.0 : -1.0;
    const double v = p.variance;
    if (p.nu == 0.5) return -sgn * v / p.lambda * std::exp(-d / p.lambda);
    if (p.nu == 1.5) {
        const double s = kSqrt3 * d / p.lambda;
        return -sgn * v * kSqrt3 / p.lambda * s * std::exp(-s);
    }
    if (p.nu == 2.5) {
        const double s = kSqrt5 * d / p.lambda;
        return -sgn * v * kSqrt5 / p.lambda * (s / 3.0) * (1.0 + s) * std::exp(-s);
    }
    // d/dz (z K_1(z)) = -z K_0(z)
    const double z = kSqrt2 * d / p.lambda;
    if (z < kTinyArg) return 0.0;
    return -sgn * v * kSqrt2 / p.lambda * z * std::cyl_bessel_k(0.0, z);
}

}  // namespace qclmc
