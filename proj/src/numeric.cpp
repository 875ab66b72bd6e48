// SPDX-License-Identifier: Apache-2.0
#include "cvbell/numeric.hpp"

#include <cmath>
#include <numbers>

#include "cvbell/errors.hpp"

namespace cvbell::numeric {

std::vector<double> log_factorials(int n) {
    std::vector<double> lf(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) lf[k] = std::lgamma(k + 1.0);
    return lf;
}

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidParameter("quadrature needs at least one node");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        q.nodes[i] = mid - half * z;
        q.nodes[n - 1 - i] = mid + half * z;
        q.weights[i] = q.weights[n - 1 - i] = half * w;
    }
    return q;
}

std::vector<double> hermite_functions(int n, double x) {
    std::vector<double> psi(n);
    if (n == 0) return psi;
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n > 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int k = 2; k < n; ++k)
        psi[k] = std::sqrt(2.0 / k) * x * psi[k - 1] - std::sqrt((k - 1.0) / k) * psi[k - 2];
    return psi;
}

}  // namespace cvbell::numeric
