// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "cvbell/numeric.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

// Fixed seed so every sweep is reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// Tensor-product Gauss-Legendre integral of f over the box |x_d| <= half_width * scale[d].
inline double integrate_box(const std::function<double(const Eigen::VectorXd&)>& f,
                            const std::vector<double>& scale, double half_width, int nodes) {
    const int dim = static_cast<int>(scale.size());
    const auto q = cvbell::numeric::gauss_legendre(nodes, -half_width, half_width);
    Eigen::VectorXd x(dim);
    std::vector<int> idx(dim, 0);
    double jac = 1.0;
    for (double s : scale) jac *= s;
    double sum = 0.0;
    while (true) {
        double w = 1.0;
        for (int d = 0; d < dim; ++d) {
            x[d] = scale[d] * q.nodes[idx[d]];
            w *= q.weights[idx[d]];
        }
        sum += w * f(x);
        int d = 0;
        while (d < dim && ++idx[d] == nodes) idx[d++] = 0;
        if (d == dim) break;
    }
    return jac * sum;
}

// Per-axis standard deviations of a Wigner function with covariance cov (variance cov/2).
inline std::vector<double> wigner_scales(const Eigen::MatrixXd& cov) {
    std::vector<double> s;
    for (int i = 0; i < cov.rows(); ++i) s.push_back(std::sqrt(0.5 * cov(i, i)));
    return s;
}

// Integral of f(v) over R^dim in the coordinates v = L z, L the Cholesky factor
// of `shape`; accurate when f is close to a Gaussian with covariance ~ shape.
inline double integrate_whitened(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::MatrixXd& shape, double half_width, int nodes) {
    const Eigen::MatrixXd l = shape.llt().matrixL();
    const double jac = l.diagonal().prod();
    const int dim = static_cast<int>(shape.rows());
    return jac * integrate_box([&](const Eigen::VectorXd& z) { return f(l * z); },
                               std::vector<double>(dim, 1.0), half_width, nodes);
}

}  // namespace testing
