// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace cvbell::numeric {

// ln(k!) for k = 0..n, via lgamma.
std::vector<double> log_factorials(int n);

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes mapped onto [a, b].
Quadrature gauss_legendre(int n, double a, double b);

// Normalised Hermite functions psi_0..psi_{n-1} at x, for the quadrature
// x = (a + a^dagger)/sqrt(2): psi_k(x) = (2^k k! sqrt(pi))^-1/2 H_k(x) e^{-x^2/2}.
std::vector<double> hermite_functions(int n, double x);

}  // namespace cvbell::numeric
