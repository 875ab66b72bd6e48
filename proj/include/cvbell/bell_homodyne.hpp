// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cvbell/conditional.hpp"
#include "cvbell/gaussian.hpp"
#include "cvbell/settings.hpp"

// Correlators of sign-dichotomised quadratures x^theta = x cos theta + y sin theta.
namespace cvbell::homodyne {

struct HomodyneSetting {
    double theta = 0.0;
    double phi = 0.0;

    double psi(double phi2) const { return theta + phi + phi2; }
};

// Closed form for the conditional state; depends on the phases only through psi.
double e_h_rho1_psi(const conditional::ConditionalParams& p, double psi);
double e_h_rho1(const conditional::ConditionalParams& p, const HomodyneSetting& s);

// (2/pi) asin(rho), rho the correlation of the two selected quadratures.
double e_h_gaussian(const gaussian::GaussianState& s, double theta, double phi);

// 1 - 2|psi|/pi on [-pi, pi].
double classical_reference(double psi);

BellValue b2_h(const conditional::ConditionalParams& p, const HomodyneSettings& s);
BellValue b2_h(const gaussian::GaussianState& state, const HomodyneSettings& s);

}  // namespace cvbell::homodyne
