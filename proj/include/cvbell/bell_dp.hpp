// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "cvbell/conditional.hpp"
#include "cvbell/gaussian.hpp"
#include "cvbell/optim.hpp"
#include "cvbell/settings.hpp"

// Displaced-parity correlators: E(alpha) = pi^n W(sqrt2 Re alpha, sqrt2 Im alpha),
// which for a zero-mean Gaussian is det(C)^-1/2 exp(-2 v C^-1 v).
namespace cvbell::dp {

double e_dp_gaussian(const gaussian::GaussianState& s, const std::vector<Complex>& alphas);
double e_dp_conditional(const conditional::TwoGaussianWigner& w, const std::vector<Complex>& alphas);
double e_dp_conditional(const conditional::ConditionalParams& p, const std::vector<Complex>& alphas);

// The displacement families below are tabulated with the two quadratures
// exchanged relative to the covariance ordering; this maps one onto the other.
inline Complex exchange_quadratures(Complex a) { return {a.imag(), a.real()}; }

// Families are parametrised by the tabulated magnitude J. For the vlb and twin-beam
// states |alpha|^2 scales as J; for states derived from the tripartite coupling
// (make_t and the conditional state) it scales as J/2.
inline constexpr double kTripartiteAmplitude = 0.70710678118654752440;

DpSettings from_tabulated(const std::vector<Complex>& unprimed, const std::vector<Complex>& primed,
                          double j_mag, double amplitude_scale);

DpSettings vlb_family(double j);           // alpha = i sqrt J, alpha' = -2 i sqrt J on all modes
DpSettings t_symmetric_family(double j);   // same displacements on make_t
DpSettings t_optimized_family(double j);   // (2/3 sqrtJ, 0, 0) / (0, -sqrtJ, sqrtJ)
DpSettings twb_bw_family(double j);        // (0, 0) / (i sqrtJ, -i sqrtJ)
DpSettings twb_improved_family(double j);  // (i sqrtJ, -i sqrtJ) / (-3 i sqrtJ, 3 i sqrtJ)
DpSettings conditional_family(double j);   // (i sqrtJ, 2 i sqrtJ) / (3 i sqrtJ, 0)

// Explicit exponential form of the vlb correlator.
double e_vlb_explicit(double r, const std::vector<Complex>& alphas);

BellValue b3_vlb_closed(double r, double j);
BellValue b3_t_closed(double n, double j);

BellValue b3_dp_general(const gaussian::GaussianState& s, const DpSettings& settings);

// Sum of the coefficients of e^{2r} in the three positive vlb correlators.
double vlb_offset_residual(const DpSettings& settings);

BellValue b2_dp(const gaussian::GaussianState& s, const DpSettings& settings);
BellValue b2_dp(const conditional::ConditionalParams& p, const DpSettings& settings);

// Maximise a one-parameter family over J in [1e-8, 10] on a log grid.
optim::ScanResult optimize_j(const std::function<double(double)>& bell_of_j, double lo = 1e-8,
                             double hi = 10.0, double tol = 1e-8);

}  // namespace cvbell::dp
