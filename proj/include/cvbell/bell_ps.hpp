// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <numbers>

#include "cvbell/conditional.hpp"
#include "cvbell/settings.hpp"

namespace cvbell::ps {

struct PsCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

struct Azimuths {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;
};

inline constexpr Azimuths kPresetAzimuths{0.0, std::numbers::pi, std::numbers::pi};
inline constexpr Azimuths kZeroAzimuths{0.0, 0.0, 0.0};

// Three-mode correlators of |T>, summed until the tail bound drops below tol.
// Signs follow the tabulated pattern: c1 <= 0 <= c2, c3 (with <s_z s_z s_z> = +1).
PsCoefficients coeffs_t_series(double n2, double n3, double tol = 1e-8);

// Parity-representation coefficients for make_t with n2 = n3 = n/4.
PsCoefficients coeffs_t_pi(double n);
PsCoefficients coeffs_vlb_pi(double r);

// (-|c1|, |c2|, |c3|): magnitudes placed in the tabulated sign pattern.
PsCoefficients tabulated_pattern(const PsCoefficients& c);

double e_ps3(const PsCoefficients& c, const std::array<double, 3>& thetas, const Azimuths& phis);
double e_ps3(const PsCoefficients& c, const PsSettings& settings);

// |E(1,2,3') + E(1,2',3) + E(1',2,3) - E(1',2',3')| from e_ps3.
double b3_ps_eval(const PsCoefficients& c, const PsSettings& settings);

// Maximum over the six polar angles at fixed azimuths, for coefficient
// magnitudes placed in the tabulated sign pattern. The first party's pair is
// eliminated in closed form; the other four go through optim::maximize_angles.
BellValue b3_ps_max(const PsCoefficients& magnitudes, const Azimuths& phis = kPresetAzimuths,
                    int grid = 32);

// S_REP: series coefficients at the preset azimuths.
// PI_REP: coeffs_t_pi(2 (n2 + n3)) at zero azimuths; requires n2 == n3.
// Both place the coefficient magnitudes in the tabulated sign pattern.
BellValue b3_ps(double n2, double n3, Representation rep, double tol = 1e-8);
BellValue b3_ps_vlb(double r);

double f_twb(double n);
double f_conditional(const conditional::ConditionalParams& p, double tol = 1e-8);
double f_traced(const conditional::ConditionalParams& p, double tol = 1e-8);

// CHSH maximum 2 sqrt(1 + f^2) of E = cos t1 cos t2 + f sin t1 sin t2.
BellValue b2_ps_from_f(double f);
double e_ps2(double f, double theta1, double theta2);

}  // namespace cvbell::ps
