// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace cvbell {

using Complex = std::complex<double>;

// Displacements for a parity test, one per mode, in the covariance frame
// (alpha = x + i y with x, y as in the covariance ordering).
struct DpSettings {
    std::vector<Complex> unprimed;
    std::vector<Complex> primed;
    double j_mag = 0.0;
};

enum class Representation { S_REP, PI_REP };

struct PsSettings {
    std::vector<double> thetas;
    std::vector<double> phis;
    std::vector<double> thetas_primed;
    std::vector<double> phis_primed;
    Representation representation = Representation::S_REP;
};

struct HomodyneSettings {
    double theta = 0.0;
    double phi = 0.0;
    double theta_primed = 0.0;
    double phi_primed = 0.0;
};

struct BellValue {
    double value = 0.0;
    std::variant<std::monostate, DpSettings, PsSettings, HomodyneSettings> settings;
};

}  // namespace cvbell
