// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cvbell/gaussian.hpp"

// Brute-force truncated Fock-space engine. Independent of every closed form,
// it serves as the reference the analytic paths are checked against.
namespace cvbell::fock {

using Complex = std::complex<double>;

inline constexpr double kTailBudget = 1e-6;

// Pure state on n modes; amps has cutoff^n entries, mode 0 most significant.
struct FockPureState {
    int n_modes = 0;
    int cutoff = 0;
    Eigen::VectorXcd amps;

    double norm_squared() const { return amps.squaredNorm(); }
    Complex amplitude(const std::vector<int>& photons) const;
};

struct FockDensityOperator {
    int n_modes = 0;
    int cutoff = 0;
    Eigen::MatrixXcd matrix;
};

using FockState = std::variant<FockPureState, FockDensityOperator>;

FockPureState vacuum(int n_modes, int cutoff);
FockPureState build_t(const gaussian::TripartitePhotonNumbers& p, int cutoff,
                      double tail_budget = kTailBudget);
FockPureState build_twb(double x, int cutoff, double tail_budget = kTailBudget);

// Single-mode matrices on photon numbers 0..cutoff-1.
Eigen::MatrixXcd annihilation(int cutoff);
Eigen::MatrixXcd displacement(Complex alpha, int cutoff);
Eigen::MatrixXcd displaced_parity(Complex alpha, int cutoff);
// d.s with s_z = +1 on odd and -1 on even photon numbers, s_- = sum |2k><2k+1|.
// The shifted variant pairs (2k+1, 2k+2) and leaves |0> with s_z = -1.
Eigen::MatrixXcd pseudospin_matrix(double theta, double phi, int cutoff, bool shifted = false);
// sign(x^theta) with x^theta = (a e^{-i theta} + a^dagger e^{i theta})/sqrt(2).
Eigen::MatrixXcd orthant_sign(double theta, int cutoff);

// <prod_j ops[j]> normalised by the state's trace.
Complex expect_product(const FockState& state, const std::vector<Eigen::MatrixXcd>& ops);

double displaced_parity_expect(const FockState& state, const std::vector<Complex>& alphas);

double pseudospin_expect(const FockState& state, const std::vector<double>& thetas,
                         const std::vector<double>& phis,
                         const std::vector<bool>& shifted = {});

// W(x..., y...) from the displaced-parity identity W(v) = pi^-n <prod D P D^dagger>,
// alpha_j = (x_j + i y_j)/sqrt(2).
double wigner_reconstruct(const FockState& state, const Eigen::VectorXd& point);

struct OnOffResult {
    double probability = 0.0;
    bool degenerate = false;  // no click possible; state is left empty
    FockDensityOperator state;
};

// Click outcome of an ON/OFF detector of efficiency eta on one mode,
// which is then traced out.
OnOffResult onoff_condition(const FockPureState& state, int mode, double eta);

// P++, P+-, P-+, P-- for sign(x1^theta), sign(x2^phi).
std::array<double, 4> quadrature_orthant_probabilities(const FockState& state, double theta,
                                                       double phi);
double quadrature_orthant_expect(const FockState& state, double theta, double phi);

// Wigner kernels of the parity-based spin operators:
//   X: sign(x), Y: -delta(x) PV(1/y), Z: -pi delta(x) delta(y).
enum class PiAxis { X, Y, Z };

// <prod_j Pi_j> by phase-space quadrature of a Gaussian Wigner function.
double pi_correlator_quadrature(const gaussian::GaussianState& s, const std::vector<PiAxis>& axes,
                                int nodes = 96);

}  // namespace cvbell::fock
