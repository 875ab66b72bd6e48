// SPDX-License-Identifier: Apache-2.0
#include "cvbell/bell_homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvbell/errors.hpp"

namespace cvbell::homodyne {

namespace {

constexpr double kPi = std::numbers::pi;

double arctan_term(double cos_psi, double radicand_base) {
    const double rad = radicand_base - 4.0 * cos_psi * cos_psi;
    if (!(rad > 0.0)) throw PrecisionError("square-root argument is not positive");
    return std::atan(2.0 * cos_psi / std::sqrt(rad));
}

template <class E>
double chsh(const HomodyneSettings& s, E&& e) {
    return e(s.theta, s.phi) + e(s.theta, s.phi_primed) + e(s.theta_primed, s.phi) -
           e(s.theta_primed, s.phi_primed);
}

}  // namespace

double e_h_rho1_psi(const conditional::ConditionalParams& p, double psi) {
    const auto w = conditional::two_gaussian_wigner(p);
    if (p.n2 == 0.0) throw PrecisionError("n2 = 0 puts the closed form outside its domain");
    const double n1 = p.n2 + p.n3, n2 = p.n2, n3 = p.n3, eta = p.eta;
    const double c = std::cos(psi);
    const double k = 4.0 / (kPi * kPi);
    const double pre = (1.0 + eta * n3) / (4.0 * eta * n3);

    const double base_a = (1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) / ((1.0 + n1) * n2);
    const double base_b = (1.0 + 2.0 * n1 - n3 * eta) * (1.0 + 2.0 * n2 + n3 * eta) / ((1.0 + n1) * n2);
    const double term_a =
        -k / std::sqrt(w.norm_a) * (2.0 * (1.0 + 2.0 * n3) * kPi * arctan_term(c, base_a));
    const double term_b = -(1.0 / eta) * k * 2.0 / std::sqrt(w.norm_b) *
                          (2.0 * kPi * (-1.0 + n3 * (-2.0 + eta)) / (1.0 + n3 * eta) * arctan_term(c, base_b));
    return pre * (term_a + term_b);
}

double e_h_rho1(const conditional::ConditionalParams& p, const HomodyneSetting& s) {
    return e_h_rho1_psi(p, s.psi(p.phi2));
}

double e_h_gaussian(const gaussian::GaussianState& s, double theta, double phi) {
    if (s.n_modes() != 2) throw InvalidParameter("two-mode state required");
    Eigen::Vector4d u = Eigen::Vector4d::Zero(), v = Eigen::Vector4d::Zero();
    u[0] = std::cos(theta);
    u[2] = std::sin(theta);
    v[1] = std::cos(phi);
    v[3] = std::sin(phi);
    const Eigen::Matrix4d c = s.cov();
    const double rho = u.dot(c * v) / std::sqrt(u.dot(c * u) * v.dot(c * v));
    if (std::abs(rho) > 1.0 + 1e-12) throw PrecisionError("correlation coefficient exceeds 1");
    return 2.0 / kPi * std::asin(std::clamp(rho, -1.0, 1.0));
}

double classical_reference(double psi) {
    if (!(std::abs(psi) <= kPi + 1e-12)) throw InvalidParameter("psi must lie in [-pi, pi]");
    return 1.0 - 2.0 * std::abs(psi) / kPi;
}

BellValue b2_h(const conditional::ConditionalParams& p, const HomodyneSettings& s) {
    BellValue b;
    b.value = std::abs(chsh(s, [&](double t, double f) { return e_h_rho1(p, {t, f}); }));
    b.settings = s;
    return b;
}

BellValue b2_h(const gaussian::GaussianState& state, const HomodyneSettings& s) {
    BellValue b;
    b.value = std::abs(chsh(s, [&](double t, double f) { return e_h_gaussian(state, t, f); }));
    b.settings = s;
    return b;
}

}  // namespace cvbell::homodyne
