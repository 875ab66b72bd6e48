// SPDX-License-Identifier: Apache-2.0
#include "cvbell/bell_dp.hpp"

#include <cmath>
#include <numbers>

#include "cvbell/errors.hpp"

namespace cvbell::dp {

namespace {

Eigen::VectorXd to_point(const std::vector<Complex>& alphas) {
    const int n = static_cast<int>(alphas.size());
    Eigen::VectorXd v(2 * n);
    for (int k = 0; k < n; ++k) {
        v[k] = alphas[k].real();
        v[n + k] = alphas[k].imag();
    }
    return v;
}

void check_sizes(const DpSettings& s, size_t n) {
    if (s.unprimed.size() != n || s.primed.size() != n)
        throw InvalidParameter("settings do not match the number of modes");
}

template <class E>
double chsh(const DpSettings& s, E&& e) {
    const auto& a = s.unprimed;
    const auto& b = s.primed;
    return e({a[0], a[1]}) + e({a[0], b[1]}) + e({b[0], a[1]}) - e({b[0], b[1]});
}

template <class E>
double klyshko(const DpSettings& s, E&& e) {
    const auto& a = s.unprimed;
    const auto& b = s.primed;
    return e({a[0], a[1], b[2]}) + e({a[0], b[1], a[2]}) + e({b[0], a[1], a[2]}) -
           e({b[0], b[1], b[2]});
}

}  // namespace

double e_dp_gaussian(const gaussian::GaussianState& s, const std::vector<Complex>& alphas) {
    if (static_cast<int>(alphas.size()) != s.n_modes())
        throw InvalidParameter("one displacement per mode required");
    const Eigen::VectorXd v = to_point(alphas);
    return std::exp(-2.0 * s.quad_form(v)) / std::sqrt(s.det());
}

double e_dp_conditional(const conditional::TwoGaussianWigner& w, const std::vector<Complex>& alphas) {
    if (alphas.size() != 2) throw InvalidParameter("conditional state has two modes");
    const Eigen::Vector4d v = std::sqrt(2.0) * to_point(alphas);
    return std::numbers::pi * std::numbers::pi * w(v);
}

double e_dp_conditional(const conditional::ConditionalParams& p, const std::vector<Complex>& alphas) {
    return e_dp_conditional(conditional::two_gaussian_wigner(p), alphas);
}

DpSettings from_tabulated(const std::vector<Complex>& unprimed, const std::vector<Complex>& primed,
                          double j_mag, double amplitude_scale) {
    DpSettings s;
    s.j_mag = j_mag;
    for (auto a : unprimed) s.unprimed.push_back(amplitude_scale * exchange_quadratures(a));
    for (auto a : primed) s.primed.push_back(amplitude_scale * exchange_quadratures(a));
    return s;
}

DpSettings vlb_family(double j) {
    const Complex a(0.0, std::sqrt(j));
    return from_tabulated({a, a, a}, {-2.0 * a, -2.0 * a, -2.0 * a}, j, 1.0);
}

DpSettings t_symmetric_family(double j) {
    const Complex a(0.0, std::sqrt(j));
    return from_tabulated({a, a, a}, {-2.0 * a, -2.0 * a, -2.0 * a}, j, kTripartiteAmplitude);
}

DpSettings t_optimized_family(double j) {
    const double s = std::sqrt(j);
    return from_tabulated({2.0 / 3.0 * s, 0.0, 0.0}, {0.0, -s, s}, j, kTripartiteAmplitude);
}

DpSettings twb_bw_family(double j) {
    const Complex a(0.0, std::sqrt(j));
    return from_tabulated({0.0, 0.0}, {a, -a}, j, 1.0);
}

DpSettings twb_improved_family(double j) {
    const Complex a(0.0, std::sqrt(j));
    return from_tabulated({a, -a}, {-3.0 * a, 3.0 * a}, j, 1.0);
}

DpSettings conditional_family(double j) {
    const Complex a(0.0, std::sqrt(j));
    return from_tabulated({a, 2.0 * a}, {3.0 * a, 0.0}, j, kTripartiteAmplitude);
}

double e_vlb_explicit(double r, const std::vector<Complex>& alphas) {
    if (alphas.size() != 3) throw InvalidParameter("vlb state has three modes");
    double x[3], y[3];
    for (int k = 0; k < 3; ++k) {
        const Complex t = exchange_quadratures(alphas[k]);
        x[k] = t.real();
        y[k] = t.imag();
    }
    auto sq = [](double v) { return v * v; };
    const double up = sq(y[0] + y[1] + y[2]) + sq(x[1] - x[2]) + sq(x[1] - x[0]) + sq(x[0] - x[2]);
    const double down = sq(x[0] + x[1] + x[2]) + sq(y[1] - y[2]) + sq(y[1] - y[0]) + sq(y[0] - y[2]);
    return std::exp(-2.0 / 3.0 * (std::exp(2.0 * r) * up + std::exp(-2.0 * r) * down));
}

BellValue b3_vlb_closed(double r, double j) {
    if (!(r >= 0.0) || !(j >= 0.0)) throw InvalidParameter("r and J must be non-negative");
    BellValue b;
    b.value = 3.0 * std::exp(-12.0 * std::exp(-2.0 * r) * j) - std::exp(-24.0 * std::exp(2.0 * r) * j);
    b.settings = vlb_family(j);
    return b;
}

BellValue b3_t_closed(double n, double j) {
    if (!(n >= 0.0) || !(j >= 0.0)) throw InvalidParameter("N and J must be non-negative");
    // Numerator and denominator divided through by the denominator exponential.
    const double s = std::sqrt(2.0) * std::sqrt(n * (2.0 + n));
    const double a = 3.0 + 3.0 * n + 2.0 * s;
    const double b = 1.0 + n + 2.0 * s;
    const double c = 4.0 + 7.0 * n + 6.0 * s;
    BellValue out;
    out.value = -std::exp(-4.0 * j * a) + std::exp(j * (6.0 * b - 4.0 * a)) +
                2.0 * std::exp(j * (1.5 * c - 4.0 * a));
    out.settings = t_symmetric_family(j);
    return out;
}

BellValue b3_dp_general(const gaussian::GaussianState& s, const DpSettings& settings) {
    if (s.n_modes() != 3) throw InvalidParameter("three-mode state required");
    check_sizes(settings, 3);
    BellValue b;
    b.value = std::abs(klyshko(settings, [&](std::vector<Complex> a) { return e_dp_gaussian(s, a); }));
    b.settings = settings;
    return b;
}

double vlb_offset_residual(const DpSettings& settings) {
    check_sizes(settings, 3);
    double x[3], y[3], xp[3], yp[3];
    for (int k = 0; k < 3; ++k) {
        const Complex u = exchange_quadratures(settings.unprimed[k]);
        const Complex v = exchange_quadratures(settings.primed[k]);
        x[k] = u.real();
        y[k] = u.imag();
        xp[k] = v.real();
        yp[k] = v.imag();
    }
    auto sq = [](double v) { return v * v; };
    return sq(yp[0] + y[1] + y[2]) + sq(x[1] - x[2]) + sq(x[1] - xp[0]) + sq(xp[0] - x[2]) +
           sq(y[0] + yp[1] + y[2]) + sq(xp[1] - x[2]) + sq(xp[1] - x[0]) + sq(x[0] - x[2]) +
           sq(y[0] + y[1] + yp[2]) + sq(x[1] - xp[2]) + sq(x[1] - x[0]) + sq(x[0] - xp[2]);
}

BellValue b2_dp(const gaussian::GaussianState& s, const DpSettings& settings) {
    if (s.n_modes() != 2) throw InvalidParameter("two-mode state required");
    check_sizes(settings, 2);
    BellValue b;
    b.value = std::abs(chsh(settings, [&](std::vector<Complex> a) { return e_dp_gaussian(s, a); }));
    b.settings = settings;
    return b;
}

BellValue b2_dp(const conditional::ConditionalParams& p, const DpSettings& settings) {
    check_sizes(settings, 2);
    const auto w = conditional::two_gaussian_wigner(p);
    BellValue b;
    b.value = std::abs(chsh(settings, [&](std::vector<Complex> a) { return e_dp_conditional(w, a); }));
    b.settings = settings;
    return b;
}

optim::ScanResult optimize_j(const std::function<double(double)>& bell_of_j, double lo, double hi,
                             double tol) {
    return optim::maximize_log(bell_of_j, lo, hi, tol);
}

}  // namespace cvbell::dp
