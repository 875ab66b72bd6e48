// SPDX-License-Identifier: Apache-2.0
#include "cvbell/bell_ps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cvbell/errors.hpp"
#include "cvbell/optim.hpp"

namespace cvbell::ps {

namespace {

constexpr long kMaxBlocks = 1000000;

class LogFactorial {
public:
    double operator()(int k) {
        while (static_cast<int>(table_.size()) <= k) table_.push_back(std::lgamma(table_.size() + 1.0));
        return table_[k];
    }

private:
    std::vector<double> table_;
};

double safe_log(double v) { return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

struct TSums {
    double s1 = 0.0;  // weight (2m+1)/sqrt((2s+1)(2t+1))
    double s2 = 0.0;  // weight sqrt((2m+1)/(2t+1))
    double s3 = 0.0;  // weight sqrt((2m+1)/(2s+1))
};

// sum over s, t of a^{2s} b^{2t} (2m)!/((2s)!(2t)!) times the weights above,
// grouped by m = s + t. Every block is majorised by (2m+1) q^{2m}, q = a + b.
TSums t_sums(double a, double b, double prefactor, double tol) {
    TSums out;
    const double la = safe_log(a), lb = safe_log(b);
    const double q2 = (a + b) * (a + b);
    LogFactorial lf;
    for (long m = 0; m < kMaxBlocks; ++m) {
        // Terms are log-concave in t; stop once past the peak and negligible.
        double peak = 0.0, prev = 0.0;
        for (long t = 0; t <= m; ++t) {
            const long s = m - t;
            if ((s > 0 && a == 0.0) || (t > 0 && b == 0.0)) continue;
            const double base = std::exp(lf(2 * m) - lf(2 * s) - lf(2 * t) + (s > 0 ? 2.0 * s * la : 0.0) +
                                         (t > 0 ? 2.0 * t * lb : 0.0));
            if (base < prev && base < 1e-18 * peak) break;
            peak = std::max(peak, base);
            prev = base;
            const double w = 2.0 * m + 1.0;
            out.s1 += base * w / std::sqrt((2.0 * s + 1.0) * (2.0 * t + 1.0));
            out.s2 += base * std::sqrt(w / (2.0 * t + 1.0));
            out.s3 += base * std::sqrt(w / (2.0 * s + 1.0));
        }
        const double next = (2.0 * m + 3.0) * std::pow(q2, m + 1.0);
        const double rho = (2.0 * m + 5.0) / (2.0 * m + 3.0) * q2;
        if (rho < 1.0 && prefactor * next / (1.0 - rho) < 0.1 * tol) return out;
    }
    throw PrecisionError("pseudospin series did not converge within the iteration cap");
}

void require_photons(double n2, double n3) {
    if (!(n2 >= 0.0) || !(n3 >= 0.0) || !std::isfinite(n2) || !std::isfinite(n3))
        throw InvalidParameter("photon numbers must be finite and non-negative");
}

void require_tol(double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
}

}  // namespace

PsCoefficients coeffs_t_series(double n2, double n3, double tol) {
    require_photons(n2, n3);
    require_tol(tol);
    const double n1 = n2 + n3;
    if (n1 == 0.0) return {};
    const double a = n2 / (1.0 + n1), b = n3 / (1.0 + n1);
    const double p1 = 2.0 * std::sqrt(n2 * n3) / ((1.0 + n1) * (1.0 + n1));
    const double p2 = 2.0 * std::sqrt(n3) / std::pow(1.0 + n1, 1.5);
    const double p3 = 2.0 * std::sqrt(n2) / std::pow(1.0 + n1, 1.5);
    const auto s = t_sums(a, b, std::max({p1, p2, p3}), tol);
    return {-p1 * s.s1, p2 * s.s2, p3 * s.s3};
}

PsCoefficients coeffs_t_pi(double n) {
    if (!(n >= 0.0)) throw InvalidParameter("photon number must be non-negative");
    const double pi = std::numbers::pi;
    const double c1 = 2.0 * std::atan(n / (2.0 * std::sqrt(1.0 + n))) / (pi * (1.0 + n));
    const double c23 = 2.0 * std::atan(std::sqrt(n)) / (pi * (1.0 + 0.5 * n));
    return {c1, c23, c23};
}

PsCoefficients coeffs_vlb_pi(double r) {
    if (!(r >= 0.0)) throw InvalidParameter("r must be non-negative");
    const double arg = 4.0 * std::cosh(r) * std::sinh(r) / std::sqrt(3.0 * (2.0 + std::exp(4.0 * r)));
    const double c = -6.0 * std::atan(arg) / (std::numbers::pi * std::sqrt(5.0 + 4.0 * std::cosh(4.0 * r)));
    return {c, c, c};
}

PsCoefficients tabulated_pattern(const PsCoefficients& c) {
    return {-std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
}

double e_ps3(const PsCoefficients& c, const std::array<double, 3>& th, const Azimuths& ph) {
    const double c1 = std::cos(th[0]), c2 = std::cos(th[1]), c3 = std::cos(th[2]);
    const double s1 = std::sin(th[0]), s2 = std::sin(th[1]), s3 = std::sin(th[2]);
    return c1 * c2 * c3 +
           c.c1 * c1 * s2 * s3 * (std::cos(ph.phi2) * std::cos(ph.phi3) + std::sin(ph.phi2) * std::sin(ph.phi3)) +
           c.c2 * c2 * s1 * s3 * (std::cos(ph.phi1) * std::cos(ph.phi3) - std::sin(ph.phi1) * std::sin(ph.phi3)) +
           c.c3 * c3 * s1 * s2 * (std::cos(ph.phi1) * std::cos(ph.phi2) + std::sin(ph.phi1) * std::sin(ph.phi2));
}

double e_ps3(const PsCoefficients& c, const PsSettings& s) {
    if (s.thetas.size() != 3 || s.phis.size() != 3) throw InvalidParameter("three-mode settings required");
    return e_ps3(c, {s.thetas[0], s.thetas[1], s.thetas[2]}, {s.phis[0], s.phis[1], s.phis[2]});
}

double b3_ps_eval(const PsCoefficients& c, const PsSettings& s) {
    if (s.thetas.size() != 3 || s.phis.size() != 3 || s.thetas_primed.size() != 3 ||
        s.phis_primed.size() != 3)
        throw InvalidParameter("three-mode settings required");
    auto e = [&](int p1, int p2, int p3) {
        const int pr[3] = {p1, p2, p3};
        std::array<double, 3> th;
        Azimuths ph;
        double* phs[3] = {&ph.phi1, &ph.phi2, &ph.phi3};
        for (int k = 0; k < 3; ++k) {
            th[k] = pr[k] ? s.thetas_primed[k] : s.thetas[k];
            *phs[k] = pr[k] ? s.phis_primed[k] : s.phis[k];
        }
        return e_ps3(c, th, ph);
    };
    return std::abs(e(0, 0, 1) + e(0, 1, 0) + e(1, 0, 0) - e(1, 1, 1));
}

BellValue b3_ps_max(const PsCoefficients& magnitudes, const Azimuths& ph, int grid) {
    const PsCoefficients c = tabulated_pattern(magnitudes);
    const double k1 = c.c1 * std::cos(ph.phi2 - ph.phi3);
    const double k2 = c.c2 * std::cos(ph.phi1 + ph.phi3);
    const double k3 = c.c3 * std::cos(ph.phi1 - ph.phi2);
    // E = cos t1 P(t2, t3) + sin t1 Q(t2, t3)
    auto P = [&](double t2, double t3) {
        return std::cos(t2) * std::cos(t3) + k1 * std::sin(t2) * std::sin(t3);
    };
    auto Q = [&](double t2, double t3) {
        return k2 * std::cos(t2) * std::sin(t3) + k3 * std::sin(t2) * std::cos(t3);
    };
    // t = (t2, t2', t3, t3'); the optimal t1, t1' align (cos, sin) with (P, Q).
    auto reduced = [&](const std::vector<double>& t) {
        double c[4], s[4];
        for (int i = 0; i < 4; ++i) {
            c[i] = std::cos(t[i]);
            s[i] = std::sin(t[i]);
        }
        auto p = [&](int i, int j) { return c[i] * c[j] + k1 * s[i] * s[j]; };
        auto q = [&](int i, int j) { return k2 * c[i] * s[j] + k3 * s[i] * c[j]; };
        const double u = p(0, 3) + p(1, 2);
        const double v = q(0, 3) + q(1, 2);
        const double up = p(0, 2) - p(1, 3);
        const double vp = q(0, 2) - q(1, 3);
        return std::sqrt(u * u + v * v) + std::sqrt(up * up + vp * vp);
    };
    const auto res = optim::maximize_angles(reduced, 4, grid);
    const auto& t = res.arg_max;

    PsSettings s;
    const double th1 = std::atan2(Q(t[0], t[3]) + Q(t[1], t[2]), P(t[0], t[3]) + P(t[1], t[2]));
    const double th1p = std::atan2(Q(t[0], t[2]) - Q(t[1], t[3]), P(t[0], t[2]) - P(t[1], t[3]));
    s.thetas = {th1, t[0], t[2]};
    s.thetas_primed = {th1p, t[1], t[3]};
    s.phis = {ph.phi1, ph.phi2, ph.phi3};
    s.phis_primed = s.phis;

    BellValue b;
    b.value = b3_ps_eval(c, s);
    b.settings = s;
    return b;
}

BellValue b3_ps(double n2, double n3, Representation rep, double tol) {
    require_photons(n2, n3);
    if (rep == Representation::S_REP)
        return b3_ps_max(coeffs_t_series(n2, n3, tol), kPresetAzimuths);
    if (std::abs(n2 - n3) > 1e-12 * (1.0 + n2 + n3))
        throw UnsupportedRegime("parity-representation coefficients assume n2 == n3");
    auto b = b3_ps_max(coeffs_t_pi(2.0 * (n2 + n3)), kZeroAzimuths);
    std::get<PsSettings>(b.settings).representation = Representation::PI_REP;
    return b;
}

BellValue b3_ps_vlb(double r) {
    auto b = b3_ps_max(coeffs_vlb_pi(r), kZeroAzimuths);
    std::get<PsSettings>(b.settings).representation = Representation::PI_REP;
    return b;
}

double f_twb(double n) {
    if (!(n >= 0.0)) throw InvalidParameter("photon number must be non-negative");
    return std::sqrt(n * (n + 2.0)) / (1.0 + n);
}

double f_traced(const conditional::ConditionalParams& p, double tol) {
    p.validate();
    require_tol(tol);
    const double n1 = p.n2 + p.n3;
    if (p.n2 == 0.0) return 0.0;
    const double a = p.n2 / (1.0 + n1), b = p.n3 / (1.0 + n1);
    const double pre = 2.0 * std::sqrt(a) / (1.0 + n1);
    return pre * t_sums(a, b, pre, tol).s3;
}

double f_conditional(const conditional::ConditionalParams& p, double tol) {
    p.validate();
    require_tol(tol);
    if (p.eta == 0.0 || p.n3 == 0.0) throw UndefinedState("the detector never clicks");
    if (p.n2 == 0.0) return 0.0;
    const double n1 = p.n2 + p.n3;
    const double a = p.n2 / (1.0 + n1), b = p.n3 / (1.0 + n1), q = a + b;
    const double la = std::log(a), lb = std::log(b);
    const double pre = 2.0 * std::sqrt(a) * (1.0 + p.n3 * p.eta) / (p.n3 * (1.0 + n1) * p.eta);
    LogFactorial lf;
    double sum = 0.0;
    // Group by M = 2k + p; the p >= 1 part of block M is below sqrt(M+1) M b q^{M-1}.
    for (long M = 1; M < kMaxBlocks; ++M) {
        for (long k = 0; 2 * k < M; ++k) {
            const long pp = M - 2 * k;
            const double base = std::exp(lf(M) - lf(2 * k) - lf(pp) + 2.0 * k * la + pp * lb);
            sum += base * std::sqrt((M + 1.0) / (2.0 * k + 1.0)) * (1.0 - std::pow(1.0 - p.eta, pp));
        }
        const double m1 = M + 1.0;
        const double next = std::sqrt(m1 + 1.0) * m1 * b * std::pow(q, M);
        const double rho = std::sqrt((m1 + 2.0) / (m1 + 1.0)) * (m1 + 1.0) / m1 * q;
        if (rho < 1.0 && pre * next / (1.0 - rho) < 0.1 * tol) return pre * sum;
    }
    throw PrecisionError("conditional pseudospin series did not converge within the iteration cap");
}

double e_ps2(double f, double theta1, double theta2) {
    return std::cos(theta1) * std::cos(theta2) + f * std::sin(theta1) * std::sin(theta2);
}

BellValue b2_ps_from_f(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidParameter("f must lie in [0, 1]");
    const double t = std::atan(f);
    PsSettings s;
    s.thetas = {0.0, t};
    s.thetas_primed = {std::numbers::pi / 2.0, -t};
    s.phis = {0.0, 0.0};
    s.phis_primed = {0.0, 0.0};
    BellValue b;
    b.value = 2.0 * std::sqrt(1.0 + f * f);
    b.settings = s;
    return b;
}

}  // namespace cvbell::ps
