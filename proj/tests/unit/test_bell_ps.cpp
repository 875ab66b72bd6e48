// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "cvbell/bell_ps.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/fock.hpp"
#include "cvbell/optim.hpp"
#include "helpers.hpp"

using namespace cvbell;
using namespace cvbell::ps;
using testing::kPi;

namespace {

const double kSqrt2 = std::sqrt(2.0);

double chsh_ps(double f, double a, double ap, double b, double bp) {
    return e_ps2(f, a, b) + e_ps2(f, a, bp) + e_ps2(f, ap, b) - e_ps2(f, ap, bp);
}

PsSettings random_ps3() {
    PsSettings s;
    for (int k = 0; k < 3; ++k) {
        s.thetas.push_back(testing::uniform(0, 2 * kPi));
        s.thetas_primed.push_back(testing::uniform(0, 2 * kPi));
        s.phis.push_back(testing::uniform(0, 2 * kPi));
        s.phis_primed.push_back(testing::uniform(0, 2 * kPi));
    }
    return s;
}

}  // namespace

TEST_SUITE("bell_ps") {

TEST_CASE("series coefficients: limits") {
    const auto z = coeffs_t_series(0.0, 0.0);
    CHECK(z.c1 == 0.0);
    CHECK(z.c2 == 0.0);
    CHECK(z.c3 == 0.0);

    const auto big = coeffs_t_series(100.0, 100.0);
    for (double c : {big.c1, big.c2, big.c3}) CHECK(std::abs(std::abs(c) - 0.5) < 0.02);

    const auto deg = coeffs_t_series(10.0, 1e-3);
    CHECK(std::abs(deg.c3) > 0.99);
    CHECK(std::abs(deg.c1) < 0.05);
    CHECK(std::abs(deg.c2) < 0.05);

    CHECK(big.c1 <= 0.0);
    CHECK(big.c2 >= 0.0);
    CHECK(big.c3 >= 0.0);
}

TEST_CASE("series coefficients against the Fock oracle") {
    // The oracle uses s_z = +1 on odd photon numbers, which flips every
    // correlator with one s_z factor; compare magnitudes and pin the flip.
    for (auto [n2, n3] : {std::pair{0.3, 0.3}, std::pair{0.5, 0.2}, std::pair{0.1, 0.9}}) {
        const auto c = coeffs_t_series(n2, n3);
        const fock::FockState t = fock::build_t({n2, n3, 0.0, 0.0}, 30);
        const double o1 = fock::pseudospin_expect(t, {0.0, kPi / 2, kPi / 2}, {0.0, 0.0, 0.0});
        const double o2 = fock::pseudospin_expect(t, {kPi / 2, 0.0, kPi / 2}, {0.0, 0.0, 0.0});
        const double o3 = fock::pseudospin_expect(t, {kPi / 2, kPi / 2, 0.0}, {0.0, 0.0, 0.0});
        CHECK(std::abs(std::abs(c.c1) - std::abs(o1)) < 1e-5);
        CHECK(std::abs(std::abs(c.c2) - std::abs(o2)) < 1e-5);
        CHECK(std::abs(std::abs(c.c3) - std::abs(o3)) < 1e-5);
        CHECK(o1 == doctest::Approx(-c.c1).epsilon(1e-6));
        CHECK(o2 == doctest::Approx(-c.c2).epsilon(1e-6));
        CHECK(o3 == doctest::Approx(-c.c3).epsilon(1e-6));
    }
}

TEST_CASE("series is stable in tol") {
    for (auto [n2, n3] : {std::pair{1.0, 1.0}, std::pair{20.0, 5.0}}) {
        const auto a = coeffs_t_series(n2, n3, 1e-8);
        const auto b = coeffs_t_series(n2, n3, 5e-9);
        CHECK(std::abs(a.c1 - b.c1) < 1e-8);
        CHECK(std::abs(a.c2 - b.c2) < 1e-8);
        CHECK(std::abs(a.c3 - b.c3) < 1e-8);
    }
    CHECK_THROWS_AS(coeffs_t_series(1.0, 1.0, 0.0), InvalidParameter);
    CHECK_THROWS_AS(coeffs_t_series(-1.0, 1.0), InvalidParameter);
}

TEST_CASE("three-party correlator") {
    const PsCoefficients c{-0.3, 0.4, 0.5};
    CHECK(e_ps3(c, {0.0, 0.0, 0.0}, kPresetAzimuths) == 1.0);
    for (int k = 0; k < 200; ++k) {
        const auto s = random_ps3();
        CHECK(std::abs(e_ps3(c, s)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("three-party maximum: extremes") {
    CHECK(b3_ps_max({1.0, 1.0, 1.0}).value == doctest::Approx(4.0).epsilon(1e-6 / 4));
    CHECK(b3_ps_max({0.0, 0.0, 0.0}).value == doctest::Approx(2.0).epsilon(1e-9));
    const auto b = b3_ps_max({0.4, 0.6, 0.6});
    const auto& s = std::get<PsSettings>(b.settings);
    CHECK(b3_ps_eval(tabulated_pattern({0.4, 0.6, 0.6}), s) == doctest::Approx(b.value));
}

TEST_CASE("three-party maximum against a dense grid") {
    // Peak placed on a node of the 128-point grid (theta_1 = 0 is optimal when c = 0).
    const PsCoefficients mags{0.0, 0.0, 0.0};
    const auto c = tabulated_pattern(mags);
    double best = 0.0;
    const int g = 128;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) {
                PsSettings s;
                const double h = 2 * kPi / g;
                s.thetas = {0.0, i * h, j * h};
                s.thetas_primed = {kPi, 0.0, k * h};
                s.phis = {0.0, kPi, kPi};
                s.phis_primed = s.phis;
                best = std::max(best, b3_ps_eval(c, s));
            }
    CHECK(std::abs(b3_ps_max(mags).value - best) < 1e-4);

    // Off-node peak: a coarser full grid can only fall short of the refined maximum.
    const PsCoefficients half{0.5, 0.5, 0.5};
    const auto ch = tabulated_pattern(half);
    const double refined = b3_ps_max(half).value;
    double coarse = 0.0;
    const int m = 24;
    const double h = 2 * kPi / m;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c2 = 0; c2 < m; ++c2)
                for (int d = 0; d < m; ++d)
                    for (int e = 0; e < m; e += 2) {
                        PsSettings s;
                        s.thetas = {e * h, a * h, c2 * h};
                        s.thetas_primed = {e * h + kPi / 2, b * h, d * h};
                        s.phis = {0.0, kPi, kPi};
                        s.phis_primed = s.phis;
                        coarse = std::max(coarse, b3_ps_eval(ch, s));
                    }
    CHECK(coarse <= refined + 1e-9);
    CHECK(coarse >= refined - 0.1);
}

TEST_CASE("three-party maxima per state") {
    CHECK(b3_ps(100.0, 100.0, Representation::S_REP).value == doctest::Approx(2.63).epsilon(0.02 / 2.63));
    CHECK(b3_ps(2000.0, 1e-6, Representation::S_REP).value ==
          doctest::Approx(2.0 * kSqrt2).epsilon(0.01 / 2.83));

    double best = 0.0, at = 0.0;
    for (double n = 0.2; n <= 4.0; n += 0.05) {
        const double v = b3_ps(n / 4, n / 4, Representation::PI_REP).value;
        if (v > best) best = v, at = n;
    }
    CHECK(best == doctest::Approx(2.22).epsilon(0.02 / 2.22));
    CHECK(at == doctest::Approx(1.0).epsilon(0.5));
    CHECK_THROWS_AS(b3_ps(0.3, 0.2, Representation::PI_REP), UnsupportedRegime);
}

TEST_CASE("parity-representation coefficients") {
    const auto z = coeffs_t_pi(0.0);
    CHECK(z.c1 == 0.0);
    CHECK(z.c2 == 0.0);
    const auto one = coeffs_t_pi(1.0);
    CHECK(one.c2 == doctest::Approx(1.0 / 3.0));
    CHECK(one.c3 == one.c2);
    CHECK(one.c1 == doctest::Approx(2.0 * std::atan(1.0 / (2.0 * kSqrt2)) / (2.0 * kPi)));

    // Phase-space quadrature of the parity kernels on the Gaussian Wigner function.
    const auto g = gaussian::make_t({0.25, 0.25, 0.0, 0.0});
    using fock::PiAxis;
    const double q2 = fock::pi_correlator_quadrature(g, {PiAxis::X, PiAxis::Z, PiAxis::X});
    const double q3 = fock::pi_correlator_quadrature(g, {PiAxis::X, PiAxis::X, PiAxis::Z});
    const double q1 = fock::pi_correlator_quadrature(g, {PiAxis::Z, PiAxis::X, PiAxis::X});
    CHECK(std::abs(std::abs(q2) - one.c2) < 1e-4);
    CHECK(std::abs(std::abs(q3) - one.c3) < 1e-4);
    CHECK(std::abs(std::abs(q1) - one.c1) < 1e-4);
    // All-Z is the parity, +1 on a pure Gaussian in the Wigner normalisation.
    CHECK(std::abs(fock::pi_correlator_quadrature(g, {PiAxis::Z, PiAxis::Z, PiAxis::Z})) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vlb parity-representation coefficients") {
    CHECK(coeffs_vlb_pi(0.0).c1 == 0.0);
    double best = 0.0, at = 0.0;
    for (double r = 0.05; r <= 1.5; r += 0.01) {
        const double m = std::abs(coeffs_vlb_pi(r).c1);
        if (m > best) best = m, at = r;
    }
    CHECK(at == doctest::Approx(0.42).epsilon(0.1));
    const auto b = optim::maximize_scalar([](double r) { return b3_ps_vlb(r).value; }, 0.1, 1.0, 1e-6, 32);
    CHECK(b.max_value == doctest::Approx(2.09).epsilon(0.02 / 2.09));
    CHECK(b.arg_max[0] == doctest::Approx(0.42).epsilon(0.1));
}

TEST_CASE("twin-beam f") {
    CHECK(f_twb(0.0) == 0.0);
    CHECK(f_twb(3.0) == doctest::Approx(std::sqrt(15.0) / 4.0));
    double prev = -1.0;
    for (double n = 0.0; n < 200.0; n += 0.5) {
        const double f = f_twb(n);
        CHECK(f >= prev);
        CHECK(f <= 1.0);
        prev = f;
    }
    CHECK(f_twb(1e8) == doctest::Approx(1.0).epsilon(1e-12));
    for (double n : {0.5, 2.0, 4.0}) {
        const double x = std::tanh(gaussian::twb_squeezing_for(n));
        const fock::FockState s = fock::build_twb(x, 60);
        CHECK(std::abs(fock::pseudospin_expect(s, {kPi / 2, kPi / 2}, {0.0, 0.0}) - f_twb(n)) < 1e-6);
    }
}

TEST_CASE("conditional and traced f") {
    CHECK(f_traced({0.0, 0.4, 0.0, 0.0, 0.8}) == 0.0);
    CHECK(f_conditional({0.0, 0.4, 0.0, 0.0, 0.8}) == 0.0);
    CHECK_THROWS_AS(f_conditional({1.0, 0.4, 0.0, 0.0, 0.0}), UndefinedState);

    double prev1 = 0.0, prevt = 0.0;
    for (double n = 0.1; n <= 10.0 + 1e-9; n += 0.1) {
        const double n2 = n / 2.0 - 0.1;
        if (n2 <= 0.0) continue;
        const conditional::ConditionalParams p{n2, 0.1, 0.0, 0.0, 0.8};
        const double f1 = f_conditional(p), ft = f_traced(p);
        CHECK(f1 >= ft);
        CHECK(f1 <= 1.0);
        CHECK(f1 >= prev1 - 1e-12);
        CHECK(ft >= prevt - 1e-12);
        prev1 = f1;
        prevt = ft;
    }
}

TEST_CASE("traced f reduces to the twin beam") {
    for (double n2 : {0.5, 1.0, 3.0})
        CHECK(std::abs(f_traced({n2, 1e-5, 0.0, 0.0, 0.8}) - f_twb(2.0 * n2)) < 0.01);
}

TEST_CASE("conditional and traced f against the Fock oracle") {
    // f_1 pairs the sum over k with a photon-added first mode, so it is the
    // sum of <s_x s_x> and the same correlator with mode 1 paired (2k+1, 2k+2).
    const conditional::ConditionalParams p{0.4, 0.3, 0.0, 0.0, 0.8};
    const auto t = fock::build_t(p.photons(), 30);
    const fock::FockState rho = fock::onoff_condition(t, 2, p.eta).state;
    const double direct = fock::pseudospin_expect(rho, {kPi / 2, kPi / 2}, {0.0, 0.0});
    const double shifted = fock::pseudospin_expect(rho, {kPi / 2, kPi / 2}, {0.0, 0.0}, {true, false});
    CHECK(std::abs(f_conditional(p) - (direct + shifted)) < 1e-5);

    // The traced series coincides with the third tripartite coefficient,
    // which the oracle pins above.
    CHECK(f_traced(p) == doctest::Approx(coeffs_t_series(p.n2, p.n3).c3).epsilon(1e-12));
}

TEST_CASE("two-party maximum from f") {
    CHECK(b2_ps_from_f(0.0).value == 2.0);
    CHECK(b2_ps_from_f(1.0).value == 2.0 * kSqrt2);
    double prev = 0.0;
    for (double f = 0.0; f <= 1.0; f += 0.01) {
        const double v = b2_ps_from_f(f).value;
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(b2_ps_from_f(1.5), InvalidParameter);

    const double f = 0.7;
    const auto b = b2_ps_from_f(f);
    const auto& s = std::get<PsSettings>(b.settings);
    CHECK(chsh_ps(f, s.thetas[0], s.thetas_primed[0], s.thetas[1], s.thetas_primed[1]) ==
          doctest::Approx(b.value).epsilon(1e-12));
    const auto grid = optim::maximize_angles(
        [&](const std::vector<double>& t) { return chsh_ps(f, t[0], t[1], t[2], t[3]); }, 4, 32);
    CHECK(std::abs(grid.max_value - b.value) < 1e-6);
}

TEST_CASE("quantum bounds over random settings") {
    for (const PsCoefficients c : {coeffs_t_series(0.7, 0.4), coeffs_t_series(50.0, 50.0), coeffs_t_pi(1.0),
                                   coeffs_vlb_pi(0.42), PsCoefficients{-1.0, 1.0, 1.0}})
        for (int k = 0; k < 2000; ++k) CHECK(b3_ps_eval(c, random_ps3()) <= 4.0 + 1e-9);
    for (int k = 0; k < 2000; ++k) {
        const double f = testing::uniform(0.0, 1.0);
        CHECK(std::abs(chsh_ps(f, testing::uniform(0, 2 * kPi), testing::uniform(0, 2 * kPi),
                               testing::uniform(0, 2 * kPi), testing::uniform(0, 2 * kPi))) <=
              2.0 * kSqrt2 + 1e-9);
    }
}

}
