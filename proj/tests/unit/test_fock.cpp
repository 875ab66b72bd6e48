// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "cvbell/bell_dp.hpp"
#include "cvbell/bell_homodyne.hpp"
#include "cvbell/conditional.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/fock.hpp"
#include "helpers.hpp"

using namespace cvbell;
using namespace cvbell::fock;
using testing::kPi;

namespace {

// Partial trace of the last mode of a pure state.
FockDensityOperator trace_last(const FockPureState& s) {
    const int d = s.cutoff;
    const long dim = s.amps.size() / d;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd slice(dim);
    for (int k = 0; k < d; ++k) {
        for (long o = 0; o < dim; ++o) slice[o] = s.amps[o * d + k];
        rho.noalias() += slice * slice.adjoint();
    }
    return {s.n_modes - 1, d, rho / rho.trace().real()};
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("tripartite amplitudes") {
    const auto v = build_t({0.0, 0.0, 0.0, 0.0}, 6);
    CHECK(std::abs(v.amplitude({0, 0, 0}) - 1.0) < 1e-15);
    CHECK(v.norm_squared() == doctest::Approx(1.0));

    const auto s = build_t({1.0, 0.0, 0.0, 0.0}, 30);
    CHECK(std::abs(s.amplitude({1, 1, 0})) == doctest::Approx(0.5));
    CHECK(std::abs(s.amplitude({1, 0, 1})) < 1e-15);
    CHECK(std::abs(s.amplitude({1, 0, 0})) < 1e-15);

    const auto ph = build_t({0.3, 0.4, 0.7, 1.9}, 20);
    const double n1 = 0.7;
    const Complex expect = std::pow(1.0 + n1, -0.5) * std::pow(0.3 / (1.0 + n1), 1.0) *
                           std::pow(0.4 / (1.0 + n1), 0.5) * std::sqrt(3.0) *
                           std::exp(Complex(0.0, -(2.0 * 0.7 + 1.9)));
    CHECK(std::abs(ph.amplitude({3, 2, 1}) - expect) < 1e-14);

    CHECK(build_t({0.5, 0.5, 0.0, 0.0}, 25).norm_squared() >= 1.0 - 1e-6);
}

TEST_CASE("twin beam amplitudes") {
    CHECK(std::abs(build_twb(0.0, 4).amplitude({0, 0}) - 1.0) < 1e-15);
    const auto s = build_twb(0.5, 20);
    CHECK(std::abs(s.amplitude({1, 1})) == doctest::Approx(std::sqrt(0.75) * 0.5));
    CHECK(std::abs(s.amplitude({1, 0})) == 0.0);
    CHECK(build_twb(0.9, 160).norm_squared() >= 1.0 - 1e-6);
}

TEST_CASE("truncation failures suggest a working cutoff") {
    try {
        build_twb(0.9, 40);
        FAIL("expected CutoffTooSmall");
    } catch (const CutoffTooSmall& e) {
        CHECK(e.suggested_cutoff() > 40);
        CHECK(build_twb(0.9, e.suggested_cutoff()).norm_squared() >= 1.0 - 1e-6);
    }
    CHECK_THROWS_AS(build_t({3.0, 3.0, 0.0, 0.0}, 8), CutoffTooSmall);
    CHECK_THROWS_AS(build_twb(1.0, 10), InvalidParameter);
}

TEST_CASE("displacement is unitary and guarded") {
    const auto d = displacement(Complex(0.8, -0.5), 30);
    CHECK((d * d.adjoint() - Eigen::MatrixXcd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(displacement(Complex(2.0, 0.0), 30), PrecisionError);
}

TEST_CASE("displaced parity on vacuum and gaussian states") {
    const FockState vac = vacuum(1, 30);
    CHECK(displaced_parity_expect(vac, {0.0}) == doctest::Approx(1.0));
    CHECK(displaced_parity_expect(vac, {0.5}) == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));

    // Cutoff 30 drops 5e-6 of the norm at these photon numbers.
    const FockState t = build_t({1.0, 1.0, 0.0, 0.0}, 40);
    const auto g = gaussian::make_t({1.0, 1.0, 0.0, 0.0});
    const std::vector<Complex> a{0.1, Complex(0.0, 0.1), 0.0};
    CHECK(std::abs(displaced_parity_expect(t, a) - dp::e_dp_gaussian(g, a)) < 1e-5);

    const FockState tp = build_t({0.3, 0.4, 0.5, -1.2}, 30);
    const auto gp = gaussian::make_t({0.3, 0.4, 0.5, -1.2});
    for (int k = 0; k < 5; ++k) {
        std::vector<Complex> r(3);
        for (auto& z : r) z = Complex(testing::uniform(-0.8, 0.8), testing::uniform(-0.8, 0.8));
        const double e = displaced_parity_expect(tp, r);
        CHECK(std::abs(e - dp::e_dp_gaussian(gp, r)) < 1e-5);
        CHECK(std::abs(e) <= 1.0 + 1e-12);
    }
}

TEST_CASE("doubling the cutoff leaves expectations unchanged") {
    const double x = 0.4;
    const FockState a = build_twb(x, 30), b = build_twb(x, 60);
    const std::vector<Complex> al{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
    CHECK(std::abs(displaced_parity_expect(a, al) - displaced_parity_expect(b, al)) < 1e-6);
    CHECK(std::abs(pseudospin_expect(a, {1.0, 0.4}, {0.2, 0.0}) -
                   pseudospin_expect(b, {1.0, 0.4}, {0.2, 0.0})) < 1e-6);
    CHECK(std::abs(quadrature_orthant_expect(a, 0.3, 0.9) - quadrature_orthant_expect(b, 0.3, 0.9)) <
          1e-6);
}

TEST_CASE("pseudospin expectations") {
    const FockState vac = vacuum(1, 30);
    CHECK(pseudospin_expect(vac, {0.0}, {0.0}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(pseudospin_matrix(0.0, 0.0, 31), InvalidParameter);

    const double x = std::tanh(gaussian::twb_squeezing_for(2.0));
    const FockState twb = build_twb(x, 40);
    CHECK(pseudospin_expect(twb, {kPi / 2, kPi / 2}, {0.0, 0.0}) ==
          doctest::Approx(std::sqrt(8.0) / 3.0).epsilon(1e-9));

    // Each component |p+q, p, q> has even total photon number, so the
    // product of s_z = -(-1)^n over the three modes is -1.
    const FockState t = build_t({0.3, 0.3, 0.0, 0.0}, 30);
    CHECK(pseudospin_expect(t, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-9));

    for (int k = 0; k < 10; ++k) {
        const double e = pseudospin_expect(t, {testing::uniform(0, 2 * kPi), testing::uniform(0, 2 * kPi),
                                               testing::uniform(0, 2 * kPi)},
                                           {testing::uniform(0, 2 * kPi), 0.3, -0.2});
        CHECK(std::abs(e) <= 1.0 + 1e-12);
    }
}

TEST_CASE("on/off conditioning") {
    const auto t = build_t({0.2, 1.0, 0.0, 0.0}, 40);
    const auto none = onoff_condition(t, 2, 0.0);
    CHECK(none.degenerate);
    CHECK(none.probability == 0.0);

    const auto one = onoff_condition(t, 2, 1.0);
    CHECK_FALSE(one.degenerate);
    CHECK(one.probability == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(one.state.matrix(0, 0)) < 1e-15);
    CHECK(one.state.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((one.state.matrix - one.state.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const auto small = onoff_condition(build_t({0.2, 0.3, 0.4, 0.0}, 20), 2, 0.7);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(small.state.matrix, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);

    for (double n3 : {0.1, 0.5, 1.0})
        for (double eta : {0.1, 0.5, 0.8, 1.0}) {
            const conditional::ConditionalParams p{0.2, n3, 0.0, 0.0, eta};
            const auto r = onoff_condition(build_t(p.photons(), 40), 2, eta);
            CHECK(std::abs(r.probability - conditional::p_click(p)) < 1e-9);
        }
}

TEST_CASE("quadrature orthants") {
    const FockState vac = vacuum(2, 20);
    for (double th : {0.0, 0.7, 2.1}) {
        CHECK(std::abs(quadrature_orthant_expect(vac, th, 1.3 - th)) < 1e-12);
    }

    const double n = 1.0;
    const double r = gaussian::twb_squeezing_for(n);
    const FockState twb = build_twb(std::tanh(r), 40);
    CHECK(quadrature_orthant_expect(twb, 0.0, 0.0) ==
          doctest::Approx(2.0 / kPi * std::asin(std::tanh(2.0 * r))).epsilon(1e-6));
    const auto pr = quadrature_orthant_probabilities(twb, 0.4, -0.9);
    CHECK(pr[0] + pr[1] + pr[2] + pr[3] == doctest::Approx(1.0).epsilon(1e-6));
    for (double p : pr) CHECK(p >= -1e-9);

    // Against the arcsine form for a pure and a mixed Gaussian state.
    const auto g = gaussian::make_twb(n);
    for (double th : {0.0, 0.5, 1.4})
        for (double ph : {0.0, -0.8, 2.2})
            CHECK(std::abs(quadrature_orthant_expect(twb, th, ph) - homodyne::e_h_gaussian(g, th, ph)) < 1e-4);

    const gaussian::TripartitePhotonNumbers tp{0.3, 0.2, 0.6, 0.0};
    const FockState mixed = trace_last(build_t(tp, 24));
    const auto gm = gaussian::reduce_state(gaussian::make_t(tp), {0, 1});
    for (double th : {0.0, 0.9})
        for (double ph : {0.0, -0.6, 1.7})
            CHECK(std::abs(quadrature_orthant_expect(mixed, th, ph) - homodyne::e_h_gaussian(gm, th, ph)) < 1e-4);
}

}
