// SPDX-License-Identifier: Apache-2.0
#include "cvbell/conditional.hpp"

#include <cmath>
#include <numbers>

#include "cvbell/errors.hpp"

namespace cvbell::conditional {

namespace {

const std::vector<int> kKept = {0, 1};

Eigen::Matrix4d restrict(const Eigen::MatrixXd& m6) {
    const auto idx = gaussian::quadrature_indices(3, kKept);
    Eigen::Matrix4d out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = m6(idx[i], idx[j]);
    return out;
}

}  // namespace

void ConditionalParams::validate() const {
    if (!(n2 >= 0.0) || !(n3 >= 0.0) || !std::isfinite(n2) || !std::isfinite(n3))
        throw InvalidParameter("photon numbers must be finite and non-negative");
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidParameter("eta must lie in [0, 1]");
}

double p_click(const ConditionalParams& p) {
    p.validate();
    return p.eta * p.n3 / (1.0 + p.eta * p.n3);
}

TwoGaussianWigner two_gaussian_wigner(const ConditionalParams& p) {
    p.validate();
    if (p.eta == 0.0) throw UndefinedState("eta = 0: the detector never clicks");
    if (p.n3 == 0.0) throw UndefinedState("n3 = 0: the detector never clicks");
    const auto t = gaussian::make_t(p.photons());
    const Eigen::MatrixXd& v = t.cov();
    Eigen::MatrixXd d = v;
    const double extra = (2.0 - p.eta) / p.eta;
    d(2, 2) += extra;
    d(5, 5) += extra;

    const Eigen::Matrix4d vr = restrict(v);
    const Eigen::Matrix4d dinv_r = restrict(d.llt().solve(Eigen::MatrixXd::Identity(6, 6)));

    TwoGaussianWigner w;
    w.norm_a = vr.determinant();
    w.norm_b = d.determinant();
    w.quad_form_a = vr.inverse();
    w.quad_form_b = dinv_r;
    const double pre = (1.0 + p.eta * p.n3) / (4.0 * p.eta * p.n3);
    const double c = 4.0 / (std::numbers::pi * std::numbers::pi);
    w.weight_a = pre * c / std::sqrt(w.norm_a);
    w.weight_b = -pre * c * 2.0 / (p.eta * std::sqrt(w.norm_b));
    return w;
}

double w1_eval(const ConditionalParams& p, const Eigen::Vector4d& point) {
    return two_gaussian_wigner(p)(point);
}

gaussian::GaussianState w_traced(const ConditionalParams& p) {
    p.validate();
    return gaussian::reduce_state(gaussian::make_t(p.photons()), kKept);
}

}  // namespace cvbell::conditional
