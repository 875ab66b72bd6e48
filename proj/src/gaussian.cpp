// SPDX-License-Identifier: Apache-2.0
#include "cvbell/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "cvbell/errors.hpp"

namespace cvbell::gaussian {

namespace {

constexpr double kMaxCondition = 1e12;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
}

}  // namespace

GaussianState::GaussianState(Eigen::MatrixXd cov) : cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() == 0 || cov_.rows() % 2 != 0)
        throw InvalidParameter("covariance must be square with even dimension");
    if (!cov_.allFinite()) throw InvalidParameter("covariance has non-finite entries");
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + cov_.cwiseAbs().maxCoeff()))
        throw InvalidParameter("covariance is not symmetric");
    cov_ = 0.5 * (cov_ + cov_.transpose());
    n_modes_ = static_cast<int>(cov_.rows() / 2);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov_);
    const auto& ev = eig.eigenvalues();
    if (ev.minCoeff() <= 0.0) throw NumericalConditioning("covariance is not positive definite");
    if (ev.maxCoeff() / ev.minCoeff() > kMaxCondition)
        throw NumericalConditioning("covariance condition number exceeds 1e12");
    det_ = ev.prod();

    // A pure state's covariance is symplectic, C^-1 = J^T C J, which avoids
    // the cancellation of a numerical inverse at large photon numbers.
    const int n = n_modes_;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    const double scale = cov_.cwiseAbs().maxCoeff();
    if (std::abs(det_ - 1.0) < 1e-6 &&
        (cov_ * j * cov_ - j).cwiseAbs().maxCoeff() < 1e-12 * scale * scale) {
        precision_ = j.transpose() * cov_ * j;
        det_ = 1.0;
    } else {
        precision_ = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
        precision_ = 0.5 * (precision_ + precision_.transpose());
    }
}

GaussianState GaussianState::vacuum(int n_modes) {
    if (n_modes < 1) throw InvalidParameter("n_modes must be positive");
    return GaussianState(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

double GaussianState::quad_form(const Eigen::VectorXd& v) const {
    if (v.size() != cov_.rows()) throw InvalidParameter("point has wrong dimension");
    return v.dot(precision_ * v);
}

GaussianState make_vlb(double r) {
    require_finite(r, "r");
    if (r < 0.0) throw InvalidParameter("r must be non-negative");
    const double c2 = std::cosh(2.0 * r);
    const double s2 = std::sinh(2.0 * r);
    const double R = c2 + s2 / 3.0;
    const double T = c2 - s2 / 3.0;
    const double S = -4.0 / 3.0 * std::cosh(r) * std::sinh(r);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            c(i, j) = (i == j) ? R : S;
            c(3 + i, 3 + j) = (i == j) ? T : -S;
        }
    }
    return GaussianState(c);
}

double vlb_photon_number(double r) {
    const double s = std::sinh(r);
    return 3.0 * s * s;
}

double vlb_squeezing_for(double n) {
    if (!(n >= 0.0)) throw InvalidParameter("photon number must be non-negative");
    return std::asinh(std::sqrt(n / 3.0));
}

GaussianState make_t(const TripartitePhotonNumbers& p) {
    require_finite(p.n2, "n2");
    require_finite(p.n3, "n3");
    require_finite(p.phi2, "phi2");
    require_finite(p.phi3, "phi3");
    if (p.n2 < 0.0 || p.n3 < 0.0) throw InvalidParameter("photon numbers must be non-negative");
    const double n1 = p.n1();
    const double g12 = 2.0 * std::sqrt(p.n2 * (1.0 + n1));
    const double g13 = 2.0 * std::sqrt(p.n3 * (1.0 + n1));
    const double g23 = 2.0 * std::sqrt(p.n2 * p.n3);
    const double A = g12 * std::cos(p.phi2), D = g12 * std::sin(p.phi2);
    const double B = g13 * std::cos(p.phi3), E = g13 * std::sin(p.phi3);
    const double C = g23 * std::cos(p.phi2 - p.phi3), L = g23 * std::sin(p.phi2 - p.phi3);
    const double F = 2.0 * n1 + 1.0, G = 2.0 * p.n2 + 1.0, H = 2.0 * p.n3 + 1.0;

    Eigen::MatrixXd v(6, 6);
    v << F, A, B, 0, -D, -E,
         A, G, C, -D, 0, L,
         B, C, H, -E, -L, 0,
         0, -D, -E, F, -A, -B,
         -D, 0, -L, -A, G, C,
         -E, L, 0, -B, C, H;
    return GaussianState(v);
}

double twb_squeezing_for(double n) {
    if (!(n >= 0.0) || !std::isfinite(n)) throw InvalidParameter("photon number must be non-negative");
    return std::asinh(std::sqrt(n / 2.0));
}

GaussianState make_twb(double n) {
    const double r = twb_squeezing_for(n);
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Eigen::MatrixXd v = c * Eigen::MatrixXd::Identity(4, 4);
    v(0, 1) = v(1, 0) = s;
    v(2, 3) = v(3, 2) = -s;
    return GaussianState(v);
}

TripartitePhotonNumbers coupling_to_photons(const CouplingParams& c) {
    const double g1 = std::abs(c.gamma1);
    const double g2 = std::abs(c.gamma2);
    require_finite(g1, "gamma1");
    require_finite(g2, "gamma2");
    require_finite(c.t, "t");
    if (g2 <= g1) throw UnsupportedRegime("requires |gamma2| > |gamma1|");
    const double omega2 = g2 * g2 - g1 * g1;
    const double omega = std::sqrt(omega2);
    const double cw = std::cos(omega * c.t) - 1.0;
    const double sw = std::sin(omega * c.t);
    TripartitePhotonNumbers p;
    p.n2 = g1 * g1 * g2 * g2 / (omega2 * omega2) * cw * cw;
    p.n3 = g1 * g1 / omega2 * sw * sw;
    return p;
}

double wigner_eval(const GaussianState& s, const Eigen::VectorXd& point) {
    const double q = s.quad_form(point);
    return std::exp(-q) / (std::pow(std::numbers::pi, s.n_modes()) * std::sqrt(s.det()));
}

std::vector<int> quadrature_indices(int n_modes, const std::vector<int>& keep) {
    std::vector<int> idx;
    idx.reserve(2 * keep.size());
    for (int k : keep) idx.push_back(k);
    for (int k : keep) idx.push_back(n_modes + k);
    return idx;
}

GaussianState reduce_state(const GaussianState& s, const std::vector<int>& keep) {
    if (keep.empty()) throw InvalidParameter("keep set is empty");
    std::set<int> seen;
    for (int k : keep) {
        if (k < 0 || k >= s.n_modes()) throw InvalidParameter("mode index out of range");
        if (!seen.insert(k).second) throw InvalidParameter("duplicate mode index");
    }
    const auto idx = quadrature_indices(s.n_modes(), keep);
    const int m = static_cast<int>(idx.size());
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sub(i, j) = s.cov()(idx[i], idx[j]);
    return GaussianState(sub);
}

}  // namespace cvbell::gaussian
