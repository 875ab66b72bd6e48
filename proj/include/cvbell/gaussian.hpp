// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cvbell::gaussian {

// Zero-mean Gaussian state of n modes. The covariance is ordered
// (x1..xn, y1..yn) and normalised so that the vacuum is the identity:
//   W(v) = pi^-n det(C)^-1/2 exp(-v^T C^-1 v).
// The inverse and determinant are cached at construction.
class GaussianState {
public:
    explicit GaussianState(Eigen::MatrixXd cov);

    static GaussianState vacuum(int n_modes);

    int n_modes() const { return n_modes_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    const Eigen::MatrixXd& precision() const { return precision_; }
    double det() const { return det_; }

    // v^T C^-1 v
    double quad_form(const Eigen::VectorXd& v) const;

private:
    int n_modes_;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd precision_;
    double det_;
};

struct CouplingParams {
    std::complex<double> gamma1;
    std::complex<double> gamma2;
    double t = 0.0;
};

struct TripartitePhotonNumbers {
    double n2 = 0.0;
    double n3 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;

    double n1() const { return n2 + n3; }
    double total() const { return 2.0 * (n2 + n3); }
};

GaussianState make_vlb(double r);
double vlb_photon_number(double r);
double vlb_squeezing_for(double n);

GaussianState make_t(const TripartitePhotonNumbers& p);

// Two-mode squeezed vacuum with total photon number n = 2 sinh^2 r.
GaussianState make_twb(double n);
double twb_squeezing_for(double n);

TripartitePhotonNumbers coupling_to_photons(const CouplingParams& c);

double wigner_eval(const GaussianState& s, const Eigen::VectorXd& point);

// keep holds zero-based mode indices, in the order they appear in the result.
GaussianState reduce_state(const GaussianState& s, const std::vector<int>& keep);

// Rows/columns of the (x..., y...) layout that belong to the kept modes.
std::vector<int> quadrature_indices(int n_modes, const std::vector<int>& keep);

}  // namespace cvbell::gaussian
