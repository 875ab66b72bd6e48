// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "cvbell/gaussian.hpp"

// Two-mode state left on modes 1 and 2 after an ON/OFF click on mode 3
// of the tripartite state.
namespace cvbell::conditional {

struct ConditionalParams {
    double n2 = 0.0;
    double n3 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;
    double eta = 1.0;

    gaussian::TripartitePhotonNumbers photons() const { return {n2, n3, phi2, phi3}; }
    void validate() const;
};

// W1(v) = weight_a exp(-v A v) + weight_b exp(-v B v), v = (x1, x2, y1, y2).
struct TwoGaussianWigner {
    double weight_a = 0.0;
    double weight_b = 0.0;
    Eigen::Matrix4d quad_form_a;  // (V')^-1: restrict, then invert
    Eigen::Matrix4d quad_form_b;  // (D^-1)': invert, then restrict
    double norm_a = 1.0;          // det V'
    double norm_b = 1.0;          // det D, 6x6

    double operator()(const Eigen::Vector4d& v) const {
        return weight_a * std::exp(-v.dot(quad_form_a * v)) +
               weight_b * std::exp(-v.dot(quad_form_b * v));
    }
};

double p_click(const ConditionalParams& p);

TwoGaussianWigner two_gaussian_wigner(const ConditionalParams& p);

double w1_eval(const ConditionalParams& p, const Eigen::Vector4d& point);

gaussian::GaussianState w_traced(const ConditionalParams& p);

}  // namespace cvbell::conditional
