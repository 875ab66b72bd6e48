// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cvbell::optim {

struct ScanResult {
    std::vector<double> arg_max;
    double max_value = 0.0;
    long evaluations = 0;
    std::vector<double> bracket;  // final interval width per coordinate
};

// 256-point scan on [lo, hi] followed by golden-section refinement of the
// best cell. Ties in the scan go to the lowest index.
ScanResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-10, int coarse = 256);

// Same search carried out in ln x; arg_max is reported as x.
ScanResult maximize_log(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-8, int coarse = 256);

// Full grid over [0, 2pi)^dim, then coordinate-wise golden-section passes
// until a pass improves the maximum by less than tol.
ScanResult maximize_angles(const std::function<double(const std::vector<double>&)>& f, int dim,
                           int grid = 32, double tol = 1e-12);

struct AsymptoteRow {
    std::string relation;
    std::string parameter;
    double parameter_value = 0.0;
    double measured = 0.0;   // the optimised combination, e.g. e^{2r} J_opt
    double predicted = 0.0;
    double ratio = 0.0;      // measured / predicted
    double bell_value = 0.0;
};

std::vector<AsymptoteRow> asymptote_relations();

}  // namespace cvbell::optim
