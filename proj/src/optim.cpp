// SPDX-License-Identifier: Apache-2.0
#include "cvbell/optim.hpp"

#include <cmath>
#include <numbers>

#include "cvbell/errors.hpp"

namespace cvbell::optim {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

double checked(double v) {
    if (!std::isfinite(v)) throw InvalidFunction("objective returned a non-finite value");
    return v;
}

// Golden-section maximisation on [a, b]; returns (x, f(x)).
std::pair<double, double> golden(const std::function<double(double)>& f, double a, double b,
                                 double tol, long& evals) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = checked(f(c));
    double fd = checked(f(d));
    evals += 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = checked(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = checked(f(d));
        }
        ++evals;
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

ScanResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                           double tol, int coarse) {
    if (!(lo < hi)) throw InvalidParameter("maximize_scalar needs lo < hi");
    if (coarse < 3) throw InvalidParameter("coarse scan needs at least 3 points");
    const double h = (hi - lo) / (coarse - 1);
    ScanResult res;
    int best = 0;
    double best_val = -INFINITY;
    for (int i = 0; i < coarse; ++i) {
        const double v = checked(f(lo + i * h));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    res.evaluations = coarse;
    const double a = lo + std::max(best - 1, 0) * h;
    const double b = lo + std::min(best + 1, coarse - 1) * h;
    auto [x, v] = golden(f, a, b, tol, res.evaluations);
    if (v >= best_val) {
        res.arg_max = {x};
        res.max_value = v;
    } else {
        res.arg_max = {lo + best * h};
        res.max_value = best_val;
    }
    res.bracket = {tol};
    return res;
}

ScanResult maximize_log(const std::function<double(double)>& f, double lo, double hi, double tol,
                        int coarse) {
    if (!(lo > 0.0)) throw InvalidParameter("log search needs a positive lower bound");
    auto g = [&](double t) { return f(std::exp(t)); };
    auto res = maximize_scalar(g, std::log(lo), std::log(hi), tol, coarse);
    res.arg_max[0] = std::exp(res.arg_max[0]);
    return res;
}

ScanResult maximize_angles(const std::function<double(const std::vector<double>&)>& f, int dim,
                           int grid, double tol) {
    if (dim < 1 || dim > 6) throw InvalidParameter("maximize_angles supports 1..6 angles");
    if (grid < 2) throw InvalidParameter("grid needs at least 2 points per axis");
    if (std::pow(static_cast<double>(grid), dim) > 2.0e9)
        throw InvalidParameter("angle grid too large");
    const double h = 2.0 * std::numbers::pi / grid;

    ScanResult res;
    std::vector<int> idx(dim, 0);
    std::vector<double> th(dim, 0.0), best(dim, 0.0);
    double best_val = -INFINITY;
    while (true) {
        for (int i = 0; i < dim; ++i) th[i] = idx[i] * h;
        const double v = checked(f(th));
        ++res.evaluations;
        if (v > best_val) {
            best_val = v;
            best = th;
        }
        int pos = dim - 1;
        while (pos >= 0 && ++idx[pos] == grid) idx[pos--] = 0;
        if (pos < 0) break;
    }

    double width = h;
    for (int pass = 0; pass < 200; ++pass) {
        const double before = best_val;
        for (int i = 0; i < dim; ++i) {
            auto line = [&](double t) {
                auto p = best;
                p[i] = t;
                return f(p);
            };
            auto [x, v] = golden(line, best[i] - width, best[i] + width, 1e-10, res.evaluations);
            if (v > best_val) {
                best_val = v;
                best[i] = x;
            }
        }
        if (best_val - before < tol) break;
        width = std::max(0.5 * width, 1e-3);
    }
    res.arg_max = best;
    res.max_value = best_val;
    res.bracket.assign(dim, 1e-10);
    return res;
}

}  // namespace cvbell::optim
