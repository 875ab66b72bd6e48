// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "cvbell/bell_dp.hpp"
#include "cvbell/optim.hpp"

namespace cvbell::optim {

std::vector<AsymptoteRow> asymptote_relations() {
    std::vector<AsymptoteRow> rows;

    {
        const double n = 1e3;
        const double r = gaussian::vlb_squeezing_for(n);
        const auto opt = dp::optimize_j([&](double j) { return dp::b3_vlb_closed(r, j).value; });
        const double pred = std::asinh(std::sqrt(n / 3.0)) / (8.0 * n);
        rows.push_back({"vlb dp3: J_opt vs asinh(sqrt(N/3))/(8N)", "N", n, opt.arg_max[0], pred,
                        opt.arg_max[0] / pred, opt.max_value});
    }
    {
        const double n = 1e4;
        const auto state = gaussian::make_t({n / 4.0, n / 4.0, 0.0, std::numbers::pi});
        const auto opt = dp::optimize_j(
            [&](double j) { return dp::b3_dp_general(state, dp::t_optimized_family(j)).value; });
        rows.push_back({"t dp3 optimised family: J_opt N vs 3.21", "N", n, opt.arg_max[0] * n, 3.21,
                        opt.arg_max[0] * n / 3.21, opt.max_value});
    }
    {
        const double r = 5.0;
        const double n = 2.0 * std::sinh(r) * std::sinh(r);
        const auto state = gaussian::make_twb(n);
        const auto opt = dp::optimize_j(
            [&](double j) { return dp::b2_dp(state, dp::twb_improved_family(j)).value; });
        const double pred = std::log(3.0) / 32.0;
        const double meas = std::exp(2.0 * r) * opt.arg_max[0];
        rows.push_back({"twb dp2 improved family: e^{2r} J_opt vs ln3/32", "r", r, meas, pred,
                        meas / pred, opt.max_value});
    }
    {
        const double n2 = 1e3;
        const conditional::ConditionalParams p{n2, 1e-2 / n2, 0.0, 0.0, 1.0};
        const auto opt = dp::optimize_j(
            [&](double j) { return dp::b2_dp(p, dp::conditional_family(j)).value; });
        rows.push_back({"conditional dp2: J_opt N2 vs 0.042", "N2", n2, opt.arg_max[0] * n2, 0.042,
                        opt.arg_max[0] * n2 / 0.042, opt.max_value});
    }
    return rows;
}

}  // namespace cvbell::optim
