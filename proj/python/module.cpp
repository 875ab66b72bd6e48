// SPDX-License-Identifier: Apache-2.0
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvbell/app.hpp"
#include "cvbell/bell_dp.hpp"
#include "cvbell/bell_homodyne.hpp"
#include "cvbell/bell_ps.hpp"
#include "cvbell/conditional.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/gaussian.hpp"

namespace py = pybind11;
using namespace cvbell;

namespace {

py::dict scan_dict(const optim::ScanResult& r) {
    py::dict d;
    d["value"] = r.max_value;
    d["j"] = r.arg_max.at(0);
    d["evaluations"] = r.evaluations;
    return d;
}

app::RunConfig config_from(const py::kwargs& kw) {
    app::RunConfig c;
    for (const auto& [k, v] : kw) {
        const auto key = k.cast<std::string>();
        if (v.is_none()) continue;
        if (key == "state") c.state = v.cast<std::string>();
        else if (key == "test") c.test = v.cast<std::string>();
        else if (key == "r") c.r = v.cast<double>();
        else if (key == "n") c.n = v.cast<double>();
        else if (key == "n2") c.n2 = v.cast<double>();
        else if (key == "n3") c.n3 = v.cast<double>();
        else if (key == "eta") c.eta = v.cast<double>();
        else if (key == "j") c.j = v.cast<double>();
        else if (key == "phi2") c.phi2 = v.cast<double>();
        else if (key == "phi3") c.phi3 = v.cast<double>();
        else if (key == "optimize") c.optimize = v.cast<bool>();
        else if (key == "grid") c.grid = app::parse_grid(v.cast<std::string>());
        else if (key == "cutoff") c.cutoff = v.cast<int>();
        else if (key == "tol") c.tol = v.cast<double>();
        else throw app::UsageError("unknown option '" + key + "'");
    }
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bell-inequality tests for continuous-variable states";

    auto base = py::register_exception<Error>(m, "CvBellError");
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
    py::register_exception<UndefinedState>(m, "UndefinedState", base.ptr());
    py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
    py::register_exception<app::UsageError>(m, "UsageError", PyExc_ValueError);

    py::class_<gaussian::GaussianState>(m, "GaussianState")
        .def(py::init<Eigen::MatrixXd>(), py::arg("cov"))
        .def_property_readonly("cov", &gaussian::GaussianState::cov)
        .def_property_readonly("det", &gaussian::GaussianState::det)
        .def_property_readonly("n_modes", &gaussian::GaussianState::n_modes)
        .def("wigner", [](const gaussian::GaussianState& s, const Eigen::VectorXd& v) {
            return gaussian::wigner_eval(s, v);
        });

    m.def("make_vlb", &gaussian::make_vlb, py::arg("r"));
    m.def("make_twb", &gaussian::make_twb, py::arg("n"));
    m.def("make_t", [](double n2, double n3, double phi2, double phi3) {
        return gaussian::make_t({n2, n3, phi2, phi3});
    }, py::arg("n2"), py::arg("n3"), py::arg("phi2") = 0.0, py::arg("phi3") = 0.0);

    py::class_<conditional::ConditionalParams>(m, "ConditionalParams")
        .def(py::init([](double n2, double n3, double phi2, double phi3, double eta) {
                 return conditional::ConditionalParams{n2, n3, phi2, phi3, eta};
             }),
             py::arg("n2"), py::arg("n3"), py::arg("phi2") = 0.0, py::arg("phi3") = 0.0, py::arg("eta") = 1.0)
        .def_readwrite("n2", &conditional::ConditionalParams::n2)
        .def_readwrite("n3", &conditional::ConditionalParams::n3)
        .def_readwrite("phi2", &conditional::ConditionalParams::phi2)
        .def_readwrite("phi3", &conditional::ConditionalParams::phi3)
        .def_readwrite("eta", &conditional::ConditionalParams::eta);

    m.def("p_click", &conditional::p_click);
    m.def("w1", [](const conditional::ConditionalParams& p, const Eigen::Vector4d& v) {
        return conditional::w1_eval(p, v);
    });
    m.def("w_traced", &conditional::w_traced);

    m.def("e_dp", [](const gaussian::GaussianState& s, const std::vector<Complex>& alphas) {
        return dp::e_dp_gaussian(s, alphas);
    });
    m.def("b3_vlb", [](double r, double j) { return dp::b3_vlb_closed(r, j).value; }, py::arg("r"), py::arg("j"));
    m.def("b3_t", [](double n, double j) { return dp::b3_t_closed(n, j).value; }, py::arg("n"), py::arg("j"));
    m.def("b3_vlb_opt", [](double r) {
        return scan_dict(dp::optimize_j([r](double j) { return dp::b3_vlb_closed(r, j).value; }));
    }, py::arg("r"));
    m.def("b3_t_opt", [](double n) {
        return scan_dict(dp::optimize_j([n](double j) { return dp::b3_t_closed(n, j).value; }));
    }, py::arg("n"));
    m.def("b2_twb_opt", [](double n, bool improved) {
        const auto s = gaussian::make_twb(n);
        return scan_dict(dp::optimize_j([&](double j) {
            return dp::b2_dp(s, improved ? dp::twb_improved_family(j) : dp::twb_bw_family(j)).value;
        }));
    }, py::arg("n"), py::arg("improved") = true);
    m.def("b2_conditional_opt", [](const conditional::ConditionalParams& p) {
        return scan_dict(dp::optimize_j([&](double j) { return dp::b2_dp(p, dp::conditional_family(j)).value; }));
    });

    m.def("b3_ps", [](double n2, double n3, const std::string& rep) {
        if (rep != "s" && rep != "pi") throw app::UsageError("representation must be 's' or 'pi'");
        return ps::b3_ps(n2, n3, rep == "s" ? Representation::S_REP : Representation::PI_REP).value;
    }, py::arg("n2"), py::arg("n3"), py::arg("representation") = "s");
    m.def("b3_ps_vlb", [](double r) { return ps::b3_ps_vlb(r).value; }, py::arg("r"));
    m.def("coeffs_t_series", [](double n2, double n3, double tol) {
        const auto c = ps::coeffs_t_series(n2, n3, tol);
        return py::make_tuple(c.c1, c.c2, c.c3);
    }, py::arg("n2"), py::arg("n3"), py::arg("tol") = 1e-8);
    m.def("f_twb", &ps::f_twb, py::arg("n"));
    m.def("f_conditional", &ps::f_conditional, py::arg("p"), py::arg("tol") = 1e-8);
    m.def("f_traced", &ps::f_traced, py::arg("p"), py::arg("tol") = 1e-8);
    m.def("b2_ps_from_f", [](double f) { return ps::b2_ps_from_f(f).value; }, py::arg("f"));

    m.def("e_h_rho1", &homodyne::e_h_rho1_psi, py::arg("p"), py::arg("psi"));
    m.def("e_h_gaussian", &homodyne::e_h_gaussian, py::arg("state"), py::arg("theta"), py::arg("phi"));
    m.def("classical_reference", &homodyne::classical_reference, py::arg("psi"));

    m.def("figure_ids", &app::figure_ids);
    m.def("run_figure", [](const std::string& id, const py::kwargs& kw) {
        const auto t = app::run_figure(id, config_from(kw));
        py::dict d;
        d["id"] = t.title;
        d["provenance"] = t.provenance;
        d["columns"] = t.columns;
        d["rows"] = t.rows;
        return d;
    }, py::arg("id"));
    m.def("run_point", [](const py::kwargs& kw) {
        py::dict d;
        for (const auto& f : app::run_point(config_from(kw))) {
            if (f.number)
                d[py::str(f.key)] = *f.number;
            else
                d[py::str(f.key)] = f.text;
        }
        return d;
    });
    m.def("run_verify", [](int cutoff) {
        app::RunConfig c;
        c.cutoff = cutoff;
        const auto rep = app::run_verify(c);
        py::list rows;
        for (const auto& ch : rep.checks) {
            py::dict d;
            d["check"] = ch.name;
            d["status"] = ch.status == app::CheckStatus::Pass ? "PASS"
                          : ch.status == app::CheckStatus::Fail ? "FAIL" : "FINDING";
            d["error"] = ch.error;
            d["tolerance"] = ch.tolerance;
            d["detail"] = ch.detail;
            rows.append(d);
        }
        return rows;
    }, py::arg("cutoff") = 30);
}
