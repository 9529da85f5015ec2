// SPDX-License-Identifier: Apache-2.0
//
// mmse-lab: achievable sum rate of MIMO linear-MMSE receivers
// Copyright (C) 2026 The mmse-lab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmselab/asymptotics.hpp"
#include "mmselab/closedform.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/montecarlo.hpp"
#include "mmselab/specfun.hpp"
#include "mmselab/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace mmselab;

namespace
{

ChannelModel model_from(const std::string& kind, int nr, int nt, double rho_r, double rho_t, double k_factor,
                        double theta_r, double theta_t)
{
    ChannelSpec spec;
    spec.model = kind;
    spec.nr = nr;
    spec.nt = nt;
    spec.rho_r = rho_r;
    spec.rho_t = rho_t;
    spec.k_factor = k_factor;
    spec.theta_r = theta_r;
    spec.theta_t = theta_t;
    return build_model(spec);
}

Receiver receiver_from(const std::string& name)
{
    if (name == "mmse")
        return Receiver::mmse;
    if (name == "opt")
        return Receiver::opt;
    throw DomainError("receiver must be 'mmse' or 'opt'");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Achievable sum rate of MIMO linear-MMSE receivers";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RepeatedEigenvalues>(m, "RepeatedEigenvalues", PyExc_ArithmeticError);
    py::register_exception<NoClosedForm>(m, "NoClosedForm", PyExc_NotImplementedError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("expint_scaled", &specfun::expint_scaled, py::arg("order"), py::arg("x"), "e^x E_h(x)");
    m.def("digamma_int", &specfun::digamma_int, py::arg("j"));
    m.def("log_multivariate_gamma", &specfun::log_multivariate_gamma, py::arg("n"), py::arg("m"));
    m.def("theta_2f2", &specfun::theta_2f2, py::arg("nr"), py::arg("nt"), py::arg("k_factor"));

    py::class_<ChannelModel>(m, "ChannelModel")
        .def(py::init(&model_from), py::arg("model") = "iid", py::arg("nr") = 2, py::arg("nt") = 2,
             py::arg("rho_r") = 0.0, py::arg("rho_t") = 0.0, py::arg("k_factor") = 0.0, py::arg("theta_r") = 0.0,
             py::arg("theta_t") = 0.0)
        .def_static("from_json", [](const std::string& text) { return build_model(ChannelSpec::from_json_text(text)); })
        .def_property_readonly("nr", [](const ChannelModel& c) { return c.config().nr; })
        .def_property_readonly("nt", [](const ChannelModel& c) { return c.config().nt; })
        .def("describe", &ChannelModel::describe)
        .def("__repr__", [](const ChannelModel& c) { return "<ChannelModel " + c.describe() + ">"; });

    m.def("sum_rate", &closed_form_sum_rate, py::arg("model"), py::arg("snr"), "Exact MMSE sum rate (bits/s/Hz)");
    m.def("opt_mi", [](const ChannelModel& c, double snr) { return make_exact_mi_evaluator()(c, snr).value; },
          py::arg("model"), py::arg("snr"), "Exact ergodic mutual information (bits/s/Hz)");
    m.def("opt_mi_quadrature", [](const ChannelModel& c, double snr) { return make_quadrature_mi_evaluator()(c, snr).value; },
          py::arg("model"), py::arg("snr"));

    m.def(
        "mc_estimate",
        [](const ChannelModel& c, double snr, const std::string& metric, std::int64_t nsamples, std::uint64_t seed) {
            const MonteCarloEstimate e = mc_estimate(c, snr, Metric::parse(metric), nsamples, seed);
            return py::make_tuple(e.mean, e.std_error);
        },
        py::arg("model"), py::arg("snr"), py::arg("metric") = "mmse_rate", py::arg("nsamples") = 100000,
        py::arg("seed") = 1, "Monte-Carlo (mean, standard error)");

    m.def(
        "high_snr_params",
        [](const ChannelModel& c, const std::string& receiver) {
            const HighSnrAffine p = high_snr_params(c, receiver_from(receiver));
            py::dict d;
            d["slope"] = p.slope;
            d["offset"] = p.offset;
            d["excess"] = p.excess;
            return d;
        },
        py::arg("model"), py::arg("receiver") = "mmse");

    m.def(
        "low_snr_params",
        [](const ChannelModel& c) {
            const LowSnrParams p = low_snr_params(c);
            py::dict d;
            d["ebno_min"] = p.ebno_min;
            d["s0"] = p.s0;
            d["s0_opt"] = p.s0_opt;
            d["ratio"] = p.ratio;
            return d;
        },
        py::arg("model"));

    m.def("rician_offset_shift",
          [](int nr, int nt, double k) { return rician_offset_shift(AntennaConfig::make(nr, nt), k); },
          py::arg("nr"), py::arg("nt"), py::arg("k_factor"));
    m.def("rician_excess_shift",
          [](int nr, int nt, double k) { return rician_excess_shift(AntennaConfig::make(nr, nt), k); },
          py::arg("nr"), py::arg("nt"), py::arg("k_factor"));
}
