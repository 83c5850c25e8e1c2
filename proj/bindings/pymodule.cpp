/*
 * Copyright 2026 The cadlag Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cadlag/diagnostics.hpp"
#include "cadlag/io.hpp"
#include "cadlag/metrics.hpp"
#include "cadlag/moduli.hpp"
#include "cadlag/path.hpp"
#include "cadlag/processes.hpp"

namespace py = pybind11;
using namespace cadlag;

namespace {

J1Penalty parse_penalty(const std::string& name) {
    if (name == "absolute") return J1Penalty::Absolute;
    if (name == "log_slope") return J1Penalty::LogSlope;
    throw std::invalid_argument("penalty must be 'absolute' or 'log_slope'");
}

py::dict report_to_dict(const DistanceReport& r) {
    py::dict d;
    d["value"] = r.value;
    d["method"] = r.method;
    d["error_bound"] = r.error_bound;
    if (r.witness) {
        py::list nodes;
        for (std::size_t i = 0; i < r.witness->times().size(); ++i)
            nodes.append(py::make_tuple(r.witness->times()[i], r.witness->values()[i]));
        d["witness"] = nodes;
    }
    if (!r.coupling.empty()) {
        py::list pairs;
        for (const auto& c : r.coupling) pairs.append(py::make_tuple(c[0], c[1], c[2], c[3]));
        d["coupling"] = pairs;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_cadlag, m) {
    m.doc() = "computable Skorokhod J1/M1 topologies for cadlag paths";

    py::class_<CadlagPath>(m, "CadlagPath")
        .def_static("step", &CadlagPath::step, py::arg("horizon"), py::arg("times"),
                    py::arg("values"))
        .def_static("piecewise_linear", &CadlagPath::piecewise_linear, py::arg("horizon"),
                    py::arg("times"), py::arg("values"),
                    py::arg("jumps") = std::vector<std::pair<double, double>>{})
        .def_static("constant", &CadlagPath::constant, py::arg("horizon"), py::arg("value"))
        .def("eval", &CadlagPath::eval1, py::arg("t"))
        .def("left_limit", &CadlagPath::left_limit1, py::arg("t"))
        .def_property_readonly("horizon", &CadlagPath::horizon)
        .def_property_readonly("is_piecewise_constant", &CadlagPath::is_piecewise_constant)
        .def_property_readonly("is_monotone", &CadlagPath::is_monotone)
        .def("sup_norm", &CadlagPath::sup_norm)
        .def("restrict", &CadlagPath::restrict, py::arg("horizon"))
        .def("jumps",
             [](const CadlagPath& p) {
                 py::list out;
                 for (const auto& j : p.jumps())
                     out.append(py::make_tuple(j.time, j.left, j.right));
                 return out;
             })
        .def("to_json", [](const CadlagPath& p) { return path_to_json(p); })
        .def_static("from_json", [](const std::string& s) { return path_from_json(s); });

    py::class_<TimeChange>(m, "TimeChange")
        .def(py::init<double, std::vector<double>, std::vector<double>>(), py::arg("horizon"),
             py::arg("times"), py::arg("values"))
        .def_static("identity", &TimeChange::identity, py::arg("horizon"))
        .def("__call__", &TimeChange::operator(), py::arg("t"))
        .def("sup_deviation", &TimeChange::sup_deviation)
        .def("log_slope_norm", &TimeChange::log_slope_norm);

    m.def("apply_time_change", &apply_time_change, py::arg("path"), py::arg("time_change"));

    m.def(
        "uniform_distance",
        [](const CadlagPath& f, const CadlagPath& g) {
            return report_to_dict(uniform_distance(f, g));
        },
        py::arg("f"), py::arg("g"));
    m.def(
        "j1_distance",
        [](const CadlagPath& f, const CadlagPath& g, const std::string& penalty,
           std::size_t resolution) {
            return report_to_dict(
                j1_distance(f, g, parse_penalty(penalty), GroundMetric::absolute(), resolution));
        },
        py::arg("f"), py::arg("g"), py::arg("penalty") = "absolute", py::arg("resolution") = 64);
    m.def(
        "j1_oracle",
        [](const CadlagPath& f, const CadlagPath& g, const std::string& penalty) {
            return report_to_dict(j1_oracle(f, g, parse_penalty(penalty)));
        },
        py::arg("f"), py::arg("g"), py::arg("penalty") = "absolute");
    m.def(
        "m1_distance",
        [](const CadlagPath& f, const CadlagPath& g, std::size_t resolution) {
            return report_to_dict(m1_distance(f, g, resolution));
        },
        py::arg("f"), py::arg("g"), py::arg("resolution") = 200);
    m.def(
        "m1_oracle",
        [](const CadlagPath& f, const CadlagPath& g) { return report_to_dict(m1_oracle(f, g)); },
        py::arg("f"), py::arg("g"));
    m.def(
        "halfline_distance",
        [](const CadlagPath& f, const CadlagPath& g) {
            return report_to_dict(halfline_distance(f, g));
        },
        py::arg("f"), py::arg("g"));
    m.def(
        "weak_product_j1",
        [](const std::vector<CadlagPath>& f, const std::vector<CadlagPath>& g) {
            return report_to_dict(weak_product_j1(f, g));
        },
        py::arg("f"), py::arg("g"));

    m.def("omega", &omega, py::arg("f"), py::arg("delta"));
    m.def("omega_prime", &omega_prime, py::arg("f"), py::arg("delta"),
          py::arg("max_candidates") = 2048);
    m.def("omega_double_prime", &omega_double_prime, py::arg("f"), py::arg("delta"));

    m.def("donsker_path", &donsker_path, py::arg("N"), py::arg("seed"),
          py::arg("interpolated") = true);
    m.def("poisson_path", &poisson_path, py::arg("rate"), py::arg("horizon"), py::arg("seed"));
    m.def(
        "example_family",
        [](const std::string& name, std::size_t n) {
            const auto mbr = example_family(name, n);
            return py::make_tuple(mbr.path, mbr.lambda ? py::cast(*mbr.lambda) : py::none());
        },
        py::arg("name"), py::arg("n"));

    m.def("ks_two_sample", [](std::vector<double> a, std::vector<double> b) {
        double p = 0.0;
        const double d = ks_two_sample(std::move(a), std::move(b), &p);
        return py::make_tuple(d, p);
    });
}
