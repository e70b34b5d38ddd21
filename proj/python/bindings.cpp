// SPDX-License-Identifier: Apache-2.0
//
// urbanprop: geometry map-based radio propagation modelling for urban scenarios
// Copyright (C) 2026 The urbanprop authors
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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "urbanprop/errors.hpp"
#include "urbanprop/scenario.hpp"

namespace py = pybind11;
using namespace urbanprop;

namespace
{
    using Triple = std::array<double, 3>;

    Point3 point(const Triple &t) { return {t[0], t[1], t[2]}; }
    Triple triple(const Point3 &p) { return {p.x, p.y, p.z}; }

    Polarization polarization(const std::string &s)
    {
        if (s == "H" || s == "h")
            return Polarization::H;
        if (s == "V" || s == "v")
            return Polarization::V;
        throw InputError("polarization must be \"H\" or \"V\"");
    }

    py::dict prediction_dict(const LinkPrediction &p)
    {
        py::dict d;
        d["pl_db"] = p.pl_db;
        d["p_r"] = p.p_r;
        d["capped"] = p.capped;
        d["los"] = p.los;
        d["e_total"] = p.e_total;
        d["n_stages"] = p.n_stages;
        d["direct"] = p.components.direct;
        d["final_I"] = p.components.final_I;
        d["final_II"] = p.components.final_II;
        d["final_edge"] = p.final_edge ? py::cast(triple(*p.final_edge)) : py::none();
        d["reflection_point"] = p.reflection_point ? py::cast(triple(*p.reflection_point)) : py::none();
        return d;
    }

    py::dict visibility_dict(const VisibilitySet &v)
    {
        py::dict d;
        d["los"] = v.cls.los;
        d["breakpoint"] = v.cls.breakpoint ? py::cast(triple(*v.cls.breakpoint)) : py::none();
        d["sides"] = py::dict(py::arg("left") = v.sides.left, py::arg("right") = v.sides.right);
        d["visible"] = py::dict(py::arg("left") = v.visible.left, py::arg("right") = v.visible.right);
        d["left_nlos"] = v.left_nlos;
        d["visible_left_nlos"] = v.visible_left_nlos;
        return d;
    }

    template <class F>
    std::string to_text(F &&write)
    {
        std::ostringstream out;
        write(out);
        return out.str();
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Urban radio propagation: building visibility, multiple-edge diffraction, path loss and Doppler";

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<DegenerateGeometryError>(m, "DegenerateGeometryError", domain_error.ptr());
    (void)input_error;

    m.def("fresnel_integral", &fresnel_integral, py::arg("u"));
    m.def("transition_function", &transition_function, py::arg("X"));
    m.def("wavelength", &wavelength, py::arg("freq_hz"));
    m.def("friis_path_loss_db", &friis_path_loss_db, py::arg("d"), py::arg("freq_hz"));
    m.def(
        "reflection_coefficient",
        [](double theta, double eps_r, const std::string &pol, bool perfect) {
            return reflection_coefficient(theta, {eps_r, polarization(pol), perfect});
        },
        py::arg("theta"), py::arg("eps_r") = 6.0, py::arg("polarization") = "V", py::arg("perfect_conductor") = false);
    m.def(
        "gpp_path_loss",
        [](double d3d, double freq_ghz, bool los) { return gpp_path_loss(d3d, freq_ghz, los); }, py::arg("d3d"),
        py::arg("freq_ghz"), py::arg("los"));
    m.def(
        "doppler_shift", [](const Triple &v, const Triple &u, double f) { return doppler_shift(point(v), point(u), f); },
        py::arg("v"), py::arg("u"), py::arg("freq_hz"));
    m.def("gpp_doppler_estimate", &gpp_doppler_estimate, py::arg("speed"), py::arg("freq_hz"));
    m.def(
        "rms_spread",
        [](const std::vector<Triple> &directions, const std::vector<double> &powers, const Triple &v, double f) {
            if (directions.size() != powers.size())
                throw ShapeError("directions and powers differ in length");
            std::vector<PathComponent> paths;
            for (std::size_t i = 0; i < powers.size(); ++i)
                paths.push_back({point(directions[i]), powers[i], PathKind::Direct});
            const auto s = rms_spread(paths, point(v), f);
            return py::make_tuple(s.weighted_mean, s.spread);
        },
        py::arg("directions"), py::arg("powers"), py::arg("v"), py::arg("freq_hz"),
        "Power-weighted mean Doppler shift and RMS spread, Hz.");

    m.def(
        "rmse", [](const std::vector<double> &a, const std::vector<double> &b) { return rmse(a, b); },
        py::arg("reference"), py::arg("candidate"));
    m.def(
        "ks_distance", [](const std::vector<double> &a, const std::vector<double> &b) { return ks_distance(a, b); },
        py::arg("a"), py::arg("b"));
    m.def(
        "empirical_cdf",
        [](const std::vector<double> &s) {
            std::vector<std::pair<double, double>> out;
            for (const auto &p : empirical_cdf(s))
                out.emplace_back(p.x, p.F);
            return out;
        },
        py::arg("samples"));

    py::class_<GeometryMap>(m, "GeometryMap")
        .def_static(
            "load", [](const std::filesystem::path &p) { return load_map(p); }, py::arg("path"))
        .def_static(
            "from_json", [](const std::string &text) { return parse_map(nlohmann::json::parse(text)); },
            py::arg("text"))
        .def_static(
            "from_boxes",
            [](const std::vector<std::tuple<int, double, double, double, double, double>> &boxes) {
                MapBuilder b;
                for (const auto &[id, x0, y0, x1, y1, h] : boxes)
                    b.add_box(id, x0, y0, x1, y1, h);
                return b.build();
            },
            py::arg("boxes"), "Axis-aligned boxes as (id, x0, y0, x1, y1, height).")
        .def_property_readonly("building_ids",
                               [](const GeometryMap &g) {
                                   std::vector<int> ids;
                                   for (const auto &b : g.buildings())
                                       ids.push_back(b.id);
                                   return ids;
                               })
        .def("blocked", [](const GeometryMap &g, const Triple &a, const Triple &b) { return blocked(point(a), point(b), g); });

    m.def(
        "identify",
        [](const Triple &tx, const Triple &rx, const GeometryMap &map, double corridor) {
            const IdentificationOptions opt{corridor};
            return visibility_dict(visible_identification(identify_initial(point(tx), point(rx), map, opt), map));
        },
        py::arg("tx"), py::arg("rx"), py::arg("map"), py::arg("corridor_width") = 100.0);

    m.def(
        "predict_link",
        [](const Triple &tx, const Triple &rx, const GeometryMap &map, double freq_hz, double p_t, double eps_r,
           const std::string &pol, bool simplified) {
            LinkOptions opt;
            opt.freq_hz = freq_hz;
            opt.p_t = p_t;
            opt.material = {eps_r, polarization(pol), false};
            const Point3 a = point(tx), b = point(rx);
            const auto v = visible_identification(identify_initial(a, b, map), map);
            const auto chain = extract_chain(v, a, b, map);
            return prediction_dict(total_field(v, chain, a, b, map, opt,
                                               simplified ? ChainMode::Simplified : ChainMode::Recursive));
        },
        py::arg("tx"), py::arg("rx"), py::arg("map"), py::arg("freq_hz") = 5.8e9, py::arg("p_t") = 1.0,
        py::arg("eps_r") = 6.0, py::arg("polarization") = "V", py::arg("simplified") = false);

    py::class_<Scenario>(m, "Scenario")
        .def_static(
            "load", [](const std::filesystem::path &p) { return load_scenario(load_config(p)); }, py::arg("config"))
        .def_property_readonly("tx", [](const Scenario &s) { return triple(s.cfg.tx); })
        .def_property_readonly("size", [](const Scenario &s) { return s.route.size(); })
        .def_property_readonly("config", [](const Scenario &s) { return config_to_json(s.cfg).dump(); })
        .def(
            "evaluate",
            [](const Scenario &s, std::size_t workers) {
                std::vector<PositionResult> rs;
                {
                    py::gil_scoped_release release;
                    rs = evaluate_route(s, workers);
                }
                py::list out;
                for (const auto &r : rs)
                {
                    py::dict d = prediction_dict(r.full);
                    d["index"] = r.index;
                    d["rx"] = triple(r.rx);
                    d["pl_simplified_db"] = r.simplified.pl_db;
                    d["pl_free_space_db"] = r.pl_free_space_db;
                    d["pl_3gpp_db"] = r.pl_3gpp_db;
                    d["visibility"] = visibility_dict(r.vis);
                    out.append(d);
                }
                return out;
            },
            py::arg("workers") = 1)
        .def(
            "predict_csv",
            [](const Scenario &s, std::size_t workers) {
                return to_text([&](std::ostream &o) { write_predict_csv(o, evaluate_route(s, workers)); });
            },
            py::arg("workers") = 1)
        .def(
            "identify_jsonl",
            [](const Scenario &s, std::size_t workers) {
                return to_text([&](std::ostream &o) { write_identify_jsonl(o, evaluate_route(s, workers)); });
            },
            py::arg("workers") = 1)
        .def(
            "doppler_csv",
            [](const Scenario &s, std::size_t workers) {
                return to_text([&](std::ostream &o) { write_doppler_csv(o, route_doppler(s, evaluate_route(s, workers))); });
            },
            py::arg("workers") = 1)
        .def(
            "compare",
            [](const Scenario &s, const std::vector<double> &reference) {
                return compare_models(s, evaluate_route(s, 1), reference).summary.dump();
            },
            py::arg("reference"), "JSON summary with rmse_per_model and ks_per_model.");
}
