#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unmate/reference_curves.hpp"
#include "unmate/render.hpp"
#include "unmate/report.hpp"

namespace py = pybind11;
using namespace unmate;

namespace {

ToleranceConfig tolerances(double eps_orbit, double eps_curve) {
    ToleranceConfig t;
    t.eps_orbit = eps_orbit;
    t.eps_curve = eps_curve;
    t.validate();
    return t;
}

std::string orbits_json(const std::string& map) {
    auto m = resolve_map(map);
    auto j = postcritical_to_json(postcritical_set(m.map));
    j["map"] = m.id;
    return j.dump();
}

std::string classify_json(const std::string& map, const std::string& curve, int level, int resolution,
                          double eps_orbit, double eps_curve) {
    auto tol = tolerances(eps_orbit, eps_curve);
    auto m = resolve_map(map);
    auto c = resolve_curve(curve, resolution);
    auto pc = postcritical_set(m.map, tol);
    auto j = verdict_to_json(classify_curve(m.map, level, c, tol, &pc), pc.set);
    j["map"] = m.id;
    j["curve"] = c.name;
    return j.dump();
}

std::string fold_json(const std::string& map, int depth, int resolution) {
    auto m = resolve_map(map);
    FoldOptions fo;
    fo.resolution = resolution;
    fo.map_id = m.id;
    if (m.catalog) fo.curves = reference_curves_for(m.id, resolution);
    auto rep = fold_report(m.map, depth, fo);
    return report_to_json(rep, postcritical_set(m.map).set).dump();
}

std::string map_json(const std::string& map) { return map_to_json(resolve_map(map).map).dump(); }

}  // namespace

PYBIND11_MODULE(_unmate, m) {
    m.doc() = "n-mating analysis of postcritically finite rational maps";
    static py::exception<Error> exc(m, "UnmateError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            exc(e.what());
        }
    });

    m.def("catalog_ids", &catalog_ids);
    m.def("reference_curve_ids", [] {
        std::vector<std::string> ids;
        for (auto& c : reference_curves()) ids.push_back(c.id);
        return ids;
    });
    m.def("map_json", &map_json, py::arg("map"));
    m.def("orbits_json", &orbits_json, py::arg("map"));
    m.def("capture_parameters", [](int k) { return capture_parameters(k); }, py::arg("generation"));
    m.def("classify_json", &classify_json, py::arg("map"), py::arg("curve"), py::arg("level") = 1,
          py::arg("resolution") = 512, py::arg("eps_orbit") = 1e-9, py::arg("eps_curve") = 1e-3);
    m.def("fold_json", &fold_json, py::arg("map"), py::arg("depth"), py::arg("resolution") = 512);
    m.def("census_csv", [] { return census_csv(census(4)); });
    m.def(
        "closure_size",
        [](const std::vector<std::vector<int>>& gens) {
            std::vector<FiniteSelfMap> g;
            for (auto& x : gens) g.push_back(FiniteSelfMap{x});
            return closure(g).size();
        },
        py::arg("generators"));
    m.def(
        "series",
        [](const std::vector<int>& image) { return classify_series(FiniteSelfMap{image}).name; },
        py::arg("image"));
    m.def(
        "julia_proximity",
        [](const std::string& map, const std::string& curve, int depth, int resolution) {
            auto c = resolve_curve(curve, resolution);
            return julia_proximity_check(resolve_map(map).map, c, depth).fraction;
        },
        py::arg("map"), py::arg("curve"), py::arg("depth"), py::arg("resolution") = 512);
    m.def(
        "render_figure",
        [](const std::string& tag, const std::string& out_dir, int image_resolution, bool basins) {
            auto spec = figure_spec(tag);
            spec.render.resolution = image_resolution;
            spec.basins = basins;
            return render_figure(spec, out_dir);
        },
        py::arg("tag"), py::arg("out_dir"), py::arg("image_resolution") = 512, py::arg("basins") = true);
}
