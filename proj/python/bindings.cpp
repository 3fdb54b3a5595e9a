#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polydual/cli.hpp"

namespace py = pybind11;
using namespace polydual;

namespace {

Points rowsToPoints(const Mat& rows) {
    Points pts;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) pts.push_back(rows.row(i).transpose());
    return pts;
}

Mat pointsToRows(const Points& pts, int dim) {
    Mat out(static_cast<Eigen::Index>(pts.size()), dim);
    for (std::size_t i = 0; i < pts.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    return out;
}

DirectionGrid gridFor(const VPolytope& P, int size, std::uint64_t seed) { return studyGrid(P, size, seed); }

py::dict toDict(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Floating and polar-illumination body approximation of symmetric polytopes";

    static py::exception<GeometryError> geometryError(m, "GeometryError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const GeometryError& e) {
            PyErr_SetObject(geometryError.ptr(), py::make_tuple(e.what(), toString(e.kind())).ptr());
        }
    });

    py::class_<VPolytope>(m, "Polytope")
        .def(py::init([](const Mat& vertices, double tol) { return VPolytope(rowsToPoints(vertices), tol); }),
             py::arg("vertices"), py::arg("incidence_tol") = kDefaultIncidenceTol)
        .def_property_readonly("dim", &VPolytope::dim)
        .def_property_readonly("vertices", [](const VPolytope& P) { return pointsToRows(P.vertices(), P.dim()); })
        .def_property_readonly("volume", &VPolytope::volume)
        .def_property_readonly("centroid", [](const VPolytope& P) { return Vec(P.centroid()); })
        .def_property_readonly("facet_count", [](const VPolytope& P) { return P.facets().size(); })
        .def("facets", [](const VPolytope& P) {
            py::list out;
            for (const auto& f : P.facets()) {
                py::dict d;
                d["normal"] = Vec(f.normal);
                d["offset"] = f.offset;
                d["measure"] = f.measure;
                d["vertex_indices"] = f.vertexIndices;
                out.append(d);
            }
            return out;
        })
        .def("support", [](const VPolytope& P, const Vec& u) { return support(P, u); })
        .def("radial", [](const VPolytope& P, const Vec& u) { return radial(P, u); })
        .def("cap_volume", [](const VPolytope& P, const Vec& u, double t) { return capVolume(P, u, t); })
        .def("__repr__", [](const VPolytope& P) {
            return "<Polytope dim=" + std::to_string(P.dim()) + " vertices=" + std::to_string(P.vertexCount()) + ">";
        });

    m.def("generator", &generator, py::arg("name"), py::arg("dim") = 2, py::arg("eps") = 0.25);
    m.def("random_symmetric", &randomSymmetric, py::arg("dim"), py::arg("pairs"), py::arg("seed") = 0);
    m.def("polar", &polar);
    m.def("apply_linear", &applyLinear);
    m.def("lambda_constant", &lambdaConstant);
    m.def("analyze", [](const VPolytope& P) { return toDict(reportToJson(invariantG(P))); },
          "Per-vertex invariants and G(P) as a dict");
    m.def("invariant_g", [](const VPolytope& P) { return invariantG(P).G; });
    m.def("floating_support", &floatingSupport, py::arg("P"), py::arg("delta"), py::arg("v"), py::arg("level_tol") = 1e-12);
    m.def("illumination_radial", &illuminationRadial, py::arg("K"), py::arg("delta"), py::arg("u"));
    m.def("vertex_float_ratio", &vertexFloatRatio);
    m.def("uniform_bound_constant", &uniformBoundConstant);
    m.def(
        "dp_delta",
        [](const VPolytope& P, double delta, int gridSize, std::uint64_t seed) {
            const auto r = dPdelta(P, delta, gridFor(P, gridSize, seed));
            py::dict d;
            d["value"] = r.value;
            d["best_delta_prime"] = r.bestDeltaPrime;
            d["at_zero"] = r.atZero;
            d["evaluations"] = r.evaluations;
            return d;
        },
        py::arg("P"), py::arg("delta"), py::arg("grid_size") = 0, py::arg("seed") = 0);
    m.def(
        "convergence_table",
        [](const VPolytope& P, const std::vector<double>& deltas, int gridSize, std::uint64_t seed) {
            return toDict(convergenceToJson(convergenceTable(P, deltas, gridFor(P, gridSize, seed))));
        },
        py::arg("P"), py::arg("deltas"), py::arg("grid_size") = 0, py::arg("seed") = 0);
    m.def(
        "check_bound",
        [](const VPolytope& S, const std::vector<double>& deltas, int gridSize, std::uint64_t seed) {
            return toDict(boundToJson(uniformBoundCheck(S, deltas, gridFor(S, gridSize, seed))));
        },
        py::arg("S"), py::arg("deltas"), py::arg("grid_size") = 0, py::arg("seed") = 0);
}
