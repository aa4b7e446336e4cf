#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pk/generators.hpp"
#include "pk/label.hpp"
#include "pk/lambda.hpp"
#include "pk/maps.hpp"
#include "pk/partition.hpp"
#include "pk/relation.hpp"
#include "pk/tfiber.hpp"

namespace py = pybind11;
using namespace pk;

PYBIND11_MODULE(_pkcore, m) {
    m.doc() = "planar compactum decomposition toolkit";

    py::register_exception<domain_error>(m, "DomainError");
    py::register_exception<config_error>(m, "ConfigError");

    py::class_<Point>(m, "Point")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y)
        .def("__repr__", [](const Point& p) {
            return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
        });

    py::class_<Window>(m, "Window")
        .def(py::init<double, double, double>(), py::arg("x0") = 0.0,
             py::arg("y0") = 0.0, py::arg("side") = 1.0)
        .def_readwrite("x0", &Window::x0)
        .def_readwrite("y0", &Window::y0)
        .def_readwrite("side", &Window::side);

    py::class_<Raster>(m, "Raster")
        .def(py::init<Window, int>())
        .def_property_readonly("level", &Raster::level)
        .def_property_readonly("n", &Raster::n)
        .def_property_readonly("h", &Raster::h)
        .def_property_readonly("window", &Raster::window)
        .def("get", py::overload_cast<int, int>(&Raster::get, py::const_))
        .def("member", &Raster::member)
        .def("cell_center", &Raster::cell_center)
        .def("occupied", &Raster::occupied)
        .def("occupied_count", &Raster::occupied_count);

    py::enum_<Kind>(m, "Kind")
        .value("cantor_set", Kind::cantor_set)
        .value("cantor_comb", Kind::cantor_comb)
        .value("witch_broom", Kind::witch_broom)
        .value("comb_tower", Kind::comb_tower)
        .value("cantor_circles", Kind::cantor_circles)
        .value("cantor_teepee", Kind::cantor_teepee)
        .value("carpet_polar", Kind::carpet_polar)
        .value("carpet_halfdisk", Kind::carpet_halfdisk)
        .value("ifs_condensation", Kind::ifs_condensation)
        .value("full_square", Kind::full_square)
        .value("segment", Kind::segment)
        .value("circle", Kind::circle);

    py::class_<GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init([](const std::string& kind, unsigned generation, int level,
                         unsigned tower_k, double radius) {
                 GeneratorSpec s{kind_from_string(kind), generation, level};
                 s.tower_k = tower_k;
                 s.radius = radius;
                 return s;
             }),
             py::arg("kind"), py::arg("generation") = 2, py::arg("level") = 8,
             py::arg("tower_k") = 2, py::arg("radius") = 0.5)
        .def_readwrite("generation", &GeneratorSpec::generation)
        .def_readwrite("level", &GeneratorSpec::level);

    m.def("generate", &generate);
    m.def("default_window", [](const std::string& kind) {
        return default_window(kind_from_string(kind));
    });
    m.def("teeth_of_comb", &teeth_of_comb);
    m.def("raster_union", &raster_union);
    m.def("unit_segment_on", &unit_segment_on);
    m.def("save_pkraster", &save_pkraster);
    m.def("load_pkraster", &load_pkraster);
    m.def("hausdorff_distance", &hausdorff_distance);

    py::class_<PeanoReport>(m, "PeanoReport")
        .def_readonly("is_peano_at_scale", &PeanoReport::is_peano_at_scale);
    m.def("peano_check",
          py::overload_cast<const Raster&, const Raster&>(&peano_check));

    py::class_<RelationSchedule>(m, "RelationSchedule")
        .def(py::init<>())
        .def_readwrite("J", &RelationSchedule::J)
        .def_readwrite("theta", &RelationSchedule::theta);

    py::class_<RelationVerdict>(m, "RelationVerdict")
        .def_readonly("related", &RelationVerdict::related)
        .def_readonly("schedule_empty", &RelationVerdict::schedule_empty)
        .def_readonly("radii", &RelationVerdict::radii)
        .def_readonly("counts_g", &RelationVerdict::counts_g)
        .def_readonly("counts_g1", &RelationVerdict::counts_g1);

    py::class_<RelationEngine>(m, "RelationEngine")
        .def(py::init<const Raster&, const Raster&, RelationSchedule>(),
             py::arg("gen_g"), py::arg("gen_g1"),
             py::arg("schedule") = RelationSchedule{})
        .def("related", &RelationEngine::related)
        .def("s_fiber",
             [](const RelationEngine& e, const Point& x) { return e.s_fiber(x); });

    py::class_<FiberMask>(m, "FiberMask")
        .def_readonly("cells", &FiberMask::cells)
        .def_readonly("level", &FiberMask::level);

    py::class_<Partition::Class>(m, "PartitionClass")
        .def_readonly("cells", &Partition::Class::cells)
        .def_readonly("diameter", &Partition::Class::diameter)
        .def_readonly("degenerate", &Partition::Class::degenerate);

    py::class_<Partition>(m, "Partition")
        .def_readonly("classes", &Partition::classes)
        .def_readonly("class_of", &Partition::class_of)
        .def("nondegenerate_count", &Partition::nondegenerate_count);

    m.def(
        "decompose",
        [](const Raster& g, const Raster& g1, int stride) {
            RelationEngine engine(g, g1);
            return stride > 0 ? decompose(engine, stride) : decompose(engine);
        },
        py::arg("gen_g"), py::arg("gen_g1"), py::arg("stride") = 0);

    py::class_<LambdaField>(m, "LambdaField")
        .def_readonly("lambda_of", &LambdaField::lambda_of)
        .def_readonly("cap", &LambdaField::cap)
        .def_readonly("max_lambda", &LambdaField::max_lambda)
        .def_readonly("saturated", &LambdaField::saturated);

    m.def(
        "lambda_field",
        [](const Raster& g, const Raster& g1, int cap) {
            return lambda_field(g, g1, {}, cap);
        },
        py::arg("gen_g"), py::arg("gen_g1"), py::arg("cap") = 4);

    py::class_<RationalMap>(m, "RationalMap")
        .def_static("parse", &RationalMap::parse)
        .def_property_readonly("degree", &RationalMap::degree)
        .def("describe", &RationalMap::describe)
        .def("eval", [](const RationalMap& f, const Point& p) { return f.eval(p); });

    py::class_<MatchReport>(m, "MatchReport")
        .def_readonly("total", &MatchReport::total)
        .def_readonly("matched", &MatchReport::matched)
        .def_readonly("fraction", &MatchReport::fraction)
        .def_readonly("worst", &MatchReport::worst);

    py::class_<TransportReport>(m, "TransportReport")
        .def_readonly("match", &TransportReport::match)
        .def_readonly("degree", &TransportReport::degree)
        .def_readonly("degree_ok", &TransportReport::degree_ok)
        .def_readonly("component_counts", &TransportReport::component_counts);

    m.def(
        "invariance_check",
        [](const Raster& k_g, const Raster& k_g1, const RationalMap& f,
           const Window& source_window, int source_level) {
            return invariance_check(k_g, k_g1, f, source_window, source_level);
        },
        py::arg("k_g"), py::arg("k_g1"), py::arg("map"), py::arg("source_window"),
        py::arg("source_level"));

    py::class_<TFiberMask>(m, "TFiberMask")
        .def_readonly("cells", &TFiberMask::cells)
        .def_readonly("level", &TFiberMask::level);

    m.def("t_fiber",
          [](const Raster& K, const Point& x) { return t_fiber(K, x); });
    m.def(
        "slc_probe",
        [](const Raster& g, const Raster& g1, const Point& x) {
            return slc_probe(g, g1, x);
        },
        py::arg("gen_g"), py::arg("gen_g1"), py::arg("x"));
}
