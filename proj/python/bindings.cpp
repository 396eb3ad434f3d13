#include "lorcone/comparison.hpp"
#include "lorcone/config.hpp"
#include "lorcone/cone.hpp"
#include "lorcone/errors.hpp"
#include "lorcone/llstructure.hpp"
#include "lorcone/lorentz_model.hpp"
#include "lorcone/warp.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace lorcone;

namespace {

ConePoint make_point(double t, std::vector<double> x) { return ConePoint{t, FiberPoint(std::move(x))}; }

py::list path_to_list(const CausalPath& path) {
    py::list out;
    for (const auto& s : path.samples()) out.append(py::make_tuple(s.t, s.x.c));
    return out;
}

CausalPath path_from_list(const std::vector<std::pair<double, std::vector<double>>>& rows) {
    std::vector<PathSample> samples;
    samples.reserve(rows.size());
    for (const auto& [t, x] : rows) samples.push_back({t, FiberPoint(x)});
    return CausalPath(std::move(samples));
}

py::dict report_dict(const GeneralizedCone& cone, const CurvatureReport& r) {
    py::dict d;
    d["direction"] = to_string(r.direction);
    d["K"] = r.K;
    d["triangles_tested"] = r.triangles_tested;
    d["triangles_rejected"] = r.triangles_rejected;
    d["pairs_tested"] = r.pairs_tested;
    d["pairs_informational"] = r.pairs_informational;
    d["worst_gap"] = r.worst_gap;
    d["tolerance"] = r.tolerance;
    d["verdict"] = r.verdict();
    std::ostringstream csv;
    write_report_csv(csv, cone.fiber(), r);
    d["csv"] = csv.str();
    return d;
}

}  // namespace

PYBIND11_MODULE(_lorcone, m) {
    m.doc() = "Time separation, geodesics and curvature comparison on generalized cones";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<IndeterminateError>(m, "IndeterminateError", PyExc_RuntimeError);

    py::class_<WarpSpec>(m, "Warp")
        .def_static("constant", [](double c) { return WarpSpec::constant(c); }, py::arg("c"))
        .def_static("identity", []() { return WarpSpec::identity(); })
        .def_static("power", [](double p, double amplitude) { return WarpSpec::power(p, {0.0, kInf}, amplitude); },
                    py::arg("p"), py::arg("amplitude") = 1.0)
        .def_static(
            "elementary",
            [](const std::string& kind, double a, double b, double amplitude, double rate) {
                return WarpSpec::elementary(warp_kind_from_string(kind), {a, b}, amplitude, rate);
            },
            py::arg("kind"), py::arg("a") = -kInf, py::arg("b") = kInf, py::arg("amplitude") = 1.0,
            py::arg("rate") = 1.0)
        .def("__call__", &WarpSpec::eval)
        .def("derivative", &WarpSpec::derivative)
        .def("min_on_interval", &WarpSpec::min_on_interval)
        .def("inverse_integral", &WarpSpec::inverse_integral)
        .def_property_readonly("interval", [](const WarpSpec& w) { return py::make_tuple(w.interval().a, w.interval().b); })
        .def("__repr__", &WarpSpec::describe);

    py::class_<NullTransport>(m, "NullTransport")
        .def(py::init<WarpSpec, double>(), py::arg("warp"), py::arg("base_point"))
        .def("null_parameter", &NullTransport::null_parameter)
        .def("h_solve", &NullTransport::h_solve)
        .def_property_readonly("forward_horizon", &NullTransport::forward_horizon)
        .def_property_readonly("backward_horizon", &NullTransport::backward_horizon);

    m.def("concavity_check", [](const WarpSpec& w, double K) {
        const auto r = concavity_check(w, K);
        return py::dict(py::arg("holds_concave") = r.holds_concave, py::arg("holds_convex") = r.holds_convex,
                        py::arg("worst_margin") = r.worst_margin, py::arg("worst_t") = r.worst_t);
    });
    m.def("singularity_report", [](const WarpSpec& w, double K) {
        const auto r = singularity_report(w, K);
        return py::dict(py::arg("lower_bound_K_consistent") = r.lower_bound_K_consistent,
                        py::arg("a_finite") = r.interval_finite.a_finite,
                        py::arg("b_finite") = r.interval_finite.b_finite,
                        py::arg("tau_diameter_bound") = r.tau_diameter_bound, py::arg("big_bang") = r.big_bang,
                        py::arg("big_crunch") = r.big_crunch,
                        py::arg("upper_bound_possible") = r.upper_bound_possible, py::arg("verdicts") = r.verdicts);
    });

    py::class_<FiberSpace, std::shared_ptr<FiberSpace>>(m, "Fiber")
        .def("distance", [](const FiberSpace& F, std::vector<double> x, std::vector<double> y) {
            return F.distance(FiberPoint(std::move(x)), FiberPoint(std::move(y)));
        })
        .def("geodesic_point", [](const FiberSpace& F, std::vector<double> x, std::vector<double> y, double u) {
            return F.geodesic_point(FiberPoint(std::move(x)), FiberPoint(std::move(y)), u).c;
        })
        .def("decode", [](const FiberSpace& F, const std::string& s) { return F.decode(s).c; })
        .def("encode", [](const FiberSpace& F, std::vector<double> x) { return F.encode(FiberPoint(std::move(x))); })
        .def_property_readonly("name", &FiberSpace::name);
    py::class_<RealLine, FiberSpace, std::shared_ptr<RealLine>>(m, "RealLine").def(py::init<>());
    py::class_<Circle, FiberSpace, std::shared_ptr<Circle>>(m, "Circle").def(py::init<double>(), py::arg("radius"));
    py::class_<EuclideanN, FiberSpace, std::shared_ptr<EuclideanN>>(m, "Euclidean").def(py::init<std::size_t>(), py::arg("n"));
    py::class_<Sphere2, FiberSpace, std::shared_ptr<Sphere2>>(m, "Sphere2")
        .def(py::init([](double r) { return std::make_shared<Sphere2>(r); }), py::arg("radius") = 1.0);
    py::class_<Hyperbolic2, FiberSpace, std::shared_ptr<Hyperbolic2>>(m, "Hyperbolic2")
        .def(py::init<double>(), py::arg("radius") = 1.0);
    py::class_<MetricGraph, FiberSpace, std::shared_ptr<MetricGraph>>(m, "MetricGraph")
        .def(py::init([](const std::string& edges) { return std::make_shared<MetricGraph>(MetricGraph::from_edge_list(edges)); }),
             py::arg("edges"))
        .def("vertex", [](const MetricGraph& g, const std::string& label) {
            return g.vertex_point(g.vertex_index(label)).c;
        });

    py::class_<ConePoint>(m, "ConePoint")
        .def(py::init(&make_point), py::arg("t"), py::arg("x"))
        .def_readwrite("t", &ConePoint::t)
        .def_property_readonly("x", [](const ConePoint& p) { return p.x.c; })
        .def("__repr__", [](const ConePoint& p) {
            std::ostringstream os;
            os << "ConePoint(t=" << p.t << ", x=[";
            for (std::size_t i = 0; i < p.x.size(); ++i) os << (i ? ", " : "") << p.x[i];
            os << "])";
            return os.str();
        });

    py::class_<GeneralizedCone>(m, "Cone")
        .def(py::init([](const WarpSpec& w, std::shared_ptr<FiberSpace> f) { return GeneralizedCone(w, std::move(f)); }),
             py::arg("warp"), py::arg("fiber"))
        .def_static("from_config", [](const std::string& json) { return *parse_config(json).cone; })
        .def("point", [](const GeneralizedCone& Y, double t, std::vector<double> x) {
            return Y.point(t, FiberPoint(std::move(x)));
        })
        .def("parse_point", [](const GeneralizedCone& Y, const std::string& s) { return parse_point(Y, s); })
        .def("relate", [](const GeneralizedCone& Y, const ConePoint& p, const ConePoint& q) {
            return to_string(relate(Y, p, q).relation);
        })
        .def("tau", [](const GeneralizedCone& Y, const ConePoint& p, const ConePoint& q) {
            return time_separation(Y, p, q);
        })
        .def("geodesic", [](const GeneralizedCone& Y, const ConePoint& p, const ConePoint& q, std::size_t n) {
            return path_to_list(maximizing_geodesic(Y, p, q, n));
        }, py::arg("p"), py::arg("q"), py::arg("n_samples") = 257)
        .def("path_length", [](const GeneralizedCone& Y, const std::vector<std::pair<double, std::vector<double>>>& rows) {
            return path_length(Y, path_from_list(rows));
        })
        .def("classify_path", [](const GeneralizedCone& Y, const std::vector<std::pair<double, std::vector<double>>>& rows) {
            return to_string(classify_path(Y, path_from_list(rows)));
        })
        .def("certify", [](const GeneralizedCone& Y, double K, const std::string& dir, std::size_t n, std::uint64_t seed) {
            SamplingOptions s;
            s.n_triangles = n;
            s.seed = seed;
            return report_dict(Y, certify_bound(Y, K, bound_direction_from_string(dir), s));
        }, py::arg("K"), py::arg("direction") = "below", py::arg("n_triangles") = 200, py::arg("seed") = 1);

    m.def("model_tau", [](double K, double t0, double x0, double t1, double x1) {
        return model_tau(K, {K, t0, x0}, {K, t1, x1});
    }, py::arg("K"), py::arg("t0"), py::arg("x0"), py::arg("t1"), py::arg("x1"));
    m.def("realize_timelike_triangle", [](double K, double a, double b, double c) {
        const ModelTriangle T = realize_timelike_triangle(K, a, b, c);
        auto pt = [](const ModelPoint& p) { return py::make_tuple(p.t, p.x); };
        return py::dict(py::arg("x") = pt(T.x), py::arg("y") = pt(T.y), py::arg("z") = pt(T.z),
                        py::arg("residual") = T.residual);
    });
    m.def("size_bounds_check", &size_bounds_check);
    m.def("modified_distance", &modified_distance);

    m.def("llcheck", [](const std::string& text) {
        const auto c = ll::CurveCatalog::parse(text);
        const auto v = ll::check_bare_llspace(c);
        return py::dict(py::arg("points") = c.size(), py::arg("pairs_checked") = v.pairs_checked,
                        py::arg("triples_checked") = v.triples_checked, py::arg("failures") = v.failures,
                        py::arg("passed") = v.passed());
    });
}
