#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbrkit/assembly.hpp"
#include "pbrkit/error.hpp"
#include "pbrkit/piping.hpp"
#include "pbrkit/polyhedra.hpp"
#include "pbrkit/regression.hpp"
#include "pbrkit/similarity.hpp"
#include "pbrkit/vision.hpp"

namespace py = pybind11;
using namespace pbrkit;

namespace {

py::dict mesh_dict(const polyhedra::Mesh& mesh) {
    py::list verts;
    for (const auto& v : mesh.vertices) verts.append(py::make_tuple(v.x, v.y, v.z));
    py::dict d;
    d["vertices"] = verts;
    d["faces"] = mesh.faces;
    return d;
}

polyhedra::Mesh mesh_from(const py::dict& d) {
    polyhedra::Mesh m;
    for (auto v : d["vertices"]) {
        auto t = v.cast<std::array<double, 3>>();
        m.vertices.push_back({t[0], t[1], t[2]});
    }
    m.faces = d["faces"].cast<std::vector<std::vector<int>>>();
    return m;
}

polyhedra::SymmetryView parse_view(const std::string& s) {
    if (s == "solid") return polyhedra::SymmetryView::solid;
    if (s == "elevation") return polyhedra::SymmetryView::elevation;
    if (s == "plan") return polyhedra::SymmetryView::plan;
    throw Error(ErrorCode::InvalidArgument, "view must be solid, elevation or plan");
}

assembly::WidthMap width_map(const std::map<std::string, double>& w) {
    assembly::WidthMap out;
    for (const auto& [k, v] : w) out[polyhedra::parse_cell_class(k)] = v;
    return out;
}

std::vector<std::string> sequence_names(const assembly::RowPlan& p) {
    std::vector<std::string> out;
    for (auto c : p.sequence) out.emplace_back(polyhedra::to_string(c));
    return out;
}

similarity::Measure make_measure(const std::string& kind, double p, int q, double eps) {
    similarity::Measure m;
    m.kind = similarity::parse_measure_kind(kind);
    m.minkowski_p = p;
    m.hamming_quantization = q;
    m.epsilon = eps;
    return m;
}

vision::ImageRaster raster_from(py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 3 || a.shape(2) != 3) {
        throw Error(ErrorCode::InvalidArgument, "image must be an H x W x 3 uint8 array");
    }
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    vision::ImageRaster img(w, h);
    auto r = a.unchecked<3>();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.set(x, y, {r(y, x, 0), r(y, x, 1), r(y, x, 2)});
    }
    return img;
}

py::dict model_dict(const regression::RegressionModel& m) {
    py::dict d;
    d["measure"] = std::string(similarity::to_string(m.measure.kind));
    d["degree"] = m.degree;
    d["coefficients"] = m.coefficients;
    d["day_domain"] = py::make_tuple(m.day_min, m.day_max);
    d["rho"] = m.pearson_rho;
    d["r2"] = m.r_squared;
    return d;
}

regression::RegressionModel model_from(const py::dict& d) {
    regression::RegressionModel m;
    m.measure.kind = similarity::parse_measure_kind(d["measure"].cast<std::string>());
    m.degree = d["degree"].cast<int>();
    m.coefficients = d["coefficients"].cast<std::vector<double>>();
    auto dom = d["day_domain"].cast<std::array<double, 2>>();
    m.day_min = dom[0];
    m.day_max = dom[1];
    return m;
}

}  // namespace

PYBIND11_MODULE(_pbrkit, m) {
    m.doc() = "pbrkit native core";

    static py::exception<Error> exc(m, "PbrkitError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    m.def("polyhedron_properties", [](const std::string& shape) {
        const auto p = polyhedra::polyhedron_properties(polyhedra::parse_shape(shape));
        py::dict d;
        d["vertex_count"] = p.vertex_count;
        d["side_count"] = p.side_count;
        d["surface_count"] = p.surface_count;
        d["base_polygon"] = std::string(polyhedra::to_string(p.base_polygon));
        d["interior_angle_deg"] = p.interior_angle_deg;
        d["height_side_ratio"] = p.height_side_ratio;
        d["surfaces_parallel"] = p.surfaces_parallel;
        return d;
    }, py::arg("shape"));

    m.def("regular_solid", [](const std::string& shape) {
        return mesh_dict(polyhedra::regular_solid(polyhedra::parse_shape(shape)));
    }, py::arg("shape"));

    m.def("dual_polyhedron", [](const py::dict& mesh) {
        return mesh_dict(polyhedra::dual_polyhedron(mesh_from(mesh)));
    }, py::arg("mesh"));

    m.def("convex_hull", [](const std::vector<std::array<double, 3>>& pts) {
        std::vector<Vec3> v;
        for (const auto& p : pts) v.push_back({p[0], p[1], p[2]});
        return mesh_dict(polyhedra::convex_hull(v));
    }, py::arg("points"));

    m.def("generate_cell", [](double angle, double ratio, double height, double bottom_side) {
        polyhedra::CellParams p{angle, ratio, height, bottom_side};
        const auto c = polyhedra::generate_cell(p);
        py::dict d = mesh_dict(c.mesh);
        d["height"] = c.height;
        d["width"] = c.width;
        return d;
    }, py::arg("angle") = 0.0, py::arg("ratio") = 1.0, py::arg("height") = 1.0,
       py::arg("bottom_side") = 1.0);

    m.def("symmetry_check", [](const py::dict& mesh, const std::string& view) {
        const auto r = polyhedra::symmetry_check(mesh_from(mesh), parse_view(view));
        return py::make_tuple(r.axisymmetric, r.centrosymmetric);
    }, py::arg("mesh"), py::arg("view") = "solid");

    m.def("equilateral_adjust", [](double angle, double ratio) {
        polyhedra::CellParams p;
        p.angle_difference_deg = angle;
        p.side_ratio = ratio;
        const auto a = polyhedra::equilateral_adjust(p);
        return py::make_tuple(a.height, a.side_ratio);
    }, py::arg("angle"), py::arg("ratio") = 1.0);

    m.def("tessellate_row", [](double target, const std::map<std::string, double>& widths,
                               double tol, std::uint64_t seed) {
        return sequence_names(assembly::tessellate_row(target, width_map(widths), tol, seed));
    }, py::arg("target"), py::arg("widths"), py::arg("tolerance") = 1e-6, py::arg("seed") = 0);

    m.def("enumerate_row_compositions", [](double target, const std::map<std::string, double>& widths,
                                           double tol, std::size_t limit) {
        std::vector<std::vector<std::string>> out;
        for (const auto& p : assembly::enumerate_row_compositions(target, width_map(widths), tol, limit)) {
            out.push_back(sequence_names(p));
        }
        return out;
    }, py::arg("target"), py::arg("widths"), py::arg("tolerance") = 1e-6, py::arg("limit") = 1000);

    m.def("solve_grid_configurations", [](int rows, int cols, const std::vector<std::string>& pipes,
                                          int pump_instance, const std::string& pump_face,
                                          std::size_t limit) {
        const auto layout = assembly::grid_layout(rows, cols);
        std::vector<piping::PortTemplate> t;
        for (const auto& p : pipes) t.push_back(piping::PortTemplate::standard(parse_pipe_type(p)));
        return piping::solve_configurations(layout, t, {pump_instance, piping::parse_face(pump_face)},
                                            limit);
    }, py::arg("rows"), py::arg("cols"), py::arg("pipes"), py::arg("pump_instance") = 0,
       py::arg("pump_face") = "left", py::arg("limit") = 1000);

    m.def("measure_kinds", [] {
        std::vector<std::string> out;
        for (auto k : similarity::kAllMeasureKinds) out.emplace_back(similarity::to_string(k));
        return out;
    });

    m.def("measure", [](const similarity::Rgb& a, const similarity::Rgb& b, const std::string& kind,
                        double p, int q, double eps) {
        return similarity::measure(a, b, make_measure(kind, p, q, eps));
    }, py::arg("a"), py::arg("b"), py::arg("kind") = "euclidean", py::arg("p") = 3.0,
       py::arg("quantization") = 1, py::arg("epsilon") = 1e-9);

    m.def("signed_difference", [](const similarity::Rgb& test, const similarity::Rgb& control,
                                  const std::string& kind, double p, int q, double eps) {
        return similarity::signed_difference(test, control, make_measure(kind, p, q, eps)).value;
    }, py::arg("test"), py::arg("control"), py::arg("kind") = "euclidean", py::arg("p") = 3.0,
       py::arg("quantization") = 1, py::arg("epsilon") = 1e-9);

    m.def("nine_grid_color", [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> img,
                                std::uint64_t seed, int cluster_size, double variance) {
        vision::SamplingSpec spec;
        spec.rng_seed = seed;
        spec.cluster_size = cluster_size;
        spec.cluster_variance = variance;
        return vision::nine_grid_color(raster_from(img), spec);
    }, py::arg("image"), py::arg("seed") = 0, py::arg("cluster_size") = 100, py::arg("variance") = 80.0);

    m.def("synthetic_frame", [](double day, double total_days, double gain, std::uint64_t seed) {
        const auto img = vision::generate_synthetic_frame(day, total_days, gain, seed);
        py::array_t<std::uint8_t> a({img.height(), img.width(), 3});
        auto w = a.mutable_unchecked<3>();
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                const auto px = img.at(x, y);
                for (int c = 0; c < 3; ++c) w(y, x, c) = px[c];
            }
        }
        return a;
    }, py::arg("day"), py::arg("total_days"), py::arg("gain") = 1.0, py::arg("seed") = 0);

    m.def("fit", [](const std::vector<double>& days, const std::vector<double>& diffs, int degree,
                    const std::string& kind) {
        if (days.size() != diffs.size()) throw Error(ErrorCode::InvalidArgument, "length mismatch");
        std::vector<regression::Observation> obs;
        for (std::size_t i = 0; i < days.size(); ++i) obs.push_back({days[i], diffs[i]});
        similarity::Measure meas;
        meas.kind = similarity::parse_measure_kind(kind);
        return model_dict(regression::fit(obs, degree, meas));
    }, py::arg("days"), py::arg("differences"), py::arg("degree"), py::arg("measure") = "euclidean");

    m.def("estimate_age", [](const py::dict& model, double difference) {
        return regression::estimate_age(model_from(model), difference).day;
    }, py::arg("model"), py::arg("difference"));
}
