#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "pbrkit/fileutil.hpp"
#include "pbrkit/image.hpp"
#include "pbrkit/piping.hpp"
#include "pbrkit/polyhedra.hpp"
#include "pbrkit/random.hpp"
#include "pbrkit/regression.hpp"
#include "pbrkit/similarity.hpp"
#include "pbrkit/vision.hpp"
#include "svg.hpp"

namespace pbrkit::cli {

namespace fs = std::filesystem;
using polyhedra::CellClass;

namespace {

// 28-brick demonstrator: 4 rows of 7 cells, 3 ft by 5 ft.
constexpr int kDemoRows = 4;
constexpr int kDemoCellsPerRow = 7;
constexpr double kDemoWidthFt = 5.0;
constexpr double kDemoHeightFt = 3.0;

std::string num(double v, int digits = 6) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

struct Context {
    ToolkitConfig cfg;
    std::uint64_t seed = 1;
    fs::path out_dir;
    std::ostream& out;
    std::ostream& err;
};

void write_text(const Context& ctx, const fs::path& rel, std::string_view text) {
    write_file_atomic(ctx.out_dir / rel, text);
}

// ---------------------------------------------------------------- geometry

std::string property_line(const polyhedra::PropertyRecord& p) {
    return "shape=" + std::string(polyhedra::to_string(p.shape)) +
           " V=" + std::to_string(p.vertex_count) + " E=" + std::to_string(p.side_count) +
           " F=" + std::to_string(p.surface_count) +
           " base=" + std::string(polyhedra::to_string(p.base_polygon)) +
           " angle=" + num(p.interior_angle_deg) + " ratio=" + num(p.height_side_ratio) +
           " parallel=" + yes_no(p.surfaces_parallel);
}

std::string symmetry_line(const polyhedra::Mesh& mesh) {
    using polyhedra::SymmetryView;
    std::string s;
    for (auto [view, name] : {std::pair{SymmetryView::solid, "solid"},
                              std::pair{SymmetryView::elevation, "elevation"},
                              std::pair{SymmetryView::plan, "plan"}}) {
        const auto r = polyhedra::symmetry_check(mesh, view);
        if (!s.empty()) s += ' ';
        s += std::string(name) + "_axisymmetric=" + yes_no(r.axisymmetric) + " " + name +
             "_centrosymmetric=" + yes_no(r.centrosymmetric);
    }
    return s;
}

int cmd_geometry_properties(Context& ctx, const std::string& shape) {
    if (shape.empty()) {
        for (auto s : polyhedra::kAllShapes) {
            ctx.out << property_line(polyhedra::polyhedron_properties(s)) << '\n';
        }
    } else {
        ctx.out << property_line(polyhedra::polyhedron_properties(polyhedra::parse_shape(shape)))
                << '\n';
    }
    return 0;
}

int cmd_geometry_generate(Context& ctx, std::optional<double> angle, std::optional<double> ratio,
                          std::optional<double> height, bool equilateral) {
    const auto& g = ctx.cfg.geometry;
    polyhedra::CellParams params;
    params.angle_difference_deg = angle.value_or(g.angle);
    params.side_ratio = ratio.value_or(g.ratio);
    params.height = height.value_or(g.heights.front());
    if (equilateral) params = polyhedra::equilateral_adjust(params, polyhedra::SolveFor::height);
    const auto cell = polyhedra::generate_cell(params);
    polyhedra::export_mesh(cell.mesh, ctx.out_dir / "cell.obj");

    const auto edges = polyhedra::edge_lengths(cell.mesh);
    const auto [emin, emax] = std::minmax_element(edges.begin(), edges.end());

    std::string report = "# regular polyhedra\n";
    for (auto s : polyhedra::kAllShapes) {
        report += property_line(polyhedra::polyhedron_properties(s)) + "\n";
    }
    report += "# cell\n";
    report += "angle=" + num(params.angle_difference_deg) + " ratio=" + num(params.side_ratio) +
              " height=" + num(cell.height, 10) + " width=" + num(cell.width, 10) + "\n";
    report += "V=" + std::to_string(cell.mesh.vertices.size()) +
              " E=" + std::to_string(polyhedra::mesh_edges(cell.mesh).size()) +
              " F=" + std::to_string(cell.mesh.faces.size()) + " edge_min=" + num(*emin, 10) +
              " edge_max=" + num(*emax, 10) + "\n";
    report += symmetry_line(cell.mesh) + "\n";

    report += "# canonical cells\n";
    std::vector<double> heights = height ? std::vector<double>{params.height} : g.heights;
    if (equilateral) heights = {params.height};
    for (std::size_t h = 0; h < heights.size(); ++h) {
        polyhedra::CellFamilyConfig fam;
        fam.height = heights[h];
        fam.widths = g.widths;
        fam.angle_difference_deg = params.angle_difference_deg;
        fam.side_ratio = params.side_ratio;
        const auto cells = polyhedra::canonical_cells(fam);
        const std::string suffix = heights.size() > 1 ? "_h" + std::to_string(h + 1) : "";
        for (const auto& c : cells) {
            const std::string name = "cell_" + std::string(polyhedra::to_string(c.cell_class)) + suffix;
            polyhedra::export_mesh(c.mesh, ctx.out_dir / (name + ".obj"));
            report += name + " class=" + std::string(polyhedra::to_string(c.cell_class)) +
                      " height=" + num(c.height, 10) + " width=" + num(c.width, 10) + "\n";
        }
    }
    write_text(ctx, "properties.txt", report);
    ctx.out << report;
    return 0;
}

int cmd_geometry_sweep(Context& ctx) {
    Table t{{"angle", "ratio", "vertices", "edges", "faces", "solid_axisymmetric",
             "solid_centrosymmetric", "elevation_axisymmetric", "elevation_centrosymmetric",
             "plan_axisymmetric", "plan_centrosymmetric"},
            {}};
    for (double angle : {0.0, 15.0, 30.0, 45.0}) {
        for (double ratio : {1.0, std::sqrt(2.0)}) {
            polyhedra::CellParams p;
            p.angle_difference_deg = angle;
            p.side_ratio = ratio;
            p.height = ctx.cfg.geometry.heights.front();
            const auto cell = polyhedra::generate_cell(p);
            std::vector<std::string> row{num(angle), num(ratio),
                                         std::to_string(cell.mesh.vertices.size()),
                                         std::to_string(polyhedra::mesh_edges(cell.mesh).size()),
                                         std::to_string(cell.mesh.faces.size())};
            for (auto view : {polyhedra::SymmetryView::solid, polyhedra::SymmetryView::elevation,
                              polyhedra::SymmetryView::plan}) {
                const auto r = polyhedra::symmetry_check(cell.mesh, view);
                row.push_back(r.axisymmetric ? "1" : "0");
                row.push_back(r.centrosymmetric ? "1" : "0");
            }
            t.rows.push_back(std::move(row));
        }
    }
    const auto text = write_csv(t);
    write_text(ctx, "sweep.csv", text);
    ctx.out << text;
    return 0;
}

int cmd_geometry_adjust(Context& ctx, std::optional<double> angle, std::optional<double> ratio,
                        const std::string& solve_for) {
    polyhedra::CellParams p;
    p.angle_difference_deg = angle.value_or(ctx.cfg.geometry.angle);
    p.side_ratio = ratio.value_or(ctx.cfg.geometry.ratio);
    p.height = ctx.cfg.geometry.heights.front();
    const auto mode = solve_for == "ratio" ? polyhedra::SolveFor::side_ratio : polyhedra::SolveFor::height;
    const auto adjusted = polyhedra::equilateral_adjust(p, mode);
    const auto cell = polyhedra::generate_cell(adjusted);
    const auto edges = polyhedra::edge_lengths(cell.mesh);
    const auto [emin, emax] = std::minmax_element(edges.begin(), edges.end());
    ctx.out << "angle=" << num(adjusted.angle_difference_deg) << " ratio=" << num(adjusted.side_ratio, 12)
            << " height=" << num(adjusted.height, 12) << " edge_spread=" << num(*emax - *emin, 3)
            << '\n';
    polyhedra::export_mesh(cell.mesh, ctx.out_dir / "cell_equilateral.obj");
    return 0;
}

int cmd_geometry_dual(Context& ctx, const std::string& shape_name) {
    const auto shape = polyhedra::parse_shape(shape_name);
    const auto solid = polyhedra::regular_solid(shape);
    const auto dual = polyhedra::dual_polyhedron(solid);
    const bool round_trip = polyhedra::similar_meshes(polyhedra::dual_polyhedron(dual), solid, 1e-9);
    polyhedra::export_mesh(solid, ctx.out_dir / (shape_name + ".obj"));
    polyhedra::export_mesh(dual, ctx.out_dir / (shape_name + "_dual.obj"));
    ctx.out << "shape=" << shape_name << " dual_V=" << dual.vertices.size()
            << " dual_E=" << polyhedra::mesh_edges(dual).size() << " dual_F=" << dual.faces.size()
            << " dual_of_dual_similar=" << yes_no(round_trip) << '\n';
    return 0;
}

// -------------------------------------------------------------------- wall

struct WallOptions {
    std::string scenario;
    std::optional<double> width;
    std::optional<int> rows;
    std::optional<int> cells;
    std::optional<std::string> mode;
    std::optional<double> offset;
};

assembly::MagnetSpec magnet_spec(const MagnetSection& m) {
    try {
        return assembly::MagnetSpec(m.normal_hold_force, m.tangential_slide_force,
                                    m.magnets_per_interface, m.cell_weight);
    } catch (const Error& e) {
        config_error(std::string("wall.magnets: ") + e.what());
    }
}

int cmd_wall_plan(Context& ctx, const WallOptions& o) {
    const auto& cfg = ctx.cfg;
    const auto& gw = cfg.geometry.widths;
    const assembly::WidthMap widths{{CellClass::A, gw[0]}, {CellClass::B, gw[1]}, {CellClass::C, gw[2]}};

    int rows = o.rows.value_or(cfg.wall.rows);
    std::optional<std::size_t> cells;
    if (auto c = o.cells ? o.cells : cfg.wall.cells_per_row) cells = static_cast<std::size_t>(*c);
    double target = o.width.value_or(cfg.wall.target_width);
    auto mode = assembly::parse_stacking_mode(o.mode.value_or(cfg.wall.stacking));
    double offset = o.offset.value_or(cfg.wall.row_offset);
    double scale = cfg.wall.unit_scale;
    double cell_height = cfg.geometry.heights.front();

    if (o.scenario == "paper-demo") {
        rows = kDemoRows;
        cells = kDemoCellsPerRow;
        target = kDemoCellsPerRow * gw[1];  // B is the mean width of the family
        mode = assembly::StackingMode::vertical;
        offset = 0.0;
        scale = kDemoWidthFt / target;
        cell_height = kDemoHeightFt / kDemoRows / scale;
    } else if (!o.scenario.empty()) {
        config_error("unknown scenario '" + o.scenario + "' (known: paper-demo)");
    }
    if (rows <= 0) config_error("rows must be positive");

    std::vector<assembly::RowPlan> plans;
    for (int r = 0; r < rows; ++r) {
        plans.push_back(assembly::tessellate_row(target, widths, cfg.wall.tolerance,
                                                 derive_seed(ctx.seed, static_cast<std::uint64_t>(r)),
                                                 cells));
    }
    auto layout = assembly::stack_rows(plans, mode, offset);
    const std::size_t n = layout.cell_instances.size();

    std::vector<PipeType> pipes = cfg.piping.pipes.empty() ? spine_pipes(layout) : cfg.piping.pipes;
    if (pipes.size() != n) {
        throw Error(ErrorCode::InvalidArgument,
                    "piping.pipes lists " + std::to_string(pipes.size()) + " pipes but the wall has " +
                        std::to_string(n) + " cells");
    }
    std::vector<piping::PortTemplate> templates;
    for (auto p : pipes) templates.push_back(piping::PortTemplate::standard(p));
    piping::CouplingOptions coupling;
    coupling.vertical = cfg.piping.vertical_coupling;
    const auto solutions = piping::solve_configurations(layout, templates, cfg.piping.pump,
                                                        cfg.piping.solution_limit, coupling);
    if (solutions.empty()) {
        throw Error(ErrorCode::NoSolution, "no pipe rotation lets the pump reach every cell");
    }
    for (std::size_t i = 0; i < n; ++i) layout.cell_instances[i].rotation_step = solutions[0][i];

    polyhedra::CellFamilyConfig fam;
    fam.height = cell_height;
    fam.widths = gw;
    fam.angle_difference_deg = cfg.geometry.angle;
    fam.side_ratio = cfg.geometry.ratio;
    std::map<CellClass, polyhedra::Mesh> meshes;
    for (const auto& c : polyhedra::canonical_cells(fam)) meshes[c.cell_class] = c.mesh;
    const bool interfaces_ok = assembly::interface_check(layout, meshes);

    const auto bom = assembly::bill_of_materials(layout, cell_height, scale, pipes);
    const auto magnets = magnet_spec(cfg.wall.magnets);
    const auto removal = assembly::removal_feasibility(magnets, cfg.wall.magnets.user_slide_force);

    std::string sol_text;
    for (std::size_t s = 0; s < solutions.size(); ++s) {
        if (s == 0) {
            sol_text = write_solution(solutions[s]);
        } else {
            write_text(ctx, "solution_" + std::to_string(s + 1) + ".csv", write_solution(solutions[s]));
        }
    }
    write_text(ctx, "bom.csv", write_bom(bom.counts));
    write_text(ctx, "solution.csv", sol_text);

    Table lt{{"instance", "row", "class", "x", "width", "pipe", "rotation_step"}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = layout.cell_instances[i];
        lt.rows.push_back({std::to_string(i), std::to_string(c.row_index),
                           std::string(polyhedra::to_string(c.cell_class)), format_number(c.x_position),
                           format_number(c.width), std::string(to_string(pipes[i])),
                           std::to_string(c.rotation_step)});
    }
    write_text(ctx, "layout.csv", write_csv(lt));

    const auto art = piping::render_ascii(layout, templates, solutions[0], cfg.piping.pump, coupling);
    write_text(ctx, "wall.txt", art);

    std::string s;
    s += "scenario=" + (o.scenario.empty() ? std::string("config") : o.scenario) + "\n";
    s += "rows=" + std::to_string(rows) + " target_width=" + num(target) +
         " stacking=" + std::string(assembly::to_string(mode)) + " row_offset=" + num(offset) + "\n";
    s += "total_cells=" + std::to_string(bom.total_cells);
    for (auto cls : polyhedra::kAllCellClasses) {
        auto it = bom.counts.find(cls);
        s += " " + std::string(polyhedra::to_string(cls)) + "=" +
             std::to_string(it == bom.counts.end() ? 0 : it->second);
    }
    s += "\npipes:";
    for (auto p : kAllPipeTypes) {
        auto it = bom.pipe_type_counts.find(p);
        s += " " + std::string(to_string(p)) + "=" +
             std::to_string(it == bom.pipe_type_counts.end() ? 0 : it->second);
    }
    s += "\nunit_scale=" + num(scale) + " cell_height=" + num(cell_height) + "\n";
    s += "dims_ft width=" + num(bom.width) + " height=" + num(bom.height) + "\n";
    s += "pump=" + std::to_string(cfg.piping.pump.instance) + ":" +
         std::string(piping::to_string(cfg.piping.pump.face)) +
         " solutions_found=" + std::to_string(solutions.size()) + " all_reached=yes\n";
    s += std::string("interfaces_straight=") + yes_no(interfaces_ok) + "\n";
    s += std::string("magnets holds_structurally=") + yes_no(removal.holds_structurally) +
         " removable_by_slide=" + yes_no(removal.removable_by_slide) + "\n";
    s += "\n" + art;
    write_text(ctx, "summary.txt", s);
    ctx.out << s;
    return 0;
}

int cmd_wall_magnets(Context& ctx, std::optional<double> user_force) {
    const auto& m = ctx.cfg.wall.magnets;
    const auto spec = magnet_spec(m);
    const double f = user_force.value_or(m.user_slide_force);
    const auto r = assembly::removal_feasibility(spec, f);
    ctx.out << "holding_force=" << num(spec.magnets_per_interface() * spec.normal_hold_force())
            << " slide_resistance=" << num(spec.magnets_per_interface() * spec.tangential_slide_force())
            << " weight=" << num(spec.cell_weight()) << " user_force=" << num(f)
            << " holds_structurally=" << yes_no(r.holds_structurally)
            << " removable_by_slide=" << yes_no(r.removable_by_slide) << '\n';
    return 0;
}

// ------------------------------------------------------------------ detect

struct Regions {
    vision::Region test;
    vision::Region control;
};

Regions regions_for(const DetectionSection& d, int width, int height) {
    vision::SyntheticFrameSpec geom;
    geom.width = width;
    geom.height = height;
    return {d.test_region.value_or(geom.test_region()), d.control_region.value_or(geom.control_region())};
}

similarity::Measure measure_with(const DetectionSection& d, similarity::MeasureKind kind) {
    similarity::Measure m = d.measure;
    m.kind = kind;
    return m;
}

struct ImageJob {
    std::string label;
    double day = 0.0;
    std::function<vision::ImageRaster()> load;
};

// Fans the jobs over a small thread pool. Results keep the job order.
std::vector<std::optional<vision::ColorObservation>> extract_all(const Context& ctx,
                                                                 const std::vector<ImageJob>& jobs,
                                                                 std::vector<std::string>& failures) {
    std::vector<std::optional<vision::ColorObservation>> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    const std::uint64_t sample_seed = derive_seed(ctx.seed, 0x5a4d);

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                const auto img = jobs[i].load();
                const auto reg = regions_for(ctx.cfg.detection, img.width(), img.height());
                auto spec = ctx.cfg.detection.sampling;
                spec.rng_seed = derive_seed(sample_seed, i);
                results[i] = vision::extract_observation(img, reg.test, reg.control, jobs[i].day, spec);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t nthreads = std::min<std::size_t>({hw, 8, jobs.size()});
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!results[i]) {
            failures.push_back(jobs[i].label + ": " + errors[i]);
        }
    }
    return results;
}

nlohmann::json model_to_json(const regression::RegressionModel& m) {
    auto finite = [](double v) -> nlohmann::json {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    nlohmann::json out;
    out["measure"] = std::string(similarity::to_string(m.measure.kind));
    out["measure_params"] = {{"minkowski_p", m.measure.minkowski_p},
                             {"hamming_quantization", m.measure.hamming_quantization},
                             {"epsilon", m.measure.epsilon}};
    out["degree"] = m.degree;
    out["coefficients"] = m.coefficients;
    out["day_domain"] = {m.day_min, m.day_max};
    out["rho"] = finite(m.pearson_rho);
    out["r2"] = finite(m.r_squared);
    return out;
}

regression::RegressionModel model_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        regression::RegressionModel m;
        m.measure.kind = similarity::parse_measure_kind(j.at("measure").get<std::string>());
        if (j.contains("measure_params")) {
            const auto& p = j.at("measure_params");
            m.measure.minkowski_p = p.value("minkowski_p", m.measure.minkowski_p);
            m.measure.hamming_quantization = p.value("hamming_quantization", m.measure.hamming_quantization);
            m.measure.epsilon = p.value("epsilon", m.measure.epsilon);
        }
        m.degree = j.at("degree").get<int>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        const auto dom = j.at("day_domain").get<std::vector<double>>();
        if (dom.size() != 2 || !(dom[0] <= dom[1])) throw Error(ErrorCode::IoError, "bad day_domain");
        if (m.coefficients.size() != static_cast<std::size_t>(m.degree) + 1) {
            throw Error(ErrorCode::IoError, "coefficient count does not match degree");
        }
        m.day_min = dom[0];
        m.day_max = dom[1];
        const auto nan = std::numeric_limits<double>::quiet_NaN();
        m.pearson_rho = j.at("rho").is_null() ? nan : j.at("rho").get<double>();
        m.r_squared = j.at("r2").is_null() ? nan : j.at("r2").get<double>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("model file: ") + e.what());
    }
}

std::string alert_line(const regression::AlertResult& a, double day, double difference) {
    return "newest_day=" + num(day) + " difference=" + num(difference) + " estimated_day=" +
           (a.estimated_day ? num(*a.estimated_day) : std::string("none")) +
           " alert=" + yes_no(a.alert) + " message=\"" + a.message + "\"";
}

struct DetectOptions {
    std::optional<int> synthetic;
    std::string manifest;
    std::vector<std::string> measures;
    std::optional<double> p;
    std::optional<int> quantization;
    std::optional<double> epsilon;
};

void apply_measure_flags(DetectionSection& d, const DetectOptions& o) {
    if (o.p) d.measure.minkowski_p = *o.p;
    if (o.quantization) d.measure.hamming_quantization = *o.quantization;
    if (o.epsilon) d.measure.epsilon = *o.epsilon;
}

int cmd_detect_synth(Context& ctx, int days) {
    if (days < 2) config_error("--days must be at least 2");
    const auto& syn = ctx.cfg.detection.synthetic;
    const auto schedule = synthetic_schedule(days, syn, ctx.seed);
    std::vector<ManifestEntry> manifest;
    for (const auto& f : schedule) {
        const auto img = vision::generate_synthetic_frame(f.day, days, f.gain, f.seed, syn.frame);
        vision::write_png(img, ctx.out_dir / "frames" / f.name);
        manifest.push_back({"frames/" + f.name, f.day});
    }
    write_text(ctx, "manifest.csv", write_manifest(manifest));
    ctx.out << "frames=" << schedule.size() << " manifest=manifest.csv\n";
    return 0;
}

int cmd_detect_run(Context& ctx, const DetectOptions& o) {
    auto& det = ctx.cfg.detection;
    apply_measure_flags(det, o);

    std::vector<ImageJob> jobs;
    if (o.synthetic) {
        const int days = *o.synthetic;
        if (days < 2) config_error("--synthetic needs at least 2 days");
        const auto syn = det.synthetic;
        for (const auto& f : synthetic_schedule(days, syn, ctx.seed)) {
            jobs.push_back({f.name, f.day, [f, days, syn] {
                                return vision::generate_synthetic_frame(f.day, days, f.gain, f.seed,
                                                                        syn.frame);
                            }});
        }
    } else {
        const fs::path mpath = o.manifest;
        const auto entries = parse_manifest(read_file(mpath));
        if (entries.empty()) config_error("manifest lists no images: " + mpath.string());
        const fs::path base = mpath.parent_path();
        for (const auto& e : entries) {
            const fs::path p = fs::path(e.path).is_absolute() ? fs::path(e.path) : base / e.path;
            jobs.push_back({e.path, e.capture_day, [p] { return vision::read_png(p); }});
        }
    }

    std::vector<std::string> failures;
    const auto results = extract_all(ctx, jobs, failures);
    for (const auto& f : failures) ctx.err << "warning: skipped image " << f << '\n';
    if (failures.size() * 2 > jobs.size()) {
        throw Error(ErrorCode::IoError, std::to_string(failures.size()) + " of " +
                                            std::to_string(jobs.size()) + " images failed");
    }
    std::vector<vision::ColorObservation> obs;
    for (const auto& r : results) {
        if (r) obs.push_back(*r);
    }
    std::stable_sort(obs.begin(), obs.end(), [](const auto& a, const auto& b) { return a.day < b.day; });
    write_text(ctx, "observations.csv", write_observations(obs));

    // Signed differences for every measure.
    DifferenceTable diffs;
    for (auto k : similarity::kAllMeasureKinds) diffs.measures.emplace_back(similarity::to_string(k));
    for (const auto& ob : obs) {
        diffs.days.push_back(ob.day);
        std::vector<double> row;
        for (auto k : similarity::kAllMeasureKinds) {
            try {
                row.push_back(similarity::signed_difference(ob.test_rgb, ob.control_rgb, measure_with(det, k)).value);
            } catch (const Error&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        diffs.values.push_back(std::move(row));
    }
    write_text(ctx, "differences.csv", write_differences(diffs));

    std::vector<FitRow> matrix;
    std::map<similarity::MeasureKind, std::vector<regression::RegressionModel>> models;
    for (std::size_t mi = 0; mi < similarity::kAllMeasureKinds.size(); ++mi) {
        const auto kind = similarity::kAllMeasureKinds[mi];
        std::vector<regression::Observation> series;
        for (std::size_t i = 0; i < obs.size(); ++i) {
            if (!std::isnan(diffs.values[i][mi])) series.push_back({diffs.days[i], diffs.values[i][mi]});
        }
        for (int degree = 1; degree <= 3; ++degree) {
            FitRow row;
            row.measure = diffs.measures[mi];
            row.degree = degree;
            try {
                const auto m = regression::fit(series, degree, measure_with(det, kind));
                row.rho = m.pearson_rho;
                row.r2 = m.r_squared;
                row.day_min = m.day_min;
                row.day_max = m.day_max;
                row.coefficients = m.coefficients;
                models[kind].push_back(m);
            } catch (const Error& e) {
                row.rho = row.r2 = std::numeric_limits<double>::quiet_NaN();
                row.error = std::string(to_string(e.code()));
            }
            matrix.push_back(std::move(row));
        }
    }
    write_text(ctx, "fit_matrix.csv", write_fit_matrix(matrix));

    std::vector<similarity::MeasureKind> selected;
    for (const auto& name : o.measures) selected.push_back(similarity::parse_measure_kind(name));
    if (selected.empty()) selected.push_back(det.measure.kind);

    std::string summary = "images=" + std::to_string(jobs.size()) +
                          " extracted=" + std::to_string(obs.size()) +
                          " failed=" + std::to_string(failures.size()) + "\n";
    for (auto k : selected) {
        for (const auto& row : matrix) {
            if (row.measure != similarity::to_string(k)) continue;
            summary += "fit measure=" + row.measure + " degree=" + std::to_string(row.degree) +
                       " rho=" + num(row.rho) + " r2=" + num(row.r2) +
                       (row.error.empty() ? "" : " error=" + row.error) + "\n";
        }
    }

    const auto primary = selected.front();
    const auto it = models.find(primary);
    if (it == models.end() || it->second.empty()) {
        throw Error(ErrorCode::InsufficientData,
                    "no model could be fitted for " + std::string(similarity::to_string(primary)));
    }
    const auto& best = regression::select_model(it->second);
    write_text(ctx, "model.json", model_to_json(best).dump(2) + "\n");
    summary += "model measure=" + std::string(similarity::to_string(primary)) +
               " degree=" + std::to_string(best.degree) + " r2=" + num(best.r_squared) + "\n";

    // Newest frame: highest day, last one on ties.
    std::size_t newest = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs[i].day >= obs[newest].day) newest = i;
    }
    const std::size_t mi = static_cast<std::size_t>(
        std::find(similarity::kAllMeasureKinds.begin(), similarity::kAllMeasureKinds.end(), primary) -
        similarity::kAllMeasureKinds.begin());
    const double diff = diffs.values[newest][mi];
    const auto alert = regression::check_alert(det.alert, best, diff);
    const auto line = alert_line(alert, obs[newest].day, diff);
    summary += line + "\n";
    write_text(ctx, "alert.txt", line + "\n");
    write_text(ctx, "summary.txt", summary);
    ctx.out << summary;
    return 0;
}

int cmd_detect_estimate(Context& ctx, const std::string& model_path, const std::string& image_path) {
    const auto model = model_from_json(read_file(model_path));
    const auto img = vision::read_png(image_path);
    const auto reg = regions_for(ctx.cfg.detection, img.width(), img.height());
    auto spec = ctx.cfg.detection.sampling;
    spec.rng_seed = derive_seed(derive_seed(ctx.seed, 0x5a4d), 0);
    const auto ob = vision::extract_observation(img, reg.test, reg.control, 0.0, spec);
    const double diff = similarity::signed_difference(ob.test_rgb, ob.control_rgb, model.measure).value;
    const auto a = regression::check_alert(ctx.cfg.detection.alert, model, diff);
    ctx.out << "difference=" << num(diff) << " estimated_day="
            << (a.estimated_day ? num(*a.estimated_day) : std::string("none"))
            << " alert=" << yes_no(a.alert) << " message=\"" << a.message << "\"\n";
    return 0;
}

// ------------------------------------------------------------------ report

int cmd_report(Context& ctx, const std::string& input, std::vector<std::string> measures,
               std::vector<int> degrees) {
    const fs::path in = input;
    if (!fs::exists(in / "differences.csv") || !fs::exists(in / "fit_matrix.csv")) {
        throw Error(ErrorCode::IoError, "no data: expected differences.csv and fit_matrix.csv in " +
                                            in.string());
    }
    const auto diffs = parse_differences(read_file(in / "differences.csv"));
    const auto fits = parse_fit_matrix(read_file(in / "fit_matrix.csv"));
    if (diffs.days.empty() || fits.empty()) throw Error(ErrorCode::IoError, "no data in " + in.string());

    if (measures.empty()) measures = diffs.measures;
    if (degrees.empty()) degrees = {1, 2, 3};
    for (const auto& m : measures) similarity::parse_measure_kind(m);
    for (int d : degrees) {
        if (d < 1 || d > 3) throw Error(ErrorCode::InvalidArgument, "degree must be 1, 2 or 3");
    }

    std::string table = "measure        deg    rho        r2\n";
    int plots = 0;
    for (const auto& m : measures) {
        const auto col = std::find(diffs.measures.begin(), diffs.measures.end(), m);
        if (col == diffs.measures.end()) throw Error(ErrorCode::IoError, "measure " + m + " not in data");
        const auto ci = static_cast<std::size_t>(col - diffs.measures.begin());
        for (int d : degrees) {
            const auto f = std::find_if(fits.begin(), fits.end(),
                                        [&](const FitRow& r) { return r.measure == m && r.degree == d; });
            if (f == fits.end()) throw Error(ErrorCode::IoError, "fit " + m + "/" + std::to_string(d) + " missing");
            Plot plot;
            plot.title = m + ", degree " + std::to_string(d) + "  (R2 " + num(f->r2, 4) + ")";
            for (std::size_t i = 0; i < diffs.days.size(); ++i) {
                plot.points.emplace_back(diffs.days[i], diffs.values[i][ci]);
            }
            if (f->error.empty()) {
                regression::RegressionModel model;
                model.degree = d;
                model.coefficients = f->coefficients;
                for (int k = 0; k <= 100; ++k) {
                    const double x = f->day_min + (f->day_max - f->day_min) * k / 100.0;
                    plot.curve.emplace_back(x, model.evaluate(x));
                }
            }
            write_text(ctx, fs::path("plots") / (m + "_deg" + std::to_string(d) + ".svg"), render_svg(plot));
            ++plots;
            char line[128];
            std::snprintf(line, sizeof line, "%-14s %3d %10s %10s\n", m.c_str(), d, num(f->rho, 5).c_str(),
                          num(f->r2, 5).c_str());
            table += line;
        }
    }
    write_text(ctx, "report.txt", table);
    ctx.out << table << "plots=" << plots << '\n';
    return 0;
}

void print_error(std::ostream& err, std::string_view code, const std::string& message) {
    std::string flat = message;
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    err << "error: code=" << code << " message=" << flat << '\n';
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::OffsetInVerticalMode:
        case ErrorCode::InvalidMagnetSpec:
        case ErrorCode::InvalidSamplingSpec:
        case ErrorCode::InvalidWidths:
            return 2;
        default:
            return 1;
    }
}

std::vector<PipeType> spine_pipes(const assembly::WallLayout& layout) {
    std::map<int, int> first;  // row -> instance with the smallest x
    const auto& cells = layout.cell_instances;
    int top = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const int r = cells[i].row_index;
        top = std::max(top, r);
        auto it = first.find(r);
        if (it == first.end() || cells[i].x_position < cells[it->second].x_position) first[r] = static_cast<int>(i);
    }
    std::vector<PipeType> pipes(cells.size(), PipeType::straight);
    if (first.size() < 2) return pipes;
    for (const auto& [r, i] : first) {
        pipes[i] = r == 0 ? PipeType::cross : r == top ? PipeType::elbow : PipeType::tee;
    }
    return pipes;
}

std::uint64_t resolve_seed(const std::string& flag_value, const ToolkitConfig& cfg) {
    auto parse = [](const std::string& s, const char* what) {
        try {
            std::size_t pos = 0;
            if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
            const auto v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return static_cast<std::uint64_t>(v);
        } catch (const std::logic_error&) {
            config_error(std::string(what) + " must be a non-negative integer, got '" + s + "'");
        }
    };
    if (!flag_value.empty()) return parse(flag_value, "--seed");
    if (cfg.io.seed) return *cfg.io.seed;
    if (const char* env = std::getenv("PBRKIT_SEED"); env && *env) return parse(env, "PBRKIT_SEED");
    return 1;
}

std::vector<SyntheticFrame> synthetic_schedule(int days, const SyntheticSection& syn, std::uint64_t seed) {
    std::vector<SyntheticFrame> out;
    std::size_t idx = 0;
    for (int d = 1; d <= days; ++d) {
        for (int f = 0; f < syn.frames_per_day; ++f, ++idx) {
            char name[48];
            std::snprintf(name, sizeof name, "day_%03d_f%d.png", d, f);
            out.push_back({name, static_cast<double>(d), syn.gains[idx % syn.gains.size()],
                           derive_seed(seed, idx)});
        }
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pbrkit: modular photobioreactor facade toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, seed_flag, out_flag;
    app.add_option("--config", config_path, "JSON config (default ./pbrkit.json)");
    app.add_option("--seed", seed_flag, "RNG seed (falls back to io.seed, then $PBRKIT_SEED)");
    app.add_option("--out", out_flag, "output directory (default io.out_dir)");

    std::function<int(Context&)> action;

    // geometry
    auto* geo = app.add_subcommand("geometry", "polyhedra and cell meshes");
    geo->require_subcommand(1);
    std::string shape;
    auto* g_props = geo->add_subcommand("properties", "regular polyhedron properties");
    g_props->add_option("--shape", shape, "tetrahedron|hexahedron|octahedron|dodecahedron");
    g_props->callback([&] { action = [&](Context& c) { return cmd_geometry_properties(c, shape); }; });

    std::optional<double> angle, ratio, height;
    bool equilateral = false;
    auto* g_gen = geo->add_subcommand("generate", "write cell OBJ meshes and a properties report");
    g_gen->add_option("--angle", angle, "twist between bottom and top square, degrees");
    g_gen->add_option("--ratio", ratio, "top/bottom side ratio");
    g_gen->add_option("--height", height, "cell height");
    g_gen->add_flag("--equilateral", equilateral, "adjust height so all edges are equal");
    g_gen->callback([&] {
        action = [&](Context& c) { return cmd_geometry_generate(c, angle, ratio, height, equilateral); };
    });

    auto* g_sweep = geo->add_subcommand("sweep", "angle x ratio symmetry grid");
    g_sweep->callback([&] { action = [&](Context& c) { return cmd_geometry_sweep(c); }; });

    std::string solve_for = "height";
    auto* g_adj = geo->add_subcommand("adjust", "solve for an equilateral cell");
    g_adj->add_option("--angle", angle);
    g_adj->add_option("--ratio", ratio);
    g_adj->add_option("--solve-for", solve_for)->check(CLI::IsMember({"height", "ratio"}));
    g_adj->callback([&] { action = [&](Context& c) { return cmd_geometry_adjust(c, angle, ratio, solve_for); }; });

    auto* g_dual = geo->add_subcommand("dual", "dual of a regular solid");
    g_dual->add_option("--shape", shape)->required();
    g_dual->callback([&] { action = [&](Context& c) { return cmd_geometry_dual(c, shape); }; });

    // wall
    auto* wall = app.add_subcommand("wall", "tessellation, piping and bill of materials");
    wall->require_subcommand(1);
    WallOptions wopt;
    auto* w_plan = wall->add_subcommand("plan", "plan rows, stack them and solve the pipe rotations");
    w_plan->add_option("--scenario", wopt.scenario, "named scenario (paper-demo)");
    w_plan->add_option("--width", wopt.width, "target row width, model units");
    w_plan->add_option("--rows", wopt.rows);
    w_plan->add_option("--cells", wopt.cells, "exact cells per row");
    w_plan->add_option("--mode", wopt.mode)->check(CLI::IsMember({"vertical", "diagonal"}));
    w_plan->add_option("--offset", wopt.offset, "per-row shift in diagonal mode");
    w_plan->callback([&] { action = [&](Context& c) { return cmd_wall_plan(c, wopt); }; });

    std::optional<double> user_force;
    auto* w_mag = wall->add_subcommand("magnets", "magnet hold / slide feasibility");
    w_mag->add_option("--user-force", user_force, "slide force the user can apply, N");
    w_mag->callback([&] { action = [&](Context& c) { return cmd_wall_magnets(c, user_force); }; });

    // detect
    auto* det = app.add_subcommand("detect", "algae colour detection");
    det->require_subcommand(1);
    int synth_days = 30;
    auto* d_synth = det->add_subcommand("synth", "write synthetic aging frames and a manifest");
    d_synth->add_option("--days", synth_days);
    d_synth->callback([&] { action = [&](Context& c) { return cmd_detect_synth(c, synth_days); }; });

    DetectOptions dopt;
    auto* d_run = det->add_subcommand("run", "extract, measure, fit and alert");
    auto* src_syn = d_run->add_option("--synthetic", dopt.synthetic, "generate N synthetic days in memory");
    auto* src_man = d_run->add_option("--manifest", dopt.manifest, "CSV of path,capture_day");
    src_syn->excludes(src_man);
    d_run->add_option("--measure", dopt.measures, "measure(s); the first drives model and alert");
    d_run->add_option("--p", dopt.p, "Minkowski order");
    d_run->add_option("--quantization", dopt.quantization, "Hamming quantization step");
    d_run->add_option("--epsilon", dopt.epsilon, "Kulczynski denominator floor");
    d_run->callback([&] {
        action = [&](Context& c) {
            if (!dopt.synthetic && dopt.manifest.empty()) {
                config_error("detect run needs --synthetic N or --manifest FILE");
            }
            return cmd_detect_run(c, dopt);
        };
    });

    std::string model_path, image_path;
    auto* d_est = det->add_subcommand("estimate", "estimate algae age from one image");
    d_est->add_option("--model", model_path)->required();
    d_est->add_option("--image", image_path)->required();
    d_est->callback([&] {
        action = [&](Context& c) { return cmd_detect_estimate(c, model_path, image_path); };
    });

    // report
    std::string report_in;
    std::vector<std::string> report_measures;
    std::vector<int> report_degrees;
    auto* rep = app.add_subcommand("report", "SVG plots and a text table from a detect run");
    rep->add_option("--input", report_in, "directory written by detect run")->required();
    rep->add_option("--measure", report_measures);
    rep->add_option("--degree", report_degrees);
    rep->callback([&] {
        action = [&](Context& c) { return cmd_report(c, report_in, report_measures, report_degrees); };
    });

    std::vector<std::string> argv_store{"pbrkit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        print_error(err, "UsageError", e.what());
        return 2;
    }

    try {
        const auto cfg = load_config(config_path.empty() ? std::nullopt
                                                         : std::optional<fs::path>(config_path));
        Context ctx{cfg, resolve_seed(seed_flag, cfg), out_flag.empty() ? fs::path(cfg.io.out_dir) : fs::path(out_flag),
                    out, err};
        return action(ctx);
    } catch (const Error& e) {
        print_error(err, to_string(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        print_error(err, "Internal", e.what());
        return 1;
    }
}

}  // namespace pbrkit::cli
