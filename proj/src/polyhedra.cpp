#include "pbrkit/polyhedra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "pbrkit/error.hpp"
#include "pbrkit/fileutil.hpp"

namespace pbrkit::polyhedra {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Vec2 {
    double x;
    double y;
};

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain. Returns indices of strictly extreme points in
// counter-clockwise order; collinear points within `tol` are dropped.
std::vector<int> hull_2d(const std::vector<Vec2>& pts, double tol) {
    std::vector<int> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    if (order.size() < 3) return order;

    std::vector<int> hull(2 * order.size());
    std::size_t k = 0;
    for (int idx : order) {
        while (k >= 2 && cross2(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx]) <= tol) --k;
        hull[k++] = idx;
    }
    const std::size_t lower = k + 1;
    for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
        while (k >= lower && cross2(pts[hull[k - 2]], pts[hull[k - 1]], pts[*it]) <= tol) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

double extent_scale(std::span<const Vec3> pts) {
    double m = 1.0;
    for (const auto& p : pts) m = std::max({m, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    return m;
}

// Unit vector orthogonal to n.
Vec3 any_perpendicular(const Vec3& n) {
    const Vec3 axis = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return normalized(cross(n, axis));
}

bool matches_some(const Vec3& p, const std::vector<Vec3>& set, double tol) {
    return std::any_of(set.begin(), set.end(), [&](const Vec3& q) { return norm(p - q) <= tol; });
}

bool matches_some(const Vec2& p, const std::vector<Vec2>& set, double tol) {
    return std::any_of(set.begin(), set.end(), [&](const Vec2& q) {
        return std::hypot(p.x - q.x, p.y - q.y) <= tol;
    });
}

std::vector<Vec3> normalized_cloud(const std::vector<Vec3>& pts) {
    Vec3 c{};
    for (const auto& p : pts) c += p;
    c *= 1.0 / static_cast<double>(pts.size());
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, norm(p - c));
    std::vector<Vec3> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(r > 0.0 ? (p - c) * (1.0 / r) : p - c);
    return out;
}

std::vector<Vec2> normalized_cloud(const std::vector<Vec2>& pts) {
    Vec2 c{0, 0};
    for (const auto& p : pts) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= static_cast<double>(pts.size());
    c.y /= static_cast<double>(pts.size());
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, std::hypot(p.x - c.x, p.y - c.y));
    std::vector<Vec2> out;
    for (const auto& p : pts) {
        const double s = r > 0.0 ? 1.0 / r : 1.0;
        out.push_back({(p.x - c.x) * s, (p.y - c.y) * s});
    }
    return out;
}

bool mirror_maps_onto(const std::vector<Vec2>& pts, const Vec2& point_on_line, const Vec2& normal,
                      double tol) {
    for (const auto& p : pts) {
        const double s = (p.x - point_on_line.x) * normal.x + (p.y - point_on_line.y) * normal.y;
        const Vec2 r{p.x - 2 * s * normal.x, p.y - 2 * s * normal.y};
        if (!matches_some(r, pts, tol)) return false;
    }
    return true;
}

SymmetryResult symmetry_2d(const std::vector<Vec2>& projected, bool vertical_axis_only,
                           double tol) {
    const auto idx = hull_2d(projected, 1e-12);
    std::vector<Vec2> hull;
    for (int i : idx) hull.push_back(projected[i]);
    const auto pts = normalized_cloud(hull);

    SymmetryResult result;
    result.centrosymmetric = std::all_of(pts.begin(), pts.end(), [&](const Vec2& p) {
        return matches_some(Vec2{-p.x, -p.y}, pts, tol);
    });

    // A mirror of a polygon swaps at least one pair of distinct vertices, so
    // perpendicular bisectors of vertex pairs cover every candidate.
    for (std::size_t i = 0; i < pts.size() && !result.axisymmetric; ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Vec2 d{pts[j].x - pts[i].x, pts[j].y - pts[i].y};
            if (vertical_axis_only) {
                if (std::abs(d.y) > tol) continue;
                d.y = 0.0;
            }
            const double len = std::hypot(d.x, d.y);
            if (len <= tol) continue;
            const Vec2 n{d.x / len, d.y / len};
            const Vec2 mid{(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2};
            if (mirror_maps_onto(pts, mid, n, tol)) {
                result.axisymmetric = true;
                break;
            }
        }
    }
    return result;
}

std::vector<Vec3> square(double side, double angle_rad, double z) {
    const double h = side / 2.0;
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    std::vector<Vec3> out;
    for (const auto& [x, y] : {std::pair{-h, -h}, {h, -h}, {h, h}, {-h, h}}) {
        out.push_back({c * x - s * y, s * x + c * y, z});
    }
    return out;
}

Mesh build_cell_mesh(const CellParams& p) {
    auto pts = square(p.bottom_side, 0.0, 0.0);
    const auto top = square(p.bottom_side * p.side_ratio, p.angle_difference_deg * kDegToRad,
                            p.height);
    pts.insert(pts.end(), top.begin(), top.end());
    return convex_hull(pts);
}

// Signed gap between mean lateral and mean horizontal edge lengths.
double equilateral_gap(const Mesh& mesh) {
    double lateral = 0.0;
    double horizontal = 0.0;
    int nl = 0;
    int nh = 0;
    for (const auto& [a, b] : mesh_edges(mesh)) {
        const Vec3& p = mesh.vertices[a];
        const Vec3& q = mesh.vertices[b];
        const double len = norm(p - q);
        if (std::abs(p.z - q.z) > 1e-12) {
            lateral += len;
            ++nl;
        } else {
            horizontal += len;
            ++nh;
        }
    }
    if (nl == 0 || nh == 0) return std::numeric_limits<double>::quiet_NaN();
    return lateral / nl - horizontal / nh;
}

}  // namespace

std::string_view to_string(Shape shape) {
    switch (shape) {
        case Shape::tetrahedron: return "tetrahedron";
        case Shape::hexahedron: return "hexahedron";
        case Shape::octahedron: return "octahedron";
        case Shape::dodecahedron: return "dodecahedron";
    }
    return "?";
}

std::string_view to_string(BasePolygon polygon) {
    switch (polygon) {
        case BasePolygon::equilateral_triangle: return "equilateral_triangle";
        case BasePolygon::square: return "square";
        case BasePolygon::regular_pentagon: return "regular_pentagon";
    }
    return "?";
}

std::string_view to_string(CellClass cls) {
    switch (cls) {
        case CellClass::A: return "A";
        case CellClass::B: return "B";
        case CellClass::C: return "C";
    }
    return "?";
}

Shape parse_shape(std::string_view name) {
    for (Shape s : kAllShapes) {
        if (to_string(s) == name) return s;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown shape '" + std::string(name) + "'");
}

CellClass parse_cell_class(std::string_view name) {
    for (CellClass c : kAllCellClasses) {
        if (to_string(c) == name) return c;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown cell class '" + std::string(name) + "'");
}

PropertyRecord polyhedron_properties(Shape shape) {
    switch (shape) {
        case Shape::tetrahedron:
            return {shape, 4, 6, 4, BasePolygon::equilateral_triangle, 60.0,
                    std::sqrt(6.0) / 3.0, false};
        case Shape::hexahedron:
            return {shape, 8, 12, 6, BasePolygon::square, 90.0, 1.0, true};
        case Shape::octahedron:
            return {shape, 6, 12, 8, BasePolygon::equilateral_triangle, 60.0, std::sqrt(2.0),
                    true};
        case Shape::dodecahedron:
            return {shape, 20, 30, 12, BasePolygon::regular_pentagon, 108.0,
                    kPhi * kPhi / (2.0 * std::sqrt(3.0 - kPhi)), true};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown shape");
}

std::vector<std::pair<int, int>> mesh_edges(const Mesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& f : mesh.faces) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            int a = f[i];
            int b = f[(i + 1) % f.size()];
            if (a > b) std::swap(a, b);
            edges.emplace(a, b);
        }
    }
    return {edges.begin(), edges.end()};
}

std::vector<double> edge_lengths(const Mesh& mesh) {
    std::vector<double> out;
    for (const auto& [a, b] : mesh_edges(mesh)) {
        out.push_back(norm(mesh.vertices[a] - mesh.vertices[b]));
    }
    return out;
}

Vec3 face_normal(const Mesh& mesh, std::size_t face) {
    const auto& f = mesh.faces.at(face);
    Vec3 n{};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3& a = mesh.vertices[f[i]];
        const Vec3& b = mesh.vertices[f[(i + 1) % f.size()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return normalized(n);
}

Vec3 vertex_centroid(const Mesh& mesh) {
    Vec3 c{};
    for (const auto& v : mesh.vertices) c += v;
    if (!mesh.vertices.empty()) c *= 1.0 / static_cast<double>(mesh.vertices.size());
    return c;
}

void validate_mesh(const Mesh& mesh, double planarity_tol) {
    if (mesh.empty()) throw Error(ErrorCode::InvalidMesh, "mesh has no vertices or faces");
    const double tol = planarity_tol * extent_scale(mesh.vertices);
    const int n = static_cast<int>(mesh.vertices.size());
    for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
        const auto& f = mesh.faces[fi];
        if (f.size() < 3) throw Error(ErrorCode::InvalidMesh, "face with fewer than 3 vertices");
        for (int v : f) {
            if (v < 0 || v >= n) throw Error(ErrorCode::InvalidMesh, "face index out of range");
        }
        const Vec3 normal = face_normal(mesh, fi);
        const double d = dot(normal, mesh.vertices[f[0]]);
        for (int v : f) {
            if (std::abs(dot(normal, mesh.vertices[v]) - d) > tol) {
                throw Error(ErrorCode::InvalidMesh,
                            "face " + std::to_string(fi) + " is not planar");
            }
        }
    }
}

Mesh convex_hull(std::span<const Vec3> input, double tol) {
    const double scale = extent_scale(input);
    const double eps = tol * scale;

    std::vector<Vec3> pts;
    for (const auto& p : input) {
        if (!matches_some(p, pts, eps)) pts.push_back(p);
    }
    const std::size_t n = pts.size();
    if (n < 4) throw Error(ErrorCode::DegenerateHull, "convex hull needs at least 4 points");

    struct Plane {
        Vec3 normal;
        double offset;
    };
    std::vector<Plane> planes;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vec3 c = cross(pts[j] - pts[i], pts[k] - pts[i]);
                if (norm(c) <= 1e-12 * scale * scale) continue;
                Vec3 normal = normalized(c);
                double offset = dot(normal, pts[i]);
                bool above = false;
                bool below = false;
                for (const auto& p : pts) {
                    const double s = dot(normal, p) - offset;
                    above |= s > eps;
                    below |= s < -eps;
                }
                if (above && below) continue;
                if (!above && !below) {
                    throw Error(ErrorCode::DegenerateHull, "all points are coplanar");
                }
                if (above) {
                    normal = -normal;
                    offset = -offset;
                }
                const bool seen = std::any_of(planes.begin(), planes.end(), [&](const Plane& pl) {
                    return norm(pl.normal - normal) < 1e-6;
                });
                if (!seen) planes.push_back({normal, offset});
            }
        }
    }
    if (planes.size() < 4) throw Error(ErrorCode::DegenerateHull, "all points are coplanar");

    std::vector<std::vector<int>> faces;
    std::vector<bool> extreme(n, false);
    for (const auto& pl : planes) {
        std::vector<int> on_plane;
        for (std::size_t p = 0; p < n; ++p) {
            if (std::abs(dot(pl.normal, pts[p]) - pl.offset) <= eps) {
                on_plane.push_back(static_cast<int>(p));
            }
        }
        const Vec3 u = any_perpendicular(pl.normal);
        const Vec3 v = cross(pl.normal, u);
        std::vector<Vec2> flat;
        for (int p : on_plane) flat.push_back({dot(pts[p], u), dot(pts[p], v)});
        const auto loop = hull_2d(flat, eps * scale);
        std::vector<int> face;
        for (int li : loop) {
            face.push_back(on_plane[li]);
            extreme[on_plane[li]] = true;
        }
        faces.push_back(std::move(face));
    }

    Mesh mesh;
    std::vector<int> remap(n, -1);
    for (std::size_t p = 0; p < n; ++p) {
        if (extreme[p]) {
            remap[p] = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(pts[p]);
        }
    }
    for (auto& f : faces) {
        for (int& v : f) v = remap[v];
        std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
    }
    std::sort(faces.begin(), faces.end());
    mesh.faces = std::move(faces);
    return mesh;
}

Mesh regular_solid(Shape shape) {
    std::vector<Vec3> pts;
    switch (shape) {
        case Shape::tetrahedron:
            pts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
            break;
        case Shape::hexahedron:
            for (double x : {-0.5, 0.5})
                for (double y : {-0.5, 0.5})
                    for (double z : {-0.5, 0.5}) pts.push_back({x, y, z});
            break;
        case Shape::octahedron:
            pts = {{0.5, 0, 0}, {-0.5, 0, 0}, {0, 0.5, 0}, {0, -0.5, 0}, {0, 0, 0.5}, {0, 0, -0.5}};
            break;
        case Shape::dodecahedron: {
            const double a = 1.0 / kPhi;
            const double b = kPhi;
            for (double x : {-1.0, 1.0})
                for (double y : {-1.0, 1.0})
                    for (double z : {-1.0, 1.0}) pts.push_back({x, y, z});
            for (double s : {-1.0, 1.0}) {
                for (double t : {-1.0, 1.0}) {
                    pts.push_back({0, s * a, t * b});
                    pts.push_back({s * a, t * b, 0});
                    pts.push_back({s * b, 0, t * a});
                }
            }
            break;
        }
    }
    return convex_hull(pts);
}

Mesh dual_polyhedron(const Mesh& mesh) {
    validate_mesh(mesh);
    const Mesh hull = convex_hull(mesh.vertices);
    const double eps = 1e-9 * extent_scale(mesh.vertices);
    for (const auto& v : mesh.vertices) {
        if (matches_some(v, hull.vertices, eps)) continue;
        bool on_boundary = false;
        for (std::size_t f = 0; f < hull.faces.size() && !on_boundary; ++f) {
            const Vec3 n = face_normal(hull, f);
            on_boundary = std::abs(dot(n, v - hull.vertices[hull.faces[f][0]])) <= eps;
        }
        if (!on_boundary) {
            throw Error(ErrorCode::NonConvexInput, "vertex lies strictly inside the hull");
        }
    }

    std::vector<Vec3> centroids;
    for (const auto& f : mesh.faces) {
        Vec3 c{};
        for (int v : f) c += mesh.vertices[v];
        centroids.push_back(c * (1.0 / static_cast<double>(f.size())));
    }
    return convex_hull(centroids);
}

bool similar_meshes(const Mesh& a, const Mesh& b, double tol) {
    if (a.vertices.size() != b.vertices.size() || a.faces.size() != b.faces.size()) return false;
    if (a.vertices.empty()) return true;
    const auto na = normalized_cloud(a.vertices);
    const auto nb = normalized_cloud(b.vertices);
    std::vector<bool> used(nb.size(), false);
    for (const auto& p : na) {
        bool found = false;
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (!used[j] && norm(p - nb[j]) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

CellGeometry generate_cell(const CellParams& params) {
    if (!(params.height > 0.0) || !(params.bottom_side > 0.0) || !(params.side_ratio > 0.0)) {
        throw Error(ErrorCode::DegenerateCell, "cell height and sides must be positive");
    }
    if (!(params.angle_difference_deg >= 0.0 && params.angle_difference_deg <= 45.0)) {
        throw Error(ErrorCode::InvalidArgument, "angle difference must lie in [0, 45] degrees");
    }
    CellGeometry cell;
    cell.mesh = build_cell_mesh(params);
    cell.params = params;
    double zmin = std::numeric_limits<double>::infinity();
    double zmax = -zmin;
    for (const auto& v : cell.mesh.vertices) {
        zmin = std::min(zmin, v.z);
        zmax = std::max(zmax, v.z);
    }
    cell.height = zmax - zmin;
    cell.width = horizontal_extent(cell.mesh);
    return cell;
}

double horizontal_extent(const Mesh& mesh) {
    if (mesh.vertices.empty()) return 0.0;
    double xmin = mesh.vertices[0].x, xmax = xmin;
    double ymin = mesh.vertices[0].y, ymax = ymin;
    for (const auto& v : mesh.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    return std::max(xmax - xmin, ymax - ymin);
}

SymmetryResult symmetry_check(const Mesh& mesh, SymmetryView view, double tol) {
    if (mesh.vertices.empty()) return {};
    if (view == SymmetryView::elevation || view == SymmetryView::plan) {
        std::vector<Vec2> projected;
        for (const auto& v : mesh.vertices) {
            projected.push_back(view == SymmetryView::elevation ? Vec2{v.x, v.z} : Vec2{v.x, v.y});
        }
        return symmetry_2d(projected, view == SymmetryView::elevation, tol);
    }

    const auto pts = normalized_cloud(mesh.vertices);
    SymmetryResult result;
    result.centrosymmetric = std::all_of(pts.begin(), pts.end(),
                                         [&](const Vec3& p) { return matches_some(-p, pts, tol); });

    // Vertical mirror planes: bisectors of vertex pairs at equal height.
    for (std::size_t i = 0; i < pts.size() && !result.axisymmetric; ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (std::abs(pts[i].z - pts[j].z) > tol) continue;
            const Vec3 d{pts[j].x - pts[i].x, pts[j].y - pts[i].y, 0.0};
            if (norm(d) <= tol) continue;
            const Vec3 n = normalized(d);
            const Vec3 mid = (pts[i] + pts[j]) * 0.5;
            const bool maps = std::all_of(pts.begin(), pts.end(), [&](const Vec3& p) {
                return matches_some(p - 2.0 * dot(p - mid, n) * n, pts, tol);
            });
            if (maps) {
                result.axisymmetric = true;
                break;
            }
        }
    }
    return result;
}

CellParams equilateral_adjust(const CellParams& params, SolveFor solve_for) {
    if (!(params.angle_difference_deg > 0.0)) {
        throw Error(ErrorCode::NoSolution,
                    "untwisted cells have no triangular faces to equalise");
    }
    auto with = [&](double x) {
        CellParams p = params;
        if (solve_for == SolveFor::height) {
            p.height = x;
        } else {
            p.side_ratio = x;
        }
        return p;
    };
    auto gap = [&](double x) { return equilateral_gap(generate_cell(with(x)).mesh); };

    double lo = 1e-6;
    double hi = 10.0 * params.bottom_side;
    double glo = gap(lo);
    const double ghi = gap(hi);
    if (!(glo * ghi < 0.0)) {
        throw Error(ErrorCode::NoSolution, "no sign change in the equilateral bracket");
    }
    for (int iter = 0; iter < 100 && hi - lo > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    const CellParams solved = with(0.5 * (lo + hi));
    const auto lengths = edge_lengths(generate_cell(solved).mesh);
    const auto [mn, mx] = std::minmax_element(lengths.begin(), lengths.end());
    if (*mx - *mn >= 1e-6) {
        throw Error(ErrorCode::NoSolution, "edges cannot all be made equal for these parameters");
    }
    return solved;
}

std::array<CellGeometry, 3> canonical_cells(const CellFamilyConfig& config) {
    const auto& w = config.widths;
    if (!(w[0] > 0.0 && w[0] < w[1] && w[1] < w[2])) {
        throw Error(ErrorCode::InvalidWidths, "cell widths must be positive and strictly increasing");
    }
    CellParams unit{config.angle_difference_deg, config.side_ratio, config.height, 1.0};
    const double unit_width = generate_cell(unit).width;

    std::array<CellGeometry, 3> cells;
    for (std::size_t i = 0; i < 3; ++i) {
        CellParams p = unit;
        p.bottom_side = w[i] / unit_width;
        cells[i] = generate_cell(p);
        cells[i].cell_class = kAllCellClasses[i];
        cells[i].width = w[i];
        cells[i].height = config.height;
    }
    return cells;
}

std::string to_obj(const Mesh& mesh) {
    std::string out = "# pbrkit mesh\n";
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out += buf;
    }
    for (const auto& f : mesh.faces) {
        out += 'f';
        for (int i : f) out += ' ' + std::to_string(i + 1);
        out += '\n';
    }
    return out;
}

Mesh parse_obj(std::string_view text) {
    Mesh mesh;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) throw Error(ErrorCode::IoError, "bad vertex line");
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> face;
            std::string tok;
            while (ls >> tok) {
                const std::string head = tok.substr(0, tok.find('/'));
                int idx = 0;
                const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
                if (ec != std::errc{} || ptr != head.data() + head.size() || idx < 1) {
                    throw Error(ErrorCode::IoError, "unsupported face index '" + tok + "'");
                }
                face.push_back(idx - 1);
            }
            if (face.size() < 3) throw Error(ErrorCode::IoError, "face with fewer than 3 vertices");
            mesh.faces.push_back(std::move(face));
        }
    }
    for (const auto& f : mesh.faces) {
        for (int i : f) {
            if (i >= static_cast<int>(mesh.vertices.size())) {
                throw Error(ErrorCode::IoError, "face refers to a missing vertex");
            }
        }
    }
    return mesh;
}

void export_mesh(const Mesh& mesh, const std::filesystem::path& path) {
    if (mesh.empty()) throw Error(ErrorCode::IoError, "refusing to export an empty mesh");
    write_file_atomic(path, to_obj(mesh));
}

Mesh import_mesh(const std::filesystem::path& path) {
    Mesh mesh = parse_obj(read_file(path));
    if (mesh.empty()) throw Error(ErrorCode::IoError, "no geometry in " + path.string());
    return mesh;
}

}  // namespace pbrkit::polyhedra
