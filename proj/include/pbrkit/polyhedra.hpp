#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbrkit/vec3.hpp"

namespace pbrkit::polyhedra {

enum class Shape { tetrahedron, hexahedron, octahedron, dodecahedron };
enum class BasePolygon { equilateral_triangle, square, regular_pentagon };
enum class CellClass { A, B, C };

inline constexpr std::array<Shape, 4> kAllShapes = {
    Shape::tetrahedron, Shape::hexahedron, Shape::octahedron, Shape::dodecahedron};
inline constexpr std::array<CellClass, 3> kAllCellClasses = {CellClass::A, CellClass::B,
                                                            CellClass::C};

std::string_view to_string(Shape shape);
std::string_view to_string(BasePolygon polygon);
std::string_view to_string(CellClass cls);
Shape parse_shape(std::string_view name);
CellClass parse_cell_class(std::string_view name);

/// Golden ratio, (1 + sqrt 5) / 2.
inline constexpr double kPhi = 1.6180339887498948482;

struct PropertyRecord {
    Shape shape;
    int vertex_count;
    int side_count;
    int surface_count;
    BasePolygon base_polygon;
    double interior_angle_deg;
    double height_side_ratio;
    bool surfaces_parallel;
};

/// Counts and ratios of the four regular solids considered for the brick.
/// The dodecahedron ratio is phi^2 / (2 sqrt(3 - phi)) with the golden ratio,
/// which equals the solid's inradius over its edge length.
PropertyRecord polyhedron_properties(Shape shape);

/// Closed convex polyhedral surface. Faces are vertex-index loops, counter
/// clockwise when seen from outside.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;

    bool empty() const { return vertices.empty() || faces.empty(); }
};

/// Undirected edges (i < j) of a mesh, sorted.
std::vector<std::pair<int, int>> mesh_edges(const Mesh& mesh);
std::vector<double> edge_lengths(const Mesh& mesh);

/// Outward unit normal of face `face` (Newell's method).
Vec3 face_normal(const Mesh& mesh, std::size_t face);
Vec3 vertex_centroid(const Mesh& mesh);

/// Throws InvalidMesh if indices are out of range, a face has fewer than
/// three vertices, or a face is non-planar beyond `planarity_tol` (scaled by
/// the mesh extent when that exceeds 1).
void validate_mesh(const Mesh& mesh, double planarity_tol = 1e-9);

/// Convex hull of a point cloud with coplanar facets merged into polygons.
/// Points that are not extreme (interior, or on an edge / face interior) are
/// dropped. Throws DegenerateHull for fewer than four non-coplanar points.
Mesh convex_hull(std::span<const Vec3> points, double tol = 1e-9);

/// Regular solid centred at the origin. Edge lengths: tetrahedron 2*sqrt2,
/// hexahedron 1 (unit cube), octahedron sqrt2 / 2 (the dual of the unit
/// cube), dodecahedron 2 / phi.
Mesh regular_solid(Shape shape);

/// Convex hull of the face centroids (vertex means) of `mesh`.
/// Throws NonConvexInput if a vertex lies strictly inside the hull of the set.
Mesh dual_polyhedron(const Mesh& mesh);

/// True if `a` and `b` coincide after translating each vertex centroid to the
/// origin and scaling each to unit circumradius. No rotation is applied.
bool similar_meshes(const Mesh& a, const Mesh& b, double tol = 1e-9);

struct CellParams {
    double angle_difference_deg = 0.0;
    double side_ratio = 1.0;
    double height = 1.0;
    double bottom_side = 1.0;
};

struct CellGeometry {
    Mesh mesh;
    CellClass cell_class = CellClass::A;
    double height = 0.0;
    double width = 0.0;
    CellParams params;
};

/// Convex hull of a centred bottom square (z = 0) and a centred top square
/// (z = height, side scaled by side_ratio) twisted by angle_difference_deg.
/// The angle must lie in [0, 45].
CellGeometry generate_cell(const CellParams& params);

/// Largest horizontal bounding-box side of the mesh.
double horizontal_extent(const Mesh& mesh);

enum class SymmetryView {
    solid,      ///< 3D vertex set
    elevation,  ///< front view: hull of the projection onto the x-z plane
    plan,       ///< top view: hull of the projection onto the x-y plane
};

struct SymmetryResult {
    bool axisymmetric = false;
    bool centrosymmetric = false;

    int count() const { return int(axisymmetric) + int(centrosymmetric); }
};

/// Mirror / point-inversion symmetry of the vertex set, tested on coordinates
/// normalised to unit circumradius with tolerance `tol`. In `solid` view the
/// mirror must be a vertical plane; in the 2D views it is a line parallel to
/// the vertical (elevation) or any line through the plane (plan).
SymmetryResult symmetry_check(const Mesh& mesh, SymmetryView view = SymmetryView::solid,
                              double tol = 1e-6);

enum class SolveFor { height, side_ratio };

/// Adjust height (default) or side ratio by bisection so that every hull edge
/// has the same length. Throws NoSolution for untwisted cells, when the
/// bracket [1e-6, 10 * bottom_side] shows no sign change, or when the root
/// does not make all edges equal within 1e-6.
CellParams equilateral_adjust(const CellParams& params, SolveFor solve_for = SolveFor::height);

struct CellFamilyConfig {
    double height = 1.0;
    std::array<double, 3> widths = {1.0, 1.5, 2.0};
    double angle_difference_deg = 0.0;
    double side_ratio = 1.0;
};

/// Three cells A, B, C sharing `height`; cell widths are exactly the
/// configured widths. Throws InvalidWidths unless strictly increasing.
std::array<CellGeometry, 3> canonical_cells(const CellFamilyConfig& config);

/// Wavefront OBJ text for the mesh (1-based indices, %.17g coordinates).
std::string to_obj(const Mesh& mesh);
Mesh parse_obj(std::string_view text);

/// Writes the mesh as OBJ. Throws IoError for an empty mesh or a write failure.
void export_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh import_mesh(const std::filesystem::path& path);

}  // namespace pbrkit::polyhedra
