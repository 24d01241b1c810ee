#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbrkit/assembly.hpp"
#include "pbrkit/pipe_type.hpp"

namespace pbrkit::piping {

/// Cell faces in rotation order: one quarter turn maps each face to the next
/// (left -> top -> right -> bottom -> left).
enum class Face : std::uint8_t { left = 0, top = 1, right = 2, bottom = 3 };

inline constexpr std::array<Face, 4> kAllFaces = {Face::left, Face::top, Face::right,
                                                  Face::bottom};

std::string_view to_string(Face face);
Face parse_face(std::string_view name);
constexpr Face opposite(Face f) { return static_cast<Face>((static_cast<int>(f) + 2) % 4); }

class FaceSet {
public:
    constexpr FaceSet() = default;
    constexpr FaceSet(std::initializer_list<Face> faces) {
        for (Face f : faces) insert(f);
    }
    static constexpr FaceSet from_bits(std::uint8_t bits) {
        FaceSet s;
        s.bits_ = bits & 0xF;
        return s;
    }

    constexpr void insert(Face f) { bits_ |= bit(f); }
    constexpr bool contains(Face f) const { return (bits_ & bit(f)) != 0; }
    constexpr int size() const {
        return ((bits_ >> 0) & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1) + ((bits_ >> 3) & 1);
    }
    constexpr std::uint8_t bits() const { return bits_; }
    friend constexpr bool operator==(FaceSet, FaceSet) = default;

private:
    static constexpr std::uint8_t bit(Face f) {
        return static_cast<std::uint8_t>(1u << static_cast<int>(f));
    }
    std::uint8_t bits_ = 0;
};

struct PortTemplate {
    PipeType pipe_type = PipeType::straight;
    FaceSet open_faces;

    /// Throws InvalidArgument if the faces do not fit the pipe type
    /// (straight: two opposite, elbow: two adjacent, tee: three, cross: four).
    static PortTemplate make(PipeType type, FaceSet faces);
    /// straight {left,right}, elbow {left,top}, tee {left,top,right}, cross.
    static PortTemplate standard(PipeType type);
};

/// Open faces after `rotation_step` quarter turns (0..3).
FaceSet rotate_ports(const PortTemplate& port, int rotation_step);

using RotationAssignment = std::vector<int>;

struct PumpPosition {
    int instance = 0;
    Face face = Face::left;
};

struct CouplingOptions {
    /// Couple vertically adjacent cells (rows above/below) in addition to
    /// horizontal neighbours in the same row.
    bool vertical = true;
    /// Minimum shared x length for two cells in adjacent rows to couple.
    double min_overlap = 1e-6;
};

using Neighbours = std::array<std::vector<int>, 4>;

/// Grid neighbours of every cell instance, indexed by Face. Horizontal
/// neighbours touch within a row. Vertical neighbours sit in the adjacent row
/// with an overlapping x interval, so a cell may have several above or below.
std::vector<Neighbours> layout_neighbours(const assembly::WallLayout& layout,
                                          const CouplingOptions& options = {});

struct PipeGraph {
    int cell_count = 0;
    /// Undirected edges; the pump inlet is node `cell_count`.
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;

    int pump_node() const { return cell_count; }
};

/// Graph of coupled ports. An edge joins two neighbours iff both facing ports
/// are open; the pump joins `pump.instance`. Throws PumpNotOnBoundary when the
/// pump face has a neighbour and PumpNotOnOpenPort when it is closed.
PipeGraph build_pipe_graph(const assembly::WallLayout& layout, std::span<const PortTemplate> pipes,
                           std::span<const int> rotations, PumpPosition pump,
                           const CouplingOptions& options = {});

struct Reachability {
    std::vector<int> reachable;  ///< cell indices, ascending; pump excluded
    bool all_reached = false;
};

Reachability pump_reachability(const PipeGraph& graph);

/// Rotation assignments that let the single pump reach every cell, in
/// lexicographic order of (instance, step), at most `limit` of them.
/// Backtracking prunes a branch as soon as some cell is unreachable even with
/// every still-unassigned cell fully open.
std::vector<RotationAssignment> solve_configurations(const assembly::WallLayout& layout,
                                                     std::span<const PortTemplate> pipes,
                                                     PumpPosition pump, std::size_t limit,
                                                     const CouplingOptions& options = {});

/// Three text lines per row, top row first: '+' marks a reached cell centre,
/// 'x' an unreached one, '-' / '|' open ports, 'P' the pump inlet.
std::string render_ascii(const assembly::WallLayout& layout, std::span<const PortTemplate> pipes,
                         std::span<const int> rotations, PumpPosition pump,
                         const CouplingOptions& options = {});

}  // namespace pbrkit::piping
