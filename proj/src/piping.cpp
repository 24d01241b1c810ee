#include "pbrkit/piping.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>

#include "pbrkit/error.hpp"

namespace pbrkit::piping {

namespace {

constexpr double kAlignTol = 1e-6;

// Open faces per cell; cells not yet assigned (-1) count as fully open.
std::vector<FaceSet> open_faces(std::span<const PortTemplate> pipes,
                                std::span<const int> rotations) {
    std::vector<FaceSet> out(pipes.size());
    for (std::size_t i = 0; i < pipes.size(); ++i) {
        out[i] = rotations[i] < 0 ? FaceSet::from_bits(0xF) : rotate_ports(pipes[i], rotations[i]);
    }
    return out;
}

std::vector<bool> flood(const std::vector<Neighbours>& nbr, const std::vector<FaceSet>& open,
                        int start) {
    std::vector<bool> seen(nbr.size(), false);
    std::deque<int> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (Face f : kAllFaces) {
            if (!open[u].contains(f)) continue;
            for (int v : nbr[u][static_cast<int>(f)]) {
                if (!seen[v] && open[v].contains(opposite(f))) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    return seen;
}

void check_inputs(const assembly::WallLayout& layout, std::span<const PortTemplate> pipes,
                  PumpPosition pump) {
    const auto n = layout.cell_instances.size();
    if (n == 0) throw Error(ErrorCode::InvalidLayout, "layout has no cells");
    if (pipes.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "need exactly one pipe template per cell");
    }
    if (pump.instance < 0 || static_cast<std::size_t>(pump.instance) >= n) {
        throw Error(ErrorCode::InvalidArgument, "pump instance out of range");
    }
}

void check_pump_on_boundary(const std::vector<Neighbours>& nbr, PumpPosition pump) {
    if (!nbr[pump.instance][static_cast<int>(pump.face)].empty()) {
        throw Error(ErrorCode::PumpNotOnBoundary, "pump face is shared with another cell");
    }
}

std::map<int, std::vector<int>> rows_by_x(const assembly::WallLayout& layout) {
    const auto& cells = layout.cell_instances;
    std::map<int, std::vector<int>> rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        rows[cells[i].row_index].push_back(static_cast<int>(i));
    }
    for (auto& [r, ids] : rows) {
        std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
            return cells[a].x_position < cells[b].x_position;
        });
    }
    return rows;
}

}  // namespace

std::string_view to_string(Face face) {
    switch (face) {
        case Face::left: return "left";
        case Face::top: return "top";
        case Face::right: return "right";
        case Face::bottom: return "bottom";
    }
    return "?";
}

Face parse_face(std::string_view name) {
    for (Face f : kAllFaces) {
        if (to_string(f) == name) return f;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown face '" + std::string(name) + "'");
}

PortTemplate PortTemplate::make(PipeType type, FaceSet faces) {
    const bool horizontal = faces == FaceSet{Face::left, Face::right};
    const bool vertical = faces == FaceSet{Face::top, Face::bottom};
    bool ok = false;
    switch (type) {
        case PipeType::straight: ok = horizontal || vertical; break;
        case PipeType::elbow: ok = faces.size() == 2 && !horizontal && !vertical; break;
        case PipeType::tee: ok = faces.size() == 3; break;
        case PipeType::cross: ok = faces.size() == 4; break;
    }
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument,
                    "open faces do not match pipe type " + std::string(to_string(type)));
    }
    return {type, faces};
}

PortTemplate PortTemplate::standard(PipeType type) {
    switch (type) {
        case PipeType::straight: return {type, {Face::left, Face::right}};
        case PipeType::elbow: return {type, {Face::left, Face::top}};
        case PipeType::tee: return {type, {Face::left, Face::top, Face::right}};
        case PipeType::cross:
            return {type, {Face::left, Face::top, Face::right, Face::bottom}};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown pipe type");
}

FaceSet rotate_ports(const PortTemplate& port, int rotation_step) {
    if (rotation_step < 0 || rotation_step > 3) {
        throw Error(ErrorCode::InvalidArgument, "rotation step must be in 0..3");
    }
    const unsigned b = port.open_faces.bits();
    return FaceSet::from_bits(
        static_cast<std::uint8_t>((b << rotation_step) | (b >> (4 - rotation_step))));
}

std::vector<Neighbours> layout_neighbours(const assembly::WallLayout& layout,
                                          const CouplingOptions& options) {
    const auto& cells = layout.cell_instances;
    std::vector<Neighbours> nbr(cells.size());
    const auto rows = rows_by_x(layout);

    for (const auto& [r, ids] : rows) {
        for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
            const auto& a = cells[ids[k]];
            const auto& b = cells[ids[k + 1]];
            if (std::abs(a.x_position + a.width - b.x_position) <= kAlignTol) {
                nbr[ids[k]][static_cast<int>(Face::right)].push_back(ids[k + 1]);
                nbr[ids[k + 1]][static_cast<int>(Face::left)].push_back(ids[k]);
            }
        }
    }
    if (!options.vertical) return nbr;
    for (const auto& [r, ids] : rows) {
        const auto above = rows.find(r + 1);
        if (above == rows.end()) continue;
        for (int a : ids) {
            for (int b : above->second) {
                const double overlap =
                    std::min(cells[a].x_position + cells[a].width,
                             cells[b].x_position + cells[b].width) -
                    std::max(cells[a].x_position, cells[b].x_position);
                if (overlap >= options.min_overlap) {
                    nbr[a][static_cast<int>(Face::top)].push_back(b);
                    nbr[b][static_cast<int>(Face::bottom)].push_back(a);
                }
            }
        }
    }
    return nbr;
}

PipeGraph build_pipe_graph(const assembly::WallLayout& layout, std::span<const PortTemplate> pipes,
                           std::span<const int> rotations, PumpPosition pump,
                           const CouplingOptions& options) {
    check_inputs(layout, pipes, pump);
    if (rotations.size() != pipes.size()) {
        throw Error(ErrorCode::InvalidArgument, "need exactly one rotation per cell");
    }
    for (int r : rotations) {
        if (r < 0 || r > 3) throw Error(ErrorCode::InvalidArgument, "rotation step must be in 0..3");
    }
    const auto nbr = layout_neighbours(layout, options);
    check_pump_on_boundary(nbr, pump);
    const auto open = open_faces(pipes, rotations);
    if (!open[pump.instance].contains(pump.face)) {
        throw Error(ErrorCode::PumpNotOnOpenPort,
                    "pump attaches to a closed " + std::string(to_string(pump.face)) + " face");
    }

    PipeGraph g;
    g.cell_count = static_cast<int>(pipes.size());
    g.adjacency.resize(pipes.size() + 1);
    auto link = [&](int a, int b) {
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    };
    link(g.pump_node(), pump.instance);
    for (int u = 0; u < g.cell_count; ++u) {
        for (Face f : {Face::right, Face::top}) {
            if (!open[u].contains(f)) continue;
            for (int v : nbr[u][static_cast<int>(f)]) {
                if (open[v].contains(opposite(f))) link(u, v);
            }
        }
    }
    return g;
}

Reachability pump_reachability(const PipeGraph& graph) {
    std::vector<bool> seen(graph.adjacency.size(), false);
    std::deque<int> queue{graph.pump_node()};
    seen[graph.pump_node()] = true;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : graph.adjacency[u]) {
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Reachability r;
    for (int i = 0; i < graph.cell_count; ++i) {
        if (seen[i]) r.reachable.push_back(i);
    }
    r.all_reached = static_cast<int>(r.reachable.size()) == graph.cell_count;
    return r;
}

std::vector<RotationAssignment> solve_configurations(const assembly::WallLayout& layout,
                                                     std::span<const PortTemplate> pipes,
                                                     PumpPosition pump, std::size_t limit,
                                                     const CouplingOptions& options) {
    check_inputs(layout, pipes, pump);
    std::vector<RotationAssignment> solutions;
    if (limit == 0) return solutions;
    const auto nbr = layout_neighbours(layout, options);
    check_pump_on_boundary(nbr, pump);

    const int n = static_cast<int>(pipes.size());
    RotationAssignment rot(n, -1);
    std::vector<FaceSet> open(n, FaceSet::from_bits(0xF));

    auto everyone_reachable = [&] {
        const auto seen = flood(nbr, open, pump.instance);
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };

    auto search = [&](auto&& self, int i) -> void {
        if (i == n) {
            solutions.push_back(rot);
            return;
        }
        for (int step = 0; step < 4 && solutions.size() < limit; ++step) {
            rot[i] = step;
            open[i] = rotate_ports(pipes[i], step);
            if (i == pump.instance && !open[i].contains(pump.face)) continue;
            if (everyone_reachable()) self(self, i + 1);
        }
        rot[i] = -1;
        open[i] = FaceSet::from_bits(0xF);
    };
    search(search, 0);
    return solutions;
}

std::string render_ascii(const assembly::WallLayout& layout, std::span<const PortTemplate> pipes,
                         std::span<const int> rotations, PumpPosition pump,
                         const CouplingOptions& options) {
    const auto graph = build_pipe_graph(layout, pipes, rotations, pump, options);
    std::vector<bool> reached(pipes.size(), false);
    for (int i : pump_reachability(graph).reachable) reached[i] = true;
    const auto open = open_faces(pipes, rotations);
    const auto rows = rows_by_x(layout);

    std::string out;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        std::array<std::string, 3> lines;
        for (int id : it->second) {
            auto port = [&](Face f, char c) {
                if (id == pump.instance && f == pump.face) return 'P';
                return open[id].contains(f) ? c : ' ';
            };
            lines[0] += {' ', port(Face::top, '|'), ' '};
            lines[1] += {port(Face::left, '-'), reached[id] ? '+' : 'x', port(Face::right, '-')};
            lines[2] += {' ', port(Face::bottom, '|'), ' '};
        }
        for (auto& l : lines) {
            while (!l.empty() && l.back() == ' ') l.pop_back();
            out += l;
            out += '\n';
        }
    }
    return out;
}

}  // namespace pbrkit::piping
