#include "pbrkit/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "pbrkit/error.hpp"
#include "pbrkit/random.hpp"

namespace pbrkit {

std::string_view to_string(PipeType type) {
    switch (type) {
        case PipeType::straight: return "straight";
        case PipeType::elbow: return "elbow";
        case PipeType::tee: return "tee";
        case PipeType::cross: return "cross";
    }
    return "?";
}

PipeType parse_pipe_type(std::string_view name) {
    for (PipeType t : kAllPipeTypes) {
        if (to_string(t) == name) return t;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown pipe type '" + std::string(name) + "'");
}

}  // namespace pbrkit

namespace pbrkit::assembly {

namespace {

using Entry = std::pair<CellClass, double>;

std::vector<Entry> checked_widths(double target_width, const WidthMap& widths, double tolerance) {
    if (!(target_width > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "target width must be positive");
    }
    if (!(tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
    if (widths.empty()) throw Error(ErrorCode::InvalidArgument, "no cell widths given");
    std::vector<Entry> out;
    for (const auto& [cls, w] : widths) {
        if (!(w > 0.0)) throw Error(ErrorCode::InvalidArgument, "cell widths must be positive");
        out.emplace_back(cls, w);
    }
    return out;
}

RowPlan make_plan(const std::vector<CellClass>& seq, const WidthMap& widths, double target,
                  double tolerance) {
    RowPlan plan;
    plan.sequence = seq;
    plan.target_width = target;
    plan.tolerance = tolerance;
    for (CellClass c : seq) {
        const double w = widths.at(c);
        plan.cell_widths.push_back(w);
        plan.total_width += w;
    }
    return plan;
}

class Composer {
public:
    Composer(double target, double tolerance, std::optional<std::size_t> count)
        : target_(target), tolerance_(tolerance), count_(count),
          slack_(kSumSlack * std::max(1.0, target)) {}

    bool fits(double sum) const { return std::abs(sum - target_) <= tolerance_ + slack_; }
    bool overshoots(double sum) const { return sum > target_ + tolerance_ + slack_; }

    bool complete(double sum, std::size_t len) const {
        if (len == 0) return false;
        if (count_ && len != *count_) return false;
        return fits(sum);
    }
    bool may_extend(std::size_t len) const { return !count_ || len < *count_; }

private:
    double target_;
    double tolerance_;
    std::optional<std::size_t> count_;
    double slack_;
};

bool is_axis_face(const polyhedra::Mesh& mesh, double sign) {
    std::size_t best = 0;
    double best_x = -2.0;
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const double nx = sign * polyhedra::face_normal(mesh, f).x;
        if (nx > best_x) {
            best_x = nx;
            best = f;
        }
    }
    const Vec3 n = polyhedra::face_normal(mesh, best);
    constexpr double tol = 1e-6;
    if (std::abs(n.x - sign) > tol || std::abs(n.y) > tol || std::abs(n.z) > tol) return false;
    const auto& face = mesh.faces[best];
    const double x0 = mesh.vertices[face[0]].x;
    return std::all_of(face.begin(), face.end(),
                       [&](int v) { return std::abs(mesh.vertices[v].x - x0) <= tol; });
}

}  // namespace

RowPlan tessellate_row(double target_width, const WidthMap& widths, double tolerance,
                       std::uint64_t seed, std::optional<std::size_t> cell_count) {
    const auto entries = checked_widths(target_width, widths, tolerance);
    const Composer rule(target_width, tolerance, cell_count);
    Rng rng(seed);

    // Feasibility depends only on (remaining width, cells placed), so failed
    // states are memoised.
    std::set<std::pair<long long, std::size_t>> dead;
    std::vector<CellClass> seq;

    auto search = [&](auto&& self, double sum) -> bool {
        if (rule.complete(sum, seq.size())) return true;
        if (!rule.may_extend(seq.size())) return false;
        const std::pair key{std::llround((target_width - sum) * 1e9),
                            cell_count ? seq.size() : 0};
        if (dead.contains(key)) return false;
        auto order = entries;
        rng.shuffle(order);
        for (const auto& [cls, w] : order) {
            if (rule.overshoots(sum + w)) continue;
            seq.push_back(cls);
            if (self(self, sum + w)) return true;
            seq.pop_back();
        }
        dead.insert(key);
        return false;
    };

    if (!search(search, 0.0)) {
        throw Error(ErrorCode::NoComposition,
                    "no row of the given cell widths reaches width " + std::to_string(target_width));
    }
    return make_plan(seq, widths, target_width, tolerance);
}

std::vector<RowPlan> enumerate_row_compositions(double target_width, const WidthMap& widths,
                                                double tolerance, std::size_t limit,
                                                std::optional<std::size_t> cell_count) {
    const auto entries = checked_widths(target_width, widths, tolerance);
    const Composer rule(target_width, tolerance, cell_count);
    std::vector<RowPlan> out;
    std::vector<CellClass> seq;

    auto walk = [&](auto&& self, double sum) -> void {
        if (out.size() >= limit) return;
        if (rule.complete(sum, seq.size())) out.push_back(make_plan(seq, widths, target_width, tolerance));
        if (!rule.may_extend(seq.size())) return;
        for (const auto& [cls, w] : entries) {
            if (out.size() >= limit) return;
            if (rule.overshoots(sum + w)) continue;
            seq.push_back(cls);
            self(self, sum + w);
            seq.pop_back();
        }
    };
    walk(walk, 0.0);
    return out;
}

std::string_view to_string(StackingMode mode) {
    return mode == StackingMode::vertical ? "vertical" : "diagonal";
}

StackingMode parse_stacking_mode(std::string_view name) {
    if (name == "vertical") return StackingMode::vertical;
    if (name == "diagonal") return StackingMode::diagonal;
    throw Error(ErrorCode::InvalidArgument, "unknown stacking mode '" + std::string(name) + "'");
}

WallLayout stack_rows(std::vector<RowPlan> rows, StackingMode mode, double row_offset) {
    if (mode == StackingMode::vertical && row_offset != 0.0) {
        throw Error(ErrorCode::OffsetInVerticalMode, "vertical stacking takes no row offset");
    }
    for (const auto& row : rows) {
        if (row.sequence.empty()) throw Error(ErrorCode::InvalidLayout, "empty row in wall");
        if (row.cell_widths.size() != row.sequence.size()) {
            throw Error(ErrorCode::InvalidLayout, "row widths do not match its sequence");
        }
    }
    if (mode == StackingMode::vertical) {
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const double tol = std::max(rows[r].tolerance, rows[0].tolerance) +
                               kSumSlack * std::max(1.0, rows[0].total_width);
            if (std::abs(rows[r].total_width - rows[0].total_width) > tol) {
                throw Error(ErrorCode::RowWidthMismatch,
                            "row " + std::to_string(r) + " width differs from row 0");
            }
        }
    }

    WallLayout layout;
    layout.stacking_mode = mode;
    layout.row_offset = row_offset;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double x = static_cast<double>(r) * row_offset;
        for (std::size_t i = 0; i < rows[r].sequence.size(); ++i) {
            layout.cell_instances.push_back(
                {rows[r].sequence[i], static_cast<int>(r), x, rows[r].cell_widths[i], 0});
            x += rows[r].cell_widths[i];
        }
    }
    layout.rows = std::move(rows);
    return layout;
}

WallLayout grid_layout(int rows, int cols, CellClass cell_class, double cell_width) {
    if (rows < 1 || cols < 1 || !(cell_width > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "grid needs at least one row and column");
    }
    std::vector<RowPlan> plans;
    for (int r = 0; r < rows; ++r) {
        RowPlan row;
        row.sequence.assign(cols, cell_class);
        row.cell_widths.assign(cols, cell_width);
        row.total_width = cell_width * cols;
        row.target_width = row.total_width;
        plans.push_back(std::move(row));
    }
    return stack_rows(std::move(plans), StackingMode::vertical, 0.0);
}

bool interface_check(const WallLayout& layout,
                     const std::map<CellClass, polyhedra::Mesh>& cell_geometries) {
    auto placed = [&](const CellInstance& inst) -> const polyhedra::Mesh& {
        const auto it = cell_geometries.find(inst.cell_class);
        if (it == cell_geometries.end()) {
            throw Error(ErrorCode::InvalidArgument,
                        "no geometry for cell class " +
                            std::string(polyhedra::to_string(inst.cell_class)));
        }
        return it->second;
    };

    std::map<int, std::vector<const CellInstance*>> by_row;
    for (const auto& inst : layout.cell_instances) by_row[inst.row_index].push_back(&inst);
    for (auto& [row, cells] : by_row) {
        std::sort(cells.begin(), cells.end(),
                  [](const CellInstance* a, const CellInstance* b) {
                      return a->x_position < b->x_position;
                  });
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
            if (!is_axis_face(placed(*cells[i]), +1.0)) return false;
            if (!is_axis_face(placed(*cells[i + 1]), -1.0)) return false;
        }
    }
    return true;
}

BillOfMaterials bill_of_materials(const WallLayout& layout, double cell_height, double unit_scale,
                                  std::span<const PipeType> pipes) {
    if (!pipes.empty() && pipes.size() != layout.cell_instances.size()) {
        throw Error(ErrorCode::InvalidArgument, "pipe list must cover every cell instance");
    }
    BillOfMaterials bom;
    for (CellClass c : polyhedra::kAllCellClasses) bom.counts[c] = 0;
    for (PipeType t : kAllPipeTypes) bom.pipe_type_counts[t] = 0;
    for (const auto& inst : layout.cell_instances) ++bom.counts[inst.cell_class];
    for (PipeType t : pipes) ++bom.pipe_type_counts[t];
    bom.total_cells = static_cast<int>(layout.cell_instances.size());
    if (layout.cell_instances.empty()) return bom;

    double xmin = layout.cell_instances.front().x_position;
    double xmax = xmin;
    for (const auto& inst : layout.cell_instances) {
        xmin = std::min(xmin, inst.x_position);
        xmax = std::max(xmax, inst.x_position + inst.width);
    }
    bom.width = (xmax - xmin) * unit_scale;
    bom.height = static_cast<double>(layout.rows.size()) * cell_height * unit_scale;
    return bom;
}

MagnetSpec::MagnetSpec(double normal_hold_force, double tangential_slide_force,
                       int magnets_per_interface, double cell_weight)
    : normal_(normal_hold_force), tangential_(tangential_slide_force),
      magnets_(magnets_per_interface), weight_(cell_weight) {
    if (!(normal_ >= 0.0 && tangential_ >= 0.0 && weight_ >= 0.0) || magnets_ < 0) {
        throw Error(ErrorCode::InvalidMagnetSpec, "magnet forces and counts must be non-negative");
    }
    if (!(tangential_ < normal_)) {
        throw Error(ErrorCode::InvalidMagnetSpec,
                    "tangential slide force must be below the normal hold force");
    }
}

RemovalFeasibility removal_feasibility(const MagnetSpec& spec, double user_slide_force) {
    const double magnets = spec.magnets_per_interface();
    return {magnets * spec.normal_hold_force() >= spec.cell_weight(),
            user_slide_force >= magnets * spec.tangential_slide_force()};
}

}  // namespace pbrkit::assembly
