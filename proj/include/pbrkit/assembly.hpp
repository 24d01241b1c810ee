#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pbrkit/pipe_type.hpp"
#include "pbrkit/polyhedra.hpp"

namespace pbrkit::assembly {

using polyhedra::CellClass;
using WidthMap = std::map<CellClass, double>;

/// Tolerance-based rows compare sums with this extra absolute slack (scaled by
/// the target) so that a zero tolerance still accepts floating sums.
inline constexpr double kSumSlack = 1e-12;

struct RowPlan {
    std::vector<CellClass> sequence;
    std::vector<double> cell_widths;
    double total_width = 0.0;
    double target_width = 0.0;
    double tolerance = 0.0;
};

/// Seeded random composition of cell classes whose widths sum to
/// `target_width` within `tolerance`. Backtracking shuffles the class order
/// at every depth, so the same seed always yields the same plan. When
/// `cell_count` is set only rows with exactly that many cells qualify.
/// Throws NoComposition if no sequence exists.
RowPlan tessellate_row(double target_width, const WidthMap& widths, double tolerance,
                       std::uint64_t seed, std::optional<std::size_t> cell_count = std::nullopt);

/// Every ordered composition within tolerance, in lexicographic class order
/// (a prefix sorts before its extensions), truncated to `limit` entries.
std::vector<RowPlan> enumerate_row_compositions(
    double target_width, const WidthMap& widths, double tolerance, std::size_t limit,
    std::optional<std::size_t> cell_count = std::nullopt);

enum class StackingMode { vertical, diagonal };

std::string_view to_string(StackingMode mode);
StackingMode parse_stacking_mode(std::string_view name);

struct CellInstance {
    CellClass cell_class = CellClass::A;
    int row_index = 0;
    double x_position = 0.0;
    double width = 0.0;
    int rotation_step = 0;
};

struct WallLayout {
    std::vector<RowPlan> rows;
    StackingMode stacking_mode = StackingMode::vertical;
    double row_offset = 0.0;
    std::vector<CellInstance> cell_instances;
};

/// Places rows bottom to top. Row k starts at k * row_offset (diagonal mode).
/// Throws OffsetInVerticalMode for a non-zero offset in vertical mode and
/// RowWidthMismatch when vertically stacked rows disagree on their width.
WallLayout stack_rows(std::vector<RowPlan> rows, StackingMode mode, double row_offset);

/// `rows` x `cols` wall of identical cells, stacked vertically.
WallLayout grid_layout(int rows, int cols, CellClass cell_class = CellClass::A,
                       double cell_width = 1.0);

/// True iff every interface between horizontally adjacent cells is a planar
/// face whose outward normal is the wall axis (+x on the left cell, -x on the
/// right cell) within 1e-6. rotation_step turns only the pipe insert, so the
/// shells are tested as generated.
bool interface_check(const WallLayout& layout,
                     const std::map<CellClass, polyhedra::Mesh>& cell_geometries);

struct BillOfMaterials {
    std::map<CellClass, int> counts;
    int total_cells = 0;
    std::map<PipeType, int> pipe_type_counts;
    double width = 0.0;   ///< horizontal extent of the wall, scaled
    double height = 0.0;  ///< rows * cell height, scaled
};

/// Per-class counts and physical dimensions under `unit_scale` (physical units
/// per model unit). `pipes`, when non-empty, lists one pipe type per instance.
BillOfMaterials bill_of_materials(const WallLayout& layout, double cell_height,
                                  double unit_scale, std::span<const PipeType> pipes = {});

class MagnetSpec {
public:
    /// Throws InvalidMagnetSpec unless all forces are non-negative and the
    /// tangential slide force is strictly below the normal hold force.
    MagnetSpec(double normal_hold_force, double tangential_slide_force, int magnets_per_interface,
               double cell_weight);

    double normal_hold_force() const { return normal_; }
    double tangential_slide_force() const { return tangential_; }
    int magnets_per_interface() const { return magnets_; }
    double cell_weight() const { return weight_; }

private:
    double normal_;
    double tangential_;
    int magnets_;
    double weight_;
};

struct RemovalFeasibility {
    bool holds_structurally = false;
    bool removable_by_slide = false;
};

RemovalFeasibility removal_feasibility(const MagnetSpec& spec, double user_slide_force);

}  // namespace pbrkit::assembly
