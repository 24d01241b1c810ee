#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pbrkit/assembly.hpp"
#include "pbrkit/piping.hpp"
#include "pbrkit/polyhedra.hpp"
#include "pbrkit/regression.hpp"
#include "pbrkit/similarity.hpp"
#include "pbrkit/vision.hpp"

namespace pbrkit::cli {

struct GeometrySection {
    std::vector<double> heights = {1.0};
    std::array<double, 3> widths = {1.0, 1.5, 2.0};
    double angle = 0.0;
    double ratio = 1.0;
};

struct MagnetSection {
    double normal_hold_force = 10.0;
    double tangential_slide_force = 2.0;
    int magnets_per_interface = 4;
    double cell_weight = 20.0;
    double user_slide_force = 10.0;
};

struct WallSection {
    double target_width = 4.0;   // model units
    int rows = 3;
    std::optional<int> cells_per_row;
    double tolerance = 1e-6;
    double unit_scale = 1.0;     // feet per model unit
    std::string stacking = "vertical";
    double row_offset = 0.0;
    MagnetSection magnets;
};

struct PipingSection {
    // Empty means the spine pattern (see commands.cpp).
    std::vector<PipeType> pipes;
    piping::PumpPosition pump;
    bool vertical_coupling = true;
    std::size_t solution_limit = 1;
};

struct SyntheticSection {
    int frames_per_day = 3;
    std::vector<double> gains = {0.8, 0.9, 1.0};
    vision::SyntheticFrameSpec frame;
};

struct DetectionSection {
    vision::SamplingSpec sampling;
    std::optional<vision::Region> test_region;
    std::optional<vision::Region> control_region;
    similarity::Measure measure;
    regression::AlertPolicy alert;
    SyntheticSection synthetic;
};

struct IoSection {
    std::string out_dir = "pbrkit-out";
    std::optional<std::uint64_t> seed;
};

struct ToolkitConfig {
    GeometrySection geometry;
    WallSection wall;
    PipingSection piping;
    DetectionSection detection;
    IoSection io;
};

/// Strict parse: unknown keys and wrong types raise ConfigError.
ToolkitConfig parse_config(const std::string& json_text);

/// Reads `path` if given (missing file is a ConfigError). Without a path,
/// ./pbrkit.json is used when present, otherwise all defaults.
ToolkitConfig load_config(const std::optional<std::filesystem::path>& path);

}  // namespace pbrkit::cli
