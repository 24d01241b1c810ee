#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pbrkit/error.hpp"

namespace pbrkit::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_ + " must be an object");
    }

    const json* get(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (auto v = get(key)) {
            if (!v->is_number()) fail(where(key) + " must be a number");
            out = v->get<double>();
        }
    }
    void integer(const std::string& key, int& out) {
        if (auto v = get(key)) {
            if (!v->is_number_integer()) fail(where(key) + " must be an integer");
            out = v->get<int>();
        }
    }
    void boolean(const std::string& key, bool& out) {
        if (auto v = get(key)) {
            if (!v->is_boolean()) fail(where(key) + " must be true or false");
            out = v->get<bool>();
        }
    }
    void string(const std::string& key, std::string& out) {
        if (auto v = get(key)) {
            if (!v->is_string()) fail(where(key) + " must be a string");
            out = v->get<std::string>();
        }
    }
    std::vector<double> numbers(const std::string& key, const json& v) {
        if (!v.is_array()) fail(where(key) + " must be an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) fail(where(key) + " must be an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    std::string where(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) fail("unknown key " + where(it.key()));
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename F>
auto wrap(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        fail(what + ": " + e.what());
    }
}

vision::Region parse_region(const json& j, const std::string& path) {
    Section s(j, path);
    vision::Region r;
    s.integer("x", r.x);
    s.integer("y", r.y);
    s.integer("width", r.width);
    s.integer("height", r.height);
    s.finish();
    if (r.width <= 0 || r.height <= 0) fail(path + " must have positive size");
    return r;
}

vision::RgbMean parse_rgb(Section& parent, const std::string& key, const json& v) {
    const auto xs = parent.numbers(key, v);
    if (xs.size() != 3) fail(parent.where(key) + " must have three channels");
    return {xs[0], xs[1], xs[2]};
}

void parse_geometry(const json& j, GeometrySection& g) {
    Section s(j, "geometry");
    if (auto v = s.get("heights")) {
        g.heights = v->is_number() ? std::vector<double>{v->get<double>()} : s.numbers("heights", *v);
        if (g.heights.empty()) fail("geometry.heights must not be empty");
        for (double h : g.heights) {
            if (!(h > 0.0)) fail("geometry.heights must be positive");
        }
    }
    if (auto v = s.get("widths")) {
        const auto w = s.numbers("widths", *v);
        if (w.size() != 3) fail("geometry.widths needs exactly three widths (A, B, C)");
        g.widths = {w[0], w[1], w[2]};
    }
    s.number("angle", g.angle);
    s.number("ratio", g.ratio);
    s.finish();
}

void parse_wall(const json& j, WallSection& w) {
    Section s(j, "wall");
    s.number("target_width", w.target_width);
    s.integer("rows", w.rows);
    if (auto v = s.get("cells_per_row")) {
        if (v->is_null()) {
            w.cells_per_row.reset();
        } else if (v->is_number_integer() && v->get<int>() > 0) {
            w.cells_per_row = v->get<int>();
        } else {
            fail("wall.cells_per_row must be a positive integer or null");
        }
    }
    s.number("tolerance", w.tolerance);
    s.number("unit_scale", w.unit_scale);
    s.string("stacking", w.stacking);
    s.number("row_offset", w.row_offset);
    if (auto v = s.get("magnets")) {
        Section m(*v, "wall.magnets");
        m.number("normal_hold_force", w.magnets.normal_hold_force);
        m.number("tangential_slide_force", w.magnets.tangential_slide_force);
        m.integer("magnets_per_interface", w.magnets.magnets_per_interface);
        m.number("cell_weight", w.magnets.cell_weight);
        m.number("user_slide_force", w.magnets.user_slide_force);
        m.finish();
    }
    s.finish();
    if (w.rows <= 0) fail("wall.rows must be positive");
    if (!(w.unit_scale > 0.0)) fail("wall.unit_scale must be positive");
    if (!(w.tolerance >= 0.0)) fail("wall.tolerance must be non-negative");
    wrap("wall.stacking", [&] { return assembly::parse_stacking_mode(w.stacking); });
}

void parse_piping(const json& j, PipingSection& p) {
    Section s(j, "piping");
    if (auto v = s.get("pipes")) {
        if (!v->is_array()) fail("piping.pipes must be an array of pipe type names");
        p.pipes.clear();
        for (const auto& x : *v) {
            if (!x.is_string()) fail("piping.pipes must be an array of pipe type names");
            p.pipes.push_back(wrap("piping.pipes", [&] { return parse_pipe_type(x.get<std::string>()); }));
        }
    }
    if (auto v = s.get("pump")) {
        Section m(*v, "piping.pump");
        m.integer("instance", p.pump.instance);
        std::string face(piping::to_string(p.pump.face));
        m.string("face", face);
        m.finish();
        p.pump.face = wrap("piping.pump.face", [&] { return piping::parse_face(face); });
    }
    s.boolean("vertical_coupling", p.vertical_coupling);
    int limit = static_cast<int>(p.solution_limit);
    s.integer("solution_limit", limit);
    if (limit <= 0) fail("piping.solution_limit must be positive");
    p.solution_limit = static_cast<std::size_t>(limit);
    s.finish();
}

void parse_detection(const json& j, DetectionSection& d) {
    Section s(j, "detection");
    if (auto v = s.get("sampling")) {
        Section m(*v, "detection.sampling");
        m.integer("cluster_size", d.sampling.cluster_size);
        m.number("cluster_variance", d.sampling.cluster_variance);
        m.number("center_weight", d.sampling.center_weight);
        m.number("outer_weight", d.sampling.outer_weight);
        m.finish();
        wrap("detection.sampling", [&] { d.sampling.validate(); return 0; });
    }
    if (auto v = s.get("test_region")) d.test_region = parse_region(*v, "detection.test_region");
    if (auto v = s.get("control_region")) {
        d.control_region = parse_region(*v, "detection.control_region");
    }
    std::string kind(similarity::to_string(d.measure.kind));
    s.string("measure", kind);
    d.measure.kind = wrap("detection.measure", [&] { return similarity::parse_measure_kind(kind); });
    s.number("minkowski_p", d.measure.minkowski_p);
    s.integer("hamming_quantization", d.measure.hamming_quantization);
    s.number("epsilon", d.measure.epsilon);
    if (auto v = s.get("alert")) {
        Section m(*v, "detection.alert");
        m.number("threshold", d.alert.threshold);
        std::string mode = d.alert.mode == regression::AlertMode::by_difference ? "by_difference"
                                                                                : "by_estimated_day";
        m.string("mode", mode);
        m.finish();
        if (mode == "by_difference") {
            d.alert.mode = regression::AlertMode::by_difference;
        } else if (mode == "by_estimated_day") {
            d.alert.mode = regression::AlertMode::by_estimated_day;
        } else {
            fail("detection.alert.mode must be by_difference or by_estimated_day");
        }
        wrap("detection.alert", [&] { d.alert.validate(); return 0; });
    }
    if (auto v = s.get("synthetic")) {
        Section m(*v, "detection.synthetic");
        auto& syn = d.synthetic;
        m.integer("frames_per_day", syn.frames_per_day);
        if (auto g = m.get("gains")) syn.gains = m.numbers("gains", *g);
        m.integer("width", syn.frame.width);
        m.integer("height", syn.frame.height);
        m.number("noise_sigma", syn.frame.noise_sigma);
        if (auto c = m.get("fresh_color")) syn.frame.fresh_color = parse_rgb(m, "fresh_color", *c);
        if (auto c = m.get("aged_color")) syn.frame.aged_color = parse_rgb(m, "aged_color", *c);
        if (auto c = m.get("control_color")) {
            syn.frame.control_color = parse_rgb(m, "control_color", *c);
        }
        if (auto c = m.get("background_color")) {
            syn.frame.background_color = parse_rgb(m, "background_color", *c);
        }
        m.finish();
        if (syn.frames_per_day <= 0) fail("detection.synthetic.frames_per_day must be positive");
        if (syn.gains.empty()) fail("detection.synthetic.gains must not be empty");
        for (double g : syn.gains) {
            if (!(g > 0.0 && g <= 1.5)) fail("detection.synthetic.gains must lie in (0, 1.5]");
        }
        if (syn.frame.width < 8 || syn.frame.height < 8) {
            fail("detection.synthetic frame must be at least 8x8");
        }
        if (!(syn.frame.noise_sigma >= 0.0)) fail("detection.synthetic.noise_sigma must be >= 0");
    }
    s.finish();
}

void parse_io(const json& j, IoSection& io) {
    Section s(j, "io");
    s.string("out_dir", io.out_dir);
    if (auto v = s.get("seed")) {
        if (!v->is_number_unsigned()) fail("io.seed must be a non-negative integer");
        io.seed = v->get<std::uint64_t>();
    }
    s.finish();
}

}  // namespace

ToolkitConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    ToolkitConfig c;
    Section root(j, "config");
    if (auto v = root.get("geometry")) parse_geometry(*v, c.geometry);
    if (auto v = root.get("wall")) parse_wall(*v, c.wall);
    if (auto v = root.get("piping")) parse_piping(*v, c.piping);
    if (auto v = root.get("detection")) parse_detection(*v, c.detection);
    if (auto v = root.get("io")) parse_io(*v, c.io);
    root.finish();
    return c;
}

ToolkitConfig load_config(const std::optional<std::filesystem::path>& path) {
    std::filesystem::path p = path.value_or("pbrkit.json");
    if (!std::filesystem::exists(p)) {
        if (path) fail("config file not found: " + p.string());
        return {};
    }
    std::ifstream in(p, std::ios::binary);
    if (!in) fail("cannot read config file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace pbrkit::cli
