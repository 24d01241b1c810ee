#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "pbrkit/error.hpp"

namespace pbrkit::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::IoError, "csv: " + what); }

int parse_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) bad("not an integer: '" + std::string(s) + "'");
    return v;
}

bool needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

double parse_number(std::string_view s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
        bad("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::string write_csv(const Table& table) {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            if (needs_quotes(fields[i])) {
                out += '"';
                for (char c : fields[i]) {
                    if (c == '"') out += '"';
                    out += c;
                }
                out += '"';
            } else {
                out += fields[i];
            }
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    return out;
}

Table parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            rec.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                rec.push_back(std::move(field));
                records.push_back(std::move(rec));
            }
            rec.clear();
            field.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) bad("unterminated quote");
    if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    if (records.empty()) bad("missing header");
    Table t;
    t.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != t.header.size()) {
            bad("row " + std::to_string(i) + " has " + std::to_string(records[i].size()) +
                " fields, expected " + std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(records[i]));
    }
    return t;
}

Table parse_csv(std::string_view text, const std::vector<std::string>& expected) {
    Table t = parse_csv(text);
    if (t.header != expected) {
        std::string want;
        for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
        bad("unexpected header, wanted " + want);
    }
    return t;
}

std::string write_manifest(const std::vector<ManifestEntry>& entries) {
    Table t{{"path", "capture_day"}, {}};
    for (const auto& e : entries) t.rows.push_back({e.path, format_number(e.capture_day)});
    return write_csv(t);
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
    const Table t = parse_csv(text, {"path", "capture_day"});
    std::vector<ManifestEntry> out;
    for (const auto& r : t.rows) out.push_back({r[0], parse_number(r[1])});
    return out;
}

static const std::vector<std::string> kObservationHeader = {"day",    "test_r", "test_g", "test_b",
                                                            "ctrl_r", "ctrl_g", "ctrl_b"};

std::string write_observations(const std::vector<vision::ColorObservation>& obs) {
    Table t{kObservationHeader, {}};
    for (const auto& o : obs) {
        t.rows.push_back({format_number(o.day), format_number(o.test_rgb[0]),
                          format_number(o.test_rgb[1]), format_number(o.test_rgb[2]),
                          format_number(o.control_rgb[0]), format_number(o.control_rgb[1]),
                          format_number(o.control_rgb[2])});
    }
    return write_csv(t);
}

std::vector<vision::ColorObservation> parse_observations(std::string_view text) {
    const Table t = parse_csv(text, kObservationHeader);
    std::vector<vision::ColorObservation> out;
    for (const auto& r : t.rows) {
        vision::ColorObservation o;
        o.day = parse_number(r[0]);
        for (int c = 0; c < 3; ++c) {
            o.test_rgb[c] = parse_number(r[1 + c]);
            o.control_rgb[c] = parse_number(r[4 + c]);
        }
        out.push_back(o);
    }
    return out;
}

std::string write_differences(const DifferenceTable& table) {
    Table t;
    t.header.push_back("day");
    for (const auto& m : table.measures) t.header.push_back(m);
    for (std::size_t i = 0; i < table.days.size(); ++i) {
        std::vector<std::string> row{format_number(table.days[i])};
        for (double v : table.values[i]) row.push_back(format_number(v));
        t.rows.push_back(std::move(row));
    }
    return write_csv(t);
}

DifferenceTable parse_differences(std::string_view text) {
    const Table t = parse_csv(text);
    if (t.header.empty() || t.header[0] != "day") bad("differences table must start with 'day'");
    DifferenceTable d;
    d.measures.assign(t.header.begin() + 1, t.header.end());
    for (const auto& r : t.rows) {
        d.days.push_back(parse_number(r[0]));
        std::vector<double> v;
        for (std::size_t c = 1; c < r.size(); ++c) v.push_back(parse_number(r[c]));
        d.values.push_back(std::move(v));
    }
    return d;
}

static const std::vector<std::string> kFitHeader = {"measure", "degree", "rho", "r2",   "day_min",
                                                    "day_max", "c0",     "c1",  "c2",   "c3",
                                                    "error"};

std::string write_fit_matrix(const std::vector<FitRow>& rows) {
    Table t{kFitHeader, {}};
    for (const auto& f : rows) {
        std::vector<std::string> r{f.measure,           std::to_string(f.degree),
                                   format_number(f.rho), format_number(f.r2),
                                   format_number(f.day_min), format_number(f.day_max)};
        for (std::size_t k = 0; k < 4; ++k) {
            r.push_back(format_number(k < f.coefficients.size() ? f.coefficients[k] : 0.0));
        }
        r.push_back(f.error);
        t.rows.push_back(std::move(r));
    }
    return write_csv(t);
}

std::vector<FitRow> parse_fit_matrix(std::string_view text) {
    const Table t = parse_csv(text, kFitHeader);
    std::vector<FitRow> out;
    for (const auto& r : t.rows) {
        FitRow f;
        f.measure = r[0];
        f.degree = parse_int(r[1]);
        f.rho = parse_number(r[2]);
        f.r2 = parse_number(r[3]);
        f.day_min = parse_number(r[4]);
        f.day_max = parse_number(r[5]);
        for (int k = 0; k <= f.degree && k < 4; ++k) f.coefficients.push_back(parse_number(r[6 + k]));
        f.error = r[10];
        out.push_back(std::move(f));
    }
    return out;
}

std::string write_bom(const std::map<polyhedra::CellClass, int>& counts) {
    Table t{{"class", "count"}, {}};
    for (auto cls : polyhedra::kAllCellClasses) {
        auto it = counts.find(cls);
        t.rows.push_back({std::string(polyhedra::to_string(cls)),
                          std::to_string(it == counts.end() ? 0 : it->second)});
    }
    return write_csv(t);
}

std::map<polyhedra::CellClass, int> parse_bom(std::string_view text) {
    const Table t = parse_csv(text, {"class", "count"});
    std::map<polyhedra::CellClass, int> out;
    for (const auto& r : t.rows) out[polyhedra::parse_cell_class(r[0])] = parse_int(r[1]);
    return out;
}

std::string write_solution(const std::vector<int>& rotations) {
    Table t{{"instance", "rotation_step"}, {}};
    for (std::size_t i = 0; i < rotations.size(); ++i) {
        t.rows.push_back({std::to_string(i), std::to_string(rotations[i])});
    }
    return write_csv(t);
}

std::vector<int> parse_solution(std::string_view text) {
    const Table t = parse_csv(text, {"instance", "rotation_step"});
    std::vector<int> out(t.rows.size(), -1);
    for (const auto& r : t.rows) {
        const int i = parse_int(r[0]);
        if (i < 0 || static_cast<std::size_t>(i) >= out.size() || out[i] != -1) {
            bad("solution instances must be 0..n-1, each once");
        }
        out[i] = parse_int(r[1]);
    }
    return out;
}

}  // namespace pbrkit::cli
