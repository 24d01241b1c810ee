#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pbrkit/assembly.hpp"
#include "pbrkit/regression.hpp"
#include "pbrkit/vision.hpp"

namespace pbrkit::cli {

/// Shortest text that parses back to the same double; "nan" for NaN.
std::string format_number(double x);
double parse_number(std::string_view text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Fields containing a comma, quote or newline are quoted.
std::string write_csv(const Table& table);
/// Throws IoError on ragged rows or an unterminated quote.
Table parse_csv(std::string_view text);
/// Parse and check the header matches `expected` exactly.
Table parse_csv(std::string_view text, const std::vector<std::string>& expected);

struct ManifestEntry {
    std::string path;
    double capture_day = 0.0;
};
std::string write_manifest(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> parse_manifest(std::string_view text);

std::string write_observations(const std::vector<vision::ColorObservation>& obs);
std::vector<vision::ColorObservation> parse_observations(std::string_view text);

/// Wide table: day, then one signed-difference column per measure.
struct DifferenceTable {
    std::vector<std::string> measures;
    std::vector<double> days;
    std::vector<std::vector<double>> values;  ///< values[row][measure]
};
std::string write_differences(const DifferenceTable& table);
DifferenceTable parse_differences(std::string_view text);

struct FitRow {
    std::string measure;
    int degree = 1;
    double rho = 0.0;
    double r2 = 0.0;
    double day_min = 0.0;
    double day_max = 0.0;
    std::vector<double> coefficients;  ///< padded with zeros to four entries on write
    std::string error;                 ///< non-empty when the fit failed
};
std::string write_fit_matrix(const std::vector<FitRow>& rows);
std::vector<FitRow> parse_fit_matrix(std::string_view text);

std::string write_bom(const std::map<polyhedra::CellClass, int>& counts);
std::map<polyhedra::CellClass, int> parse_bom(std::string_view text);

std::string write_solution(const std::vector<int>& rotations);
std::vector<int> parse_solution(std::string_view text);

}  // namespace pbrkit::cli
