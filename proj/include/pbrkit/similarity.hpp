#pragma once

#include <array>
#include <string_view>

namespace pbrkit::similarity {

enum class MeasureKind {
    euclidean,
    manhattan,
    cosine,
    pearson,
    hamming,
    bray_curtis,
    minkowski,
    wasserstein,
    tanimoto,
    kulczynski,
};

inline constexpr std::array<MeasureKind, 10> kAllMeasureKinds = {
    MeasureKind::euclidean,   MeasureKind::manhattan, MeasureKind::cosine,
    MeasureKind::pearson,     MeasureKind::hamming,   MeasureKind::bray_curtis,
    MeasureKind::minkowski,   MeasureKind::wasserstein, MeasureKind::tanimoto,
    MeasureKind::kulczynski};

std::string_view to_string(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view name);

/// Distances grow with dissimilarity; cosine, pearson and tanimoto are
/// similarities bounded above by 1.
bool is_distance(MeasureKind kind);

struct Measure {
    MeasureKind kind = MeasureKind::euclidean;
    double minkowski_p = 3.0;
    int hamming_quantization = 1;
    /// Floor for kulczynski's min(a_i, b_i) denominators.
    double epsilon = 1e-9;
};

using Rgb = std::array<double, 3>;

/// Evaluates the measure on two colour triples.
///
/// hamming counts channels that differ after rounding to multiples of
/// `hamming_quantization`. wasserstein treats each triple as a 3-point
/// empirical distribution, so it ignores which channel holds which value.
/// kulczynski replaces any min(a_i, b_i) below epsilon by epsilon, which
/// makes it explode on pure primaries such as the (0, 255, 0) control.
///
/// Throws UndefinedMeasure for a zero vector (cosine), two zero vectors
/// (tanimoto) or a constant vector (pearson); InvalidP for minkowski_p < 1.
double measure(const Rgb& a, const Rgb& b, const Measure& m);

struct SignedDifference {
    double value = 0.0;
    Measure measure;
};

/// Oriented so identical colours give 0 and diverging colours go negative:
/// -d(test, control) for distances, s(test, control) - 1 for similarities.
SignedDifference signed_difference(const Rgb& test, const Rgb& control, const Measure& m);

}  // namespace pbrkit::similarity
