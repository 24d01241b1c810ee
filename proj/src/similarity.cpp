#include "pbrkit/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pbrkit/error.hpp"

namespace pbrkit::similarity {

namespace {

double dot3(const Rgb& a, const Rgb& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double minkowski(const Rgb& a, const Rgb& b, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

double pearson(const Rgb& a, const Rgb& b) {
    const double ma = (a[0] + a[1] + a[2]) / 3.0;
    const double mb = (b[0] + b[1] + b[2]) / 3.0;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        throw Error(ErrorCode::UndefinedMeasure, "pearson correlation of a constant vector");
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::euclidean: return "euclidean";
        case MeasureKind::manhattan: return "manhattan";
        case MeasureKind::cosine: return "cosine";
        case MeasureKind::pearson: return "pearson";
        case MeasureKind::hamming: return "hamming";
        case MeasureKind::bray_curtis: return "bray_curtis";
        case MeasureKind::minkowski: return "minkowski";
        case MeasureKind::wasserstein: return "wasserstein";
        case MeasureKind::tanimoto: return "tanimoto";
        case MeasureKind::kulczynski: return "kulczynski";
    }
    return "?";
}

MeasureKind parse_measure_kind(std::string_view name) {
    for (MeasureKind k : kAllMeasureKinds) {
        if (to_string(k) == name) return k;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown measure '" + std::string(name) + "'");
}

bool is_distance(MeasureKind kind) {
    return kind != MeasureKind::cosine && kind != MeasureKind::pearson &&
           kind != MeasureKind::tanimoto;
}

double measure(const Rgb& a, const Rgb& b, const Measure& m) {
    switch (m.kind) {
        case MeasureKind::euclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
            return std::sqrt(s);
        }
        case MeasureKind::manhattan:
            return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
        case MeasureKind::cosine: {
            const double aa = dot3(a, a);
            const double bb = dot3(b, b);
            if (aa == 0.0 || bb == 0.0) {
                throw Error(ErrorCode::UndefinedMeasure, "cosine similarity of a zero vector");
            }
            // One square root keeps identical inputs at exactly 1.
            return std::clamp(dot3(a, b) / std::sqrt(aa * bb), -1.0, 1.0);
        }
        case MeasureKind::pearson: return pearson(a, b);
        case MeasureKind::hamming: {
            if (m.hamming_quantization < 1) {
                throw Error(ErrorCode::InvalidArgument, "hamming quantization must be >= 1");
            }
            const double q = m.hamming_quantization;
            int count = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                count += std::llround(a[i] / q) != std::llround(b[i] / q);
            }
            return count;
        }
        case MeasureKind::bray_curtis: {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                num += std::abs(a[i] - b[i]);
                den += a[i] + b[i];
            }
            if (den == 0.0) {
                throw Error(ErrorCode::UndefinedMeasure, "bray-curtis of two zero vectors");
            }
            return num / den;
        }
        case MeasureKind::minkowski:
            if (!(m.minkowski_p >= 1.0)) {
                throw Error(ErrorCode::InvalidP, "minkowski p must be >= 1");
            }
            return minkowski(a, b, m.minkowski_p);
        case MeasureKind::wasserstein: {
            Rgb sa = a, sb = b;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            return (std::abs(sa[0] - sb[0]) + std::abs(sa[1] - sb[1]) + std::abs(sa[2] - sb[2])) /
                   3.0;
        }
        case MeasureKind::tanimoto: {
            const double ab = dot3(a, b);
            const double den = dot3(a, a) + dot3(b, b) - ab;
            if (den == 0.0) {
                throw Error(ErrorCode::UndefinedMeasure, "tanimoto coefficient of two zero vectors");
            }
            return std::min(ab / den, 1.0);
        }
        case MeasureKind::kulczynski: {
            if (!(m.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
            double s = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                s += std::abs(a[i] - b[i]) / std::max(std::min(a[i], b[i]), m.epsilon);
            }
            return s / 3.0;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown measure");
}

SignedDifference signed_difference(const Rgb& test, const Rgb& control, const Measure& m) {
    const double v = measure(test, control, m);
    const double signed_value = is_distance(m.kind) ? -v : v - 1.0;
    return {signed_value == 0.0 ? 0.0 : signed_value, m};
}

}  // namespace pbrkit::similarity
