#include "pbrkit/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "pbrkit/error.hpp"

namespace pbrkit::regression {

namespace {

constexpr double kRootTol = 1e-9;

// Gaussian elimination with partial pivoting on a small dense system.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i]));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) <= 1e-13 * scale) {
            throw Error(ErrorCode::SingularSystem, "normal equations are singular");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

// Real roots of c0 + c1 x + c2 x^2 (lower-degree cases handled).
std::vector<double> real_roots_upto_quadratic(double c0, double c1, double c2) {
    if (std::abs(c2) <= 1e-15 * (std::abs(c1) + std::abs(c0))) {
        if (c1 == 0.0) return {};
        return {-c0 / c1};
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    // Numerically stable pair.
    const double q = -0.5 * (c1 + std::copysign(sq, c1));
    std::vector<double> out;
    if (q != 0.0) out.push_back(c0 / q);
    out.push_back(q / c2);
    return out;
}

std::vector<double> ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double RegressionModel::evaluate(double day) const {
    double y = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * day + *it;
    return y;
}

RegressionModel fit(std::span<const Observation> observations, int degree,
                    const similarity::Measure& measure) {
    if (degree < 1 || degree > 3) throw Error(ErrorCode::InvalidArgument, "degree must be 1, 2 or 3");
    const auto m = static_cast<std::size_t>(degree) + 1;
    if (observations.size() < m) {
        throw Error(ErrorCode::InsufficientData, "need at least degree + 1 observations");
    }
    std::set<double> days;
    double scale = 0.0;
    for (const auto& o : observations) {
        days.insert(o.day);
        scale = std::max(scale, std::abs(o.day));
    }
    if (days.size() < m || scale == 0.0) {
        throw Error(ErrorCode::SingularSystem, "not enough distinct days for this degree");
    }

    std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (const auto& o : observations) {
        const double s = o.day / scale;
        std::vector<double> pw(2 * m - 1, 1.0);
        for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * s;
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) gram[r][c] += pw[r + c];
            rhs[r] += pw[r] * o.difference;
        }
    }
    auto beta = solve_dense(std::move(gram), std::move(rhs));

    RegressionModel model;
    model.degree = degree;
    model.measure = measure;
    double factor = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        model.coefficients.push_back(beta[k] / factor);
        factor *= scale;
    }
    model.day_min = *days.begin();
    model.day_max = *days.rbegin();

    try {
        const Goodness g = goodness(model, observations);
        // Fit quality carries the sign of the day trend, so a falling series
        // reports a negative rho.
        std::vector<double> xs, ys;
        for (const auto& o : observations) {
            xs.push_back(o.day);
            ys.push_back(o.difference);
        }
        const double trend = pearson_correlation(xs, ys);
        model.pearson_rho = std::copysign(g.pearson_rho.value_or(0.0), trend < 0.0 ? -1.0 : 1.0);
        model.r_squared = std::clamp(g.r_squared, 0.0, 1.0);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UndefinedGoodness) throw;
        model.pearson_rho = std::numeric_limits<double>::quiet_NaN();
        model.r_squared = std::numeric_limits<double>::quiet_NaN();
    }
    return model;
}

Goodness goodness(const RegressionModel& model, std::span<const Observation> observations) {
    if (observations.size() < 2) {
        throw Error(ErrorCode::UndefinedGoodness, "goodness needs at least two observations");
    }
    std::vector<double> pred, obs;
    for (const auto& o : observations) {
        pred.push_back(model.evaluate(o.day));
        obs.push_back(o.difference);
    }
    const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / static_cast<double>(obs.size());
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ss_tot += (obs[i] - mean) * (obs[i] - mean);
        ss_res += (obs[i] - pred[i]) * (obs[i] - pred[i]);
    }
    if (ss_tot == 0.0) {
        throw Error(ErrorCode::UndefinedGoodness, "observed differences are constant");
    }
    Goodness g;
    g.r_squared = 1.0 - ss_res / ss_tot;
    const bool constant_pred = std::all_of(pred.begin(), pred.end(), [&](double p) { return p == pred[0]; });
    if (!constant_pred) g.pearson_rho = pearson_correlation(pred, obs);
    return g;
}

AgeEstimate estimate_age(const RegressionModel& model, double observed_difference) {
    const double lo = model.day_min;
    const double hi = model.day_max;
    const auto& c = model.coefficients;

    // Turning points of the polynomial split the domain into monotone pieces.
    std::vector<double> cuts{lo};
    if (c.size() >= 3) {
        const double d0 = c[1];
        const double d1 = 2.0 * c[2];
        const double d2 = c.size() >= 4 ? 3.0 * c[3] : 0.0;
        auto crit = real_roots_upto_quadratic(d0, d1, d2);
        std::sort(crit.begin(), crit.end());
        for (double x : crit) {
            if (x > lo && x < hi) cuts.push_back(x);
        }
    }
    cuts.push_back(hi);

    auto f = [&](double d) { return model.evaluate(d) - observed_difference; };
    const double ytol = 1e-12 * std::max(1.0, std::abs(observed_difference));
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i];
        double b = cuts[i + 1];
        double fa = f(a);
        const double fb = f(b);
        double root;
        if (std::abs(fa) <= ytol) {
            root = a;
        } else if (std::abs(fb) <= ytol) {
            root = b;
        } else if ((fa < 0.0) != (fb < 0.0)) {
            for (int it = 0; it < 200 && b - a > kRootTol; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            root = 0.5 * (a + b);
        } else {
            continue;
        }
        if (roots.empty() || root - roots.back() > kRootTol) roots.push_back(root);
    }
    if (roots.empty()) {
        throw Error(ErrorCode::OutOfRange,
                    "difference " + std::to_string(observed_difference) +
                        " is not reached within the calibrated day range");
    }
    return {roots.front(), roots.size() > 1};
}

void AlertPolicy::validate() const {
    if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "alert threshold must be > 0");
}

AlertResult check_alert(const AlertPolicy& policy, const RegressionModel& model,
                        double observed_difference) {
    policy.validate();
    AlertResult r;
    if (policy.mode == AlertMode::by_estimated_day) {
        const auto est = estimate_age(model, observed_difference);
        r.estimated_day = est.day;
        r.alert = est.day >= policy.threshold;
    } else {
        try {
            r.estimated_day = estimate_age(model, observed_difference).day;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OutOfRange) throw;
        }
        r.alert = std::abs(observed_difference) >= policy.threshold;
    }
    r.message = r.alert ? "replace algae" : "algae ok";
    return r;
}

const RegressionModel& select_model(std::span<const RegressionModel> candidates, double parsimony) {
    if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "no candidate models");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& m : candidates) {
        if (!std::isnan(m.r_squared)) best = std::max(best, m.r_squared);
    }
    const RegressionModel* chosen = &candidates.front();
    int lowest = std::numeric_limits<int>::max();
    for (const auto& m : candidates) {
        if (std::isnan(m.r_squared) || m.r_squared < best - parsimony) continue;
        if (m.degree < lowest) {
            lowest = m.degree;
            chosen = &m;
        }
    }
    return *chosen;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorCode::UndefinedGoodness, "correlation needs two equal-length series");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(ErrorCode::UndefinedGoodness, "correlation of a constant series");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    return pearson_correlation(rx, ry);
}

}  // namespace pbrkit::regression
