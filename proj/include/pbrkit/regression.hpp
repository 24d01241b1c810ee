#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbrkit/similarity.hpp"

namespace pbrkit::regression {

struct Observation {
    double day = 0.0;
    double difference = 0.0;
};

struct RegressionModel {
    int degree = 1;
    std::vector<double> coefficients;  ///< ascending powers c0 .. c_degree
    similarity::Measure measure;
    double day_min = 0.0;
    double day_max = 0.0;
    /// Correlation of predictions with observations, negated when the
    /// differences fall with the day. NaN when the fitted data are constant.
    double pearson_rho = 0.0;
    double r_squared = 0.0;    ///< NaN when the fitted data are constant

    double evaluate(double day) const;
};

/// Ordinary least squares polynomial of degree 1..3 through (day, difference),
/// solved from the normal equations on day / max|day|. Throws
/// InsufficientData for fewer than degree + 1 points and SingularSystem when
/// fewer than degree + 1 distinct days are present.
RegressionModel fit(std::span<const Observation> observations, int degree,
                    const similarity::Measure& measure = {});

struct Goodness {
    std::optional<double> pearson_rho;  ///< empty when predictions are constant
    double r_squared = 0.0;
};

/// Pearson rho between predicted and observed differences and
/// R^2 = 1 - SS_res / SS_tot. Throws UndefinedGoodness for fewer than two
/// observations or constant observed differences.
Goodness goodness(const RegressionModel& model, std::span<const Observation> observations);

struct AgeEstimate {
    double day = 0.0;
    bool multiple_roots = false;
};

/// Day at which the model reaches `observed_difference`, searched only inside
/// [day_min, day_max]. The domain is split at the polynomial's turning points
/// and each monotone piece is bisected to 1e-9 days; the smallest root wins and
/// `multiple_roots` flags that more than one exists. Throws OutOfRange when the
/// value is never attained on the domain.
AgeEstimate estimate_age(const RegressionModel& model, double observed_difference);

enum class AlertMode { by_difference, by_estimated_day };

struct AlertPolicy {
    double threshold = 100.0;
    AlertMode mode = AlertMode::by_difference;

    void validate() const;
};

struct AlertResult {
    bool alert = false;
    std::optional<double> estimated_day;
    std::string message;
};

/// by_difference: alert iff |difference| >= threshold (the age estimate is
/// attached when the value lies within the model's range).
/// by_estimated_day: alert iff estimate_age(...) >= threshold; estimation
/// errors propagate.
AlertResult check_alert(const AlertPolicy& policy, const RegressionModel& model,
                        double observed_difference);

/// Highest R^2, preferring the lower degree when within `parsimony` of the best.
const RegressionModel& select_model(std::span<const RegressionModel> candidates,
                                    double parsimony = 0.01);

double pearson_correlation(std::span<const double> x, std::span<const double> y);
/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace pbrkit::regression
