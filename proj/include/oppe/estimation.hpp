#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oppe/baseline.hpp"
#include "oppe/family.hpp"

namespace oppe {

/// The shape of a model without its parameter values: generator coefficients
/// and baseline kind. Parameter vectors Φ are ordered (λ, baseline params...)
/// with the baseline part in parameter_names(kind) order.
struct ModelTemplate {
    std::vector<double> coefficients;
    BaselineKind baseline;
};

std::vector<std::string> parameter_names(const ModelTemplate& model);
OddsOppeDistribution make_distribution(const ModelTemplate& model, std::span<const double> phi);

/// Σ ln f(x_i; Φ). Returns -inf when Φ is invalid or a point lies outside the
/// support (a Pareto point equal to a is inside: the density is finite there).
/// Throws InvalidInput for empty or non-finite data.
double log_likelihood(const ModelTemplate& model, std::span<const double> phi,
                      std::span<const double> data);

/// Central-difference gradient of log_likelihood, step max(1e-6, 1e-6 |Φ_j|).
std::vector<double> score(const ModelTemplate& model, std::span<const double> phi,
                          std::span<const double> data);

enum class LocationMode {
    Minimum,  // Pareto a = min(data), the default
    Fixed,    // Pareto a = FitConfig::pareto_a
    Free,     // a estimated on (0, min(data))
};

struct FitConfig {
    /// Objective evaluations allowed per start. 0 evaluates the start point only.
    int max_evaluations = 3000;
    /// Simplex stops when its ℓ spread falls below this.
    double tolerance = 1e-10;
    int starts = 8;
    /// Full Φ to use as the first start (others are scattered around it).
    std::optional<std::vector<double>> initial;
    LocationMode location = LocationMode::Minimum;
    double pareto_a = 0.0;
    /// Whether a held-fixed Pareto a counts toward k in AIC/BIC.
    bool count_fixed_location = true;
};

struct StartSummary {
    std::vector<double> start;
    std::vector<double> estimate;
    double log_likelihood;
    bool converged;
    int evaluations;
};

struct FitResult {
    std::vector<std::string> names;
    std::vector<double> estimates;
    double log_likelihood;
    double aic;
    double bic;
    int k;
    std::size_t n;
    bool converged;
    int evaluations;
    std::vector<StartSummary> starts;
};

struct InformationCriteria {
    double aic;
    double bic;
};
InformationCriteria information_criteria(double log_likelihood, int k, std::size_t n);

/// Maximum likelihood by multi-start Nelder-Mead over transformed parameters.
/// A start whose optimum drifts past 1e8 (or below 1e-8) on a positive
/// parameter's scale is reported as not converged: the likelihood has no
/// interior maximum in that direction.
/// Throws InvalidInput for unusable data (too few points, zero variance,
/// non-finite values, points outside a fixed support).
FitResult fit_mle(const ModelTemplate& model, std::span<const double> data,
                  const FitConfig& config = {});

}  // namespace oppe
