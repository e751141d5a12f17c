#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oppe {

struct Uniform {
    double theta;
};
struct Exponential {
    double theta;
};
struct Pareto {
    double a;
    double theta;
};
/// One-scale Burr XII: G(x) = 1 - (1 + x^α)^{-θ}.
struct BurrXII {
    double alpha;
    double theta;
};

enum class BaselineKind { Uniform, Exponential, Pareto, BurrXII };

/// A baseline distribution G together with its odds map V = G / (1 - G).
/// Parameters are validated on construction; the object is immutable.
class Baseline {
public:
    using Params = std::variant<Uniform, Exponential, Pareto, BurrXII>;

    Baseline(Uniform p);
    Baseline(Exponential p);
    Baseline(Pareto p);
    Baseline(BurrXII p);

    BaselineKind kind() const { return static_cast<BaselineKind>(params_.index()); }
    const Params& params() const { return params_; }

    /// Support endpoints; upper is +inf except for Uniform.
    double lower() const;
    double upper() const;

private:
    Params params_;
};

std::string_view kind_name(BaselineKind kind);
BaselineKind kind_from_name(std::string_view name);

/// Free parameter names in the canonical order used by estimation and the CLI:
/// uniform {theta}, exponential {theta}, pareto {theta, a}, burrxii {alpha, theta}.
std::span<const std::string_view> parameter_names(BaselineKind kind);
std::vector<double> parameter_values(const Baseline& b);
Baseline make_baseline(BaselineKind kind, std::span<const double> values);

double baseline_cdf(const Baseline& b, double x);
/// 1 - G, computed without subtraction.
double baseline_sf(const Baseline& b, double x);
double baseline_pdf(const Baseline& b, double x);

/// V(x); DomainError unless x is strictly inside the support.
double odds(const Baseline& b, double x);
/// ln V(x), accurate where V itself would overflow.
double log_odds(const Baseline& b, double x);
/// V^{-1}(z); DomainError for z <= 0 (z = +inf maps to the upper end).
double inverse_odds(const Baseline& b, double z);
/// ln V'(x) = ln g(x) - 2 ln(1 - G(x)).
double log_odds_derivative(const Baseline& b, double x);
/// d/dx ln V'(x) = V''(x) / V'(x).
double log_odds_derivative_slope(const Baseline& b, double x);

std::string describe(const Baseline& b);

}  // namespace oppe
