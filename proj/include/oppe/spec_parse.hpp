#pragma once

// Text forms accepted by the command line:
//
//   family    lindley | lindley:lambda=0.5 | 1,0,1:lambda=2
//   baseline  exponential:theta=1 | pareto:a=1,theta=0.5 | burrxii:alpha=2,theta=1
//   fix       a=min | a=0.013
//   grid      start:stop:count
//
// Parse failures throw InvalidInput.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oppe/baseline.hpp"
#include "oppe/family.hpp"

namespace oppe {

struct FamilyText {
    std::string label;  // preset name, or "custom"
    std::vector<double> coefficients;
    std::optional<double> lambda;
};

struct BaselineText {
    BaselineKind kind;
    std::map<std::string, double, std::less<>> params;
};

struct LocationText {
    bool at_minimum = true;
    double value = 0.0;
};

FamilyText parse_family(std::string_view text);
BaselineText parse_baseline(std::string_view text);
LocationText parse_fix(std::string_view text);
/// `count` evenly spaced points from start to stop inclusive (count >= 2).
std::vector<double> parse_grid(std::string_view text);

/// Complete distribution; every parameter, λ included, must be present.
OddsOppeDistribution build_distribution(const FamilyText& family, const BaselineText& baseline);

/// Φ in estimation order for a fully specified family and baseline.
std::vector<double> full_parameters(const FamilyText& family, const BaselineText& baseline);

}  // namespace oppe
