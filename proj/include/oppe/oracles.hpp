#pragma once

// Closed-form functionals of two Lindley-generator special cases, evaluated
// exactly as published so they can be diffed against the numeric machinery:
//
//   OLE: Lindley generator with Exponential(θ) baseline
//   OLP: Lindley generator with Pareto(a, θ) baseline
//
// Known slips in the published forms are kept; comparisons report them as
// ErratumRecord values instead of hiding them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oppe/family.hpp"

namespace oppe::oracles {

struct OleParams {
    double lambda;
    double theta;
};

struct OlpParams {
    double lambda;
    double theta;
    double a;
};

OddsOppeDistribution ole_distribution(const OleParams& p);
OddsOppeDistribution olp_distribution(const OlpParams& p);

double ole_renyi(const OleParams& p, double beta);
double olp_renyi(const OlpParams& p, double beta);

double ole_shannon(const OleParams& p);
double olp_shannon(const OlpParams& p);

/// Equal-θ reduction; λ1 is the strength law, λ2 the stress law.
double ole_stress_strength(double lambda1, double lambda2);
/// Equal-θ reduction (a1 = a2 uses the nested equal-location form). The
/// published integral starts at a1, so the form holds for a1 >= a2.
double olp_stress_strength(double lambda1, double lambda2, double theta, double a1, double a2);

/// The published OLE form has e^θ where e^{θt} belongs, so it only
/// matches the numeric value at t = 1.
double ole_incomplete_moment(const OleParams& p, int r, double t);
double olp_incomplete_moment(const OlpParams& p, int r, double t);

double ole_mrl(const OleParams& p, double t);
double olp_mrl(const OlpParams& p, double t);

/// The published OLE MRRL display carries the opposite overall sign of its
/// own general r-th moment form; it is evaluated as printed (with e^{θt} in
/// the normalizer).
double ole_mrrl(const OleParams& p, double t);
double olp_mrrl(const OlpParams& p, double t);

struct ErratumRecord {
    std::string oracle;
    std::string parameters;
    double closed_form;
    double numeric;
};

/// Empty when |closed - numeric| <= tolerance, otherwise a record of both.
std::optional<ErratumRecord> compare(std::string oracle, std::string parameters, double closed,
                                     double numeric, double tolerance = 1e-6);

std::string format(const ErratumRecord& e);

/// One closed form compared against the numeric machinery.
struct OracleCheck {
    std::string oracle;
    std::string parameters;
    double closed_form;
    double numeric;
    std::optional<ErratumRecord> erratum;
};

/// Every closed form over a three-point parameter grid (the incomplete
/// moments, MRL and MRRL also over three (r, t) or t points per grid point).
std::vector<OracleCheck> example_grid(double tolerance = 1e-6);

/// Oracles whose published display is known to be wrong somewhere on the
/// grid: ole_incomplete_moment (e^θ for e^{θt}) and ole_mrrl (sign).
bool documented_erratum(std::string_view oracle);

}  // namespace oppe::oracles
