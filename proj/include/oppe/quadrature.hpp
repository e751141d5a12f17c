#pragma once

#include <functional>

namespace oppe::quad {

struct Options {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    unsigned max_depth = 20;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (21-point) integration over a finite interval.
/// Throws DivergenceError when the integrand is not finite or the requested
/// accuracy is not reached.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Finite interval by the tanh-sinh rule, for integrable singularities at
/// either endpoint. Same error contract as integrate().
Result integrate_singular(const Integrand& f, double a, double b, const Options& opts = {});

/// Integral over [a, ∞). The half-line is walked in chunks whose width doubles
/// from `initial_width`; the walk stops once consecutive chunks contribute
/// nothing measurable. A tail that keeps contributing (or overflows) raises
/// DivergenceError.
Result integrate_to_infinity(const Integrand& f, double a, double initial_width,
                             const Options& opts = {});

/// As above, but the walk may not stop before passing `settle_after`. Use it
/// when the integrand is still rising past `a` (e.g. a mode further out).
Result integrate_to_infinity(const Integrand& f, double a, double initial_width,
                             const Options& opts, double settle_after);

}  // namespace oppe::quad
