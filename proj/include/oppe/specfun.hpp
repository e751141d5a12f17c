#pragma once

// Incomplete gamma functions and their derivatives with respect to the shape.
//
//   upper(p, x)  = Γ(p, x) = ∫_x^∞ w^{p-1} e^{-w} dw
//   lower(p, x)  = γ(p, x) = ∫_0^x w^{p-1} e^{-w} dw
//   deriv(j,...) = ∫ (ln w)^j w^{p-1} e^{-w} dw over the same ranges
//
// All functions are pure and thread-safe.

namespace oppe::specfun {

enum class Tail { Upper, Lower };

/// Γ(p, x). Throws DomainError for p <= 0 or x < 0, OverflowError when the
/// result exceeds the double range.
double upper_incomplete_gamma(double p, double x);

/// γ(p, x). Same error contract as upper_incomplete_gamma.
double lower_incomplete_gamma(double p, double x);

/// Regularized Q(p, x) = Γ(p, x) / Γ(p). Never overflows.
double regularized_upper(double p, double x);

/// Regularized P(p, x) = γ(p, x) / Γ(p).
double regularized_lower(double p, double x);

/// j-th shape derivative of Γ(p, x) (Upper) or γ(p, x) (Lower), j in {0, 1, 2}.
/// j = 0 forwards to the plain functions; j >= 1 is evaluated by quadrature
/// after the substitution w = e^{-s}, which removes the endpoint singularities.
double incomplete_gamma_param_deriv(int j, double p, double x, Tail tail);

}  // namespace oppe::specfun
