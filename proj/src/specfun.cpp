#include "oppe/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oppe/errors.hpp"
#include "oppe/quadrature.hpp"

namespace oppe::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 100000;

void check_args(double p, double x, const char* who) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError(std::string(who) + ": shape must be positive, got " + std::to_string(p));
    }
    if (!(x >= 0.0)) {
        throw DomainError(std::string(who) + ": argument must be nonnegative, got " +
                          std::to_string(x));
    }
}

// Σ_{n≥0} x^n / (p (p+1) ... (p+n)); the lower series without its e^{-x} x^p prefactor.
double lower_series(double p, double x) {
    double term = 1.0 / p;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (p + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps * 0.5) {
            return sum;
        }
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

// Continued fraction for Γ(p, x) e^{x} x^{-p} (modified Lentz), valid for x > p - 1.
double upper_fraction(double p, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - p;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - p);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h;
        }
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

bool use_series(double p, double x) { return x <= p + 1.0; }

double complete_gamma(double p) {
    const double g = std::tgamma(p);
    if (!std::isfinite(g)) {
        throw OverflowError("Γ(" + std::to_string(p) + ") exceeds the double range");
    }
    return g;
}

// e^{-x} x^p, evaluated in log space.
double kernel(double p, double x) { return std::exp(p * std::log(x) - x); }

// u^j exp(p u - e^u): the integrand after w = e^{u}, for the part of the
// range with w >= 1. Decays double-exponentially as u -> ∞.
double upper_kernel(int j, double p, double u) {
    return std::pow(u, j) * std::exp(p * u - std::exp(u));
}

// (-s)^j exp(-p s - e^{-s}): the integrand after w = e^{-s}, for w <= 1.
// Decays like e^{-p s} as s -> ∞.
double lower_kernel(int j, double p, double s) {
    return std::pow(-s, j) * std::exp(-p * s - std::exp(-s));
}

const quad::Options& deriv_options() {
    static const quad::Options opts{1e-300, 1e-13, 30};
    return opts;
}

// ∫ over w in [e^{lo}, ∞) of (ln w)^j w^{p-1} e^{-w} dw, lo >= 0.
double upper_part(int j, double p, double lo) {
    auto f = [j, p](double u) { return upper_kernel(j, p, u); };
    return quad::integrate_to_infinity(f, lo, 1.0, deriv_options(), std::max(lo, std::log(p)))
        .value;
}

// ∫ over w in (0, e^{-lo}] of (ln w)^j w^{p-1} e^{-w} dw, lo >= 0.
double lower_part(int j, double p, double lo) {
    auto f = [j, p](double s) { return lower_kernel(j, p, s); };
    return quad::integrate_to_infinity(f, lo, 1.0, deriv_options(), std::max(lo, -std::log(p)))
        .value;
}

}  // namespace

double regularized_lower(double p, double x) {
    check_args(p, x, "regularized_lower");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (use_series(p, x)) {
        return std::exp(p * std::log(x) - x - std::lgamma(p)) * lower_series(p, x);
    }
    return 1.0 - regularized_upper(p, x);
}

double regularized_upper(double p, double x) {
    check_args(p, x, "regularized_upper");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (use_series(p, x)) {
        return 1.0 - regularized_lower(p, x);
    }
    return std::exp(p * std::log(x) - x - std::lgamma(p)) * upper_fraction(p, x);
}

double upper_incomplete_gamma(double p, double x) {
    check_args(p, x, "upper_incomplete_gamma");
    if (std::isinf(x)) return 0.0;
    if (x == 0.0) return complete_gamma(p);
    if (use_series(p, x)) {
        return complete_gamma(p) - kernel(p, x) * lower_series(p, x);
    }
    const double value = kernel(p, x) * upper_fraction(p, x);
    if (!std::isfinite(value)) {
        throw OverflowError("Γ(p, x) exceeds the double range");
    }
    return value;
}

double lower_incomplete_gamma(double p, double x) {
    check_args(p, x, "lower_incomplete_gamma");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return complete_gamma(p);
    if (use_series(p, x)) {
        const double value = kernel(p, x) * lower_series(p, x);
        if (!std::isfinite(value)) {
            throw OverflowError("γ(p, x) exceeds the double range");
        }
        return value;
    }
    return complete_gamma(p) - kernel(p, x) * upper_fraction(p, x);
}

double incomplete_gamma_param_deriv(int j, double p, double x, Tail tail) {
    if (j < 0 || j > 2) {
        throw DomainError("incomplete_gamma_param_deriv: order " + std::to_string(j) +
                          " is not supported (0, 1 or 2)");
    }
    check_args(p, x, "incomplete_gamma_param_deriv");
    if (j == 0) {
        return tail == Tail::Upper ? upper_incomplete_gamma(p, x) : lower_incomplete_gamma(p, x);
    }
    // Split the w-range at w = 1 so each piece has a single decaying end.
    if (tail == Tail::Upper) {
        if (std::isinf(x)) return 0.0;
        if (x >= 1.0) {
            return upper_part(j, p, std::log(x));
        }
        const double above_one = upper_part(j, p, 0.0);
        if (x == 0.0) {
            return above_one + lower_part(j, p, 0.0);
        }
        auto f = [j, p](double s) { return lower_kernel(j, p, s); };
        return above_one + quad::integrate(f, 0.0, -std::log(x), deriv_options()).value;
    }
    if (x == 0.0) return 0.0;
    if (x <= 1.0) {
        return lower_part(j, p, -std::log(x));
    }
    const double below_one = lower_part(j, p, 0.0);
    if (std::isinf(x)) {
        return below_one + upper_part(j, p, 0.0);
    }
    auto f = [j, p](double u) { return upper_kernel(j, p, u); };
    return below_one + quad::integrate(f, 0.0, std::log(x), deriv_options()).value;
}

}  // namespace oppe::specfun
