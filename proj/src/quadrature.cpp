#include "oppe/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oppe/errors.hpp"

namespace oppe::quad {

namespace {

std::string describe(double a, double b, double value, double error) {
    std::ostringstream os;
    os << "integral over [" << a << ", " << b << "] = " << value << " (error estimate " << error
       << ")";
    return os.str();
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
    if (a == b) {
        return {};
    }
    using gk = boost::math::quadrature::gauss_kronrod<double, 21>;
    double error = 0.0;
    double l1 = 0.0;
    // Boost only takes a relative tolerance; fold abs_tol in using a one-panel
    // estimate of ∫|f| so negligible pieces are not refined to max_depth. The
    // estimate can undershoot badly, so a miss falls back to rel_tol alone.
    gk::integrate(f, a, b, 0, opts.rel_tol, &error, &l1);
    double value = 0.0;
    if (l1 > 0.0 && opts.abs_tol > 2.0 * opts.rel_tol * l1) {
        value = gk::integrate(f, a, b, opts.max_depth, 0.5 * opts.abs_tol / l1, &error, &l1);
        if (!std::isfinite(value) || !(error <= std::max(opts.abs_tol, opts.rel_tol * l1))) {
            value = gk::integrate(f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
        }
    } else {
        value = gk::integrate(f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
    }
    if (!std::isfinite(value) || !std::isfinite(error)) {
        throw DivergenceError("non-finite " + describe(a, b, value, error));
    }
    // Boost stops at max_depth without complaint; a large miss means the
    // integrand has a feature the rule cannot resolve.
    const double target = std::max(opts.abs_tol, opts.rel_tol * l1);
    if (error > 1e3 * target) {
        throw DivergenceError("quadrature did not converge: " + describe(a, b, value, error));
    }
    return {value, error};
}

Result integrate_singular(const Integrand& f, double a, double b, const Options& opts) {
    if (a == b) {
        return {};
    }
    thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        auto g = [&f](double x) { return f(x); };
        value = rule.integrate(g, a, b, opts.rel_tol, &error, &l1);
    } catch (const std::domain_error& e) {
        throw DivergenceError(std::string("tanh-sinh: ") + e.what());
    }
    if (!std::isfinite(value) || !std::isfinite(error)) {
        throw DivergenceError("non-finite " + describe(a, b, value, error));
    }
    const double target = std::max(opts.abs_tol, opts.rel_tol * l1);
    if (error > 1e3 * target) {
        throw DivergenceError("quadrature did not converge: " + describe(a, b, value, error));
    }
    return {value, error};
}

Result integrate_to_infinity(const Integrand& f, double a, double initial_width,
                             const Options& opts, double settle_after) {
    constexpr int kMaxChunks = 80;
    constexpr int kQuietChunks = 2;

    Result total;
    double lo = a;
    double width = initial_width > 0.0 ? initial_width : 1.0;
    int quiet = 0;
    for (int chunk = 0; chunk < kMaxChunks; ++chunk) {
        const double hi = lo + width;
        // A chunk only needs to be accurate relative to the whole integral.
        Options chunk_opts = opts;
        chunk_opts.abs_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value));
        const Result part = integrate(f, lo, hi, chunk_opts);
        total.value += part.value;
        total.error += part.error;
        if (!std::isfinite(total.value)) {
            break;
        }
        const double negligible =
            1e-2 * std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value));
        if (hi >= settle_after && std::abs(part.value) <= negligible) {
            if (++quiet >= kQuietChunks) {
                return total;
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    throw DivergenceError("tail of integral from " + std::to_string(a) +
                          " does not settle (running value " + std::to_string(total.value) + ")");
}

Result integrate_to_infinity(const Integrand& f, double a, double initial_width,
                             const Options& opts) {
    return integrate_to_infinity(f, a, initial_width, opts, a);
}

}  // namespace oppe::quad
