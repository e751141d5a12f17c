#include "oppe/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oppe/errors.hpp"
#include "oppe/quadrature.hpp"
#include "oppe/specfun.hpp"

namespace oppe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const quad::Options& z_options() {
    static const quad::Options opts{1e-12, 1e-11, 30};
    return opts;
}

double log_sum_exp(const std::vector<double>& terms) {
    double peak = -kInf;
    for (double t : terms) peak = std::max(peak, t);
    if (peak == -kInf) return -kInf;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    return peak + std::log(sum);
}

// ln Σ_k a_k v^k given ln v.
double log_poly(std::span<const double> a, double log_v) {
    std::vector<double> terms(a.size(), -kInf);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > 0.0) terms[k] = std::log(a[k]) + (k == 0 ? 0.0 : k * log_v);
    }
    return log_sum_exp(terms);
}

// ln of the density of Z = λV(X): Σ_k π_k z^k e^{-z} / k!.
double log_z_density(const GeneratorSpec& g, double z) {
    const auto w = g.weights();
    if (z == 0.0) return w[0] > 0.0 ? std::log(w[0]) : -kInf;
    const double log_z = std::log(z);
    std::vector<double> terms(w.size(), -kInf);
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] > 0.0) terms[k] = std::log(w[k]) + k * log_z - std::lgamma(k + 1.0);
    }
    return log_sum_exp(terms) - z;
}

double z_lower_cdf(const GeneratorSpec& g, double z) {
    const auto w = g.weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] > 0.0) sum += w[k] * specfun::regularized_lower(k + 1.0, z);
    }
    return sum;
}

double z_upper_cdf(const GeneratorSpec& g, double z) {
    const auto w = g.weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] > 0.0) sum += w[k] * specfun::regularized_upper(k + 1.0, z);
    }
    return sum;
}

double x_of_z(const OddsOppeDistribution& d, double z) {
    return inverse_odds(d.baseline(), z / d.lambda());
}

// z-coordinate of a point x, clamped to [0, ∞].
double z_of_x(const OddsOppeDistribution& d, double x) {
    if (!(x > d.lower())) return 0.0;
    if (!(x < d.upper())) return kInf;
    return d.lambda() * odds(d.baseline(), x);
}

// ln f at x = V^{-1}(z/λ), using z directly for the generator part.
double log_pdf_at_z(const OddsOppeDistribution& d, double z, double x) {
    const auto& g = d.generator();
    return g.log_normalizer() + log_odds_derivative(d.baseline(), x) +
           log_poly(g.coefficients(), std::log(z / d.lambda())) - z;
}

bool interior(const OddsOppeDistribution& d, double x) { return x > d.lower() && x < d.upper(); }

// ∫_{lo}^{hi} integrand(z) dz in z-space. Long finite ranges are walked in
// doubling chunks so the bulk of the gamma mixture is never skipped.
double z_integral(const OddsOppeDistribution& d, const quad::Integrand& integrand, double lo,
                  double hi) {
    if (!(hi > lo)) return 0.0;
    const double width = static_cast<double>(d.generator().degree()) + 1.0;
    double total = 0.0;
    double a = lo;
    double step = width;
    if (lo == 0.0) {
        // Baseline terms such as ln x or x^{c} can be singular at z = 0, which
        // defeats Gauss-Kronrod; tanh-sinh copes with that but not with kinks.
        const double b = std::min(hi, width);
        try {
            total = quad::integrate(integrand, 0.0, b, z_options()).value;
        } catch (const DivergenceError&) {
            total = quad::integrate_singular(integrand, 0.0, b, z_options()).value;
        }
        a = b;
        step *= 2.0;
    }
    if (std::isinf(hi)) {
        const double settle = std::max(a, static_cast<double>(d.generator().degree()));
        return total + quad::integrate_to_infinity(integrand, a, step, z_options(), settle).value;
    }
    while (a < hi) {
        const double b = std::min(hi, a + step);
        total += quad::integrate(integrand, a, b, z_options()).value;
        a = b;
        step *= 2.0;
    }
    return total;
}

void require_order(int r, const char* who) {
    if (r < 1) throw DomainError(std::string(who) + ": order must be >= 1");
}

}  // namespace

double cdf(const OddsOppeDistribution& d, double x) {
    if (!(x > d.lower())) return 0.0;
    if (!(x < d.upper())) return 1.0;
    return generator_cdf(d.generator(), odds(d.baseline(), x));
}

double survival(const OddsOppeDistribution& d, double x) {
    if (!(x > d.lower())) return 1.0;
    if (!(x < d.upper())) return 0.0;
    return generator_survival(d.generator(), odds(d.baseline(), x));
}

double log_pdf(const OddsOppeDistribution& d, double x) {
    if (x < d.lower() || !(x < d.upper())) return -kInf;
    const auto& g = d.generator();
    if (x == d.lower()) {
        // V = 0, so only the a_0 term survives and V'(lower) = g(lower).
        const double a0 = g.coefficients()[0];
        if (a0 == 0.0) return -kInf;
        return g.log_normalizer() + std::log(a0) + std::log(baseline_pdf(d.baseline(), x));
    }
    const double log_v = log_odds(d.baseline(), x);
    const double v = std::exp(log_v);
    return g.log_normalizer() + log_odds_derivative(d.baseline(), x) +
           log_poly(g.coefficients(), log_v) - g.rate() * v;
}

double pdf(const OddsOppeDistribution& d, double x) { return std::exp(log_pdf(d, x)); }

double hazard(const OddsOppeDistribution& d, double t) {
    const double s = survival(d, t);
    if (!(s > 0.0)) {
        throw DomainError("hazard: survival underflows to zero at t = " + std::to_string(t));
    }
    return pdf(d, t) / s;
}

double quantile(const OddsOppeDistribution& d, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("quantile: u must lie in (0, 1), got " + std::to_string(u));
    }
    const auto& g = d.generator();
    // Increasing in z; the upper half is solved on the survival side so that
    // 1 - u never loses digits to cancellation.
    const bool lower_half = u <= 0.5;
    const double target = lower_half ? u : 1.0 - u;
    auto excess = [&](double z) {
        return lower_half ? z_lower_cdf(g, z) - target : target - z_upper_cdf(g, z);
    };

    double lo = 0.0;
    double hi = static_cast<double>(g.degree()) + 1.0;
    int grow = 0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 1100) {
            throw ConvergenceError("quantile: no bracket found for u = " + std::to_string(u));
        }
    }

    // Safeguarded Newton: a step that leaves the bracket is replaced by bisection.
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        const double e = excess(z);
        if (e == 0.0) break;
        if (e < 0.0) lo = z; else hi = z;
        const double slope = std::exp(log_z_density(g, z));
        double next = slope > 0.0 ? z - e / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - z) <= 4.0 * std::numeric_limits<double>::epsilon() * z) {
            z = next;
            break;
        }
        if (it == 399) {
            throw ConvergenceError("quantile: no convergence for u = " + std::to_string(u) +
                                   " in bracket [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "]");
        }
        z = next;
    }
    if (z <= 0.0) return d.lower();
    return x_of_z(d, z);
}

double sample_one(const OddsOppeDistribution& d, RandomStream& rng) {
    return inverse_odds(d.baseline(), sample_generator_one(d.generator(), rng));
}

std::vector<double> sample(const OddsOppeDistribution& d, RandomStream& rng, std::size_t n) {
    std::vector<double> out(n);
    for (auto& x : out) x = sample_one(d, rng);
    return out;
}

double partial_expectation(const OddsOppeDistribution& d, const std::function<double(double)>& phi,
                           Side side, double t) {
    const auto& g = d.generator();
    auto integrand = [&](double z) {
        const double w = std::exp(log_z_density(g, z));
        return w == 0.0 ? 0.0 : phi(x_of_z(d, z)) * w;
    };
    const double zt = z_of_x(d, t);
    return side == Side::Below ? z_integral(d, integrand, 0.0, zt)
                               : z_integral(d, integrand, zt, kInf);
}

double expectation(const OddsOppeDistribution& d, const std::function<double(double)>& phi) {
    return partial_expectation(d, phi, Side::Above, -kInf);
}

double raw_moment(const OddsOppeDistribution& d, int r) {
    require_order(r, "raw_moment");
    return expectation(d, [r](double x) { return std::pow(x, r); });
}

ShapeMeasures shape_measures(const OddsOppeDistribution& d) {
    const double m1 = raw_moment(d, 1);
    const double m2 = raw_moment(d, 2);
    const double m3 = raw_moment(d, 3);
    const double m4 = raw_moment(d, 4);
    const double var = m2 - m1 * m1;
    ShapeMeasures s{};
    s.mean = m1;
    s.variance = var;
    s.skewness = (m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1) / std::pow(var, 1.5);
    s.kurtosis =
        (m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1) / (var * var);
    return s;
}

double mgf(const OddsOppeDistribution& d, double t) {
    if (t == 0.0) return 1.0;
    const auto& g = d.generator();
    auto log_integrand = [&](double z) { return t * x_of_z(d, z) + log_z_density(g, z); };
    if (t > 0.0 && std::isinf(d.upper())) {
        // Tail-ratio test: a log-integrand still rising far out means divergence.
        const double base = static_cast<double>(g.degree()) + 10.0;
        double previous = log_integrand(base * 1024.0);
        for (double scale : {2048.0, 4096.0}) {
            const double current = log_integrand(base * scale);
            if (!std::isfinite(current) || current >= previous || current > -30.0) {
                throw DivergenceError("mgf: E[exp(tX)] does not exist at t = " +
                                      std::to_string(t));
            }
            previous = current;
        }
    }
    auto integrand = [&](double z) { return std::exp(log_integrand(z)); };
    return z_integral(d, integrand, 0.0, kInf);
}

double cgf(const OddsOppeDistribution& d, double t) { return std::log(mgf(d, t)); }

double renyi_entropy(const OddsOppeDistribution& d, double beta) {
    if (!(beta > 0.0) || beta == 1.0) {
        throw DomainError("renyi_entropy: beta must be positive and differ from 1");
    }
    const auto& g = d.generator();
    // ∫ f^β dx = E[f(X)^{β-1}].
    auto integrand = [&](double z) {
        const double x = x_of_z(d, z);
        if (!interior(d, x)) return 0.0;
        return std::exp((beta - 1.0) * log_pdf_at_z(d, z, x) + log_z_density(g, z));
    };
    const double integral = z_integral(d, integrand, 0.0, kInf);
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw DivergenceError("renyi_entropy: ∫ f^β is not finite");
    }
    return std::log(integral) / (1.0 - beta);
}

double shannon_entropy(const OddsOppeDistribution& d) {
    const auto& g = d.generator();
    auto integrand = [&](double z) {
        const double x = x_of_z(d, z);
        const double w = std::exp(log_z_density(g, z));
        if (w == 0.0 || !interior(d, x)) return 0.0;
        return -log_pdf_at_z(d, z, x) * w;
    };
    return z_integral(d, integrand, 0.0, kInf);
}

double order_statistic_pdf(const OddsOppeDistribution& d, int r, int n, double x) {
    if (n < 1 || r < 1 || r > n) {
        throw DomainError("order_statistic_pdf: need 1 <= r <= n");
    }
    const double f = pdf(d, x);
    if (f == 0.0) return 0.0;
    const double F = cdf(d, x);
    const int m = n - r;
    const double log_m = std::lgamma(n + 1.0) - std::lgamma(r) - std::lgamma(m + 1.0);
    double sum = 0.0;
    double binom = 1.0;
    for (int l = 0; l <= m; ++l) {
        const double term = binom * std::pow(F, r + l - 1);
        sum += (l % 2 == 0) ? term : -term;
        binom = binom * (m - l) / (l + 1);
    }
    return std::exp(log_m) * sum * f;
}

double stress_strength(const OddsOppeDistribution& d1, const OddsOppeDistribution& d2) {
    if (d1.baseline().kind() != d2.baseline().kind()) {
        throw DomainError("stress_strength: both laws must share the baseline kind");
    }
    return expectation(d1, [&d2](double x) { return cdf(d2, x); });
}

double incomplete_moment(const OddsOppeDistribution& d, int r, double t) {
    require_order(r, "incomplete_moment");
    if (!(t > d.lower())) return 0.0;
    return partial_expectation(d, [r](double x) { return std::pow(x, r); }, Side::Below, t);
}

MeanDeviations mean_deviations(const OddsOppeDistribution& d) {
    const double mu = raw_moment(d, 1);
    const double median = quantile(d, 0.5);
    return {2.0 * mu * cdf(d, mu) - 2.0 * incomplete_moment(d, 1, mu),
            mu - 2.0 * incomplete_moment(d, 1, median)};
}

LorenzBonferroni lorenz_bonferroni(const OddsOppeDistribution& d, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("lorenz_bonferroni: p must lie in (0, 1)");
    }
    const double mu = raw_moment(d, 1);
    const double lorenz = incomplete_moment(d, 1, quantile(d, p)) / mu;
    return {lorenz, lorenz / p};
}

double residual_moment(const OddsOppeDistribution& d, int r, double t) {
    require_order(r, "residual_moment");
    const double s = survival(d, t);
    if (!(s > 0.0)) {
        throw DomainError("residual_moment: survival is zero at t = " + std::to_string(t));
    }
    const auto& g = d.generator();
    const double log_s = std::log(s);
    // Conditioning is folded into the integrand so the tolerance stays relative
    // to the conditional value, however small S(t) is.
    auto integrand = [&](double z) {
        const double w = std::exp(log_z_density(g, z) - log_s);
        if (w == 0.0) return 0.0;
        return std::pow(std::max(0.0, x_of_z(d, z) - t), r) * w;
    };
    return z_integral(d, integrand, z_of_x(d, t), kInf);
}

double mrl(const OddsOppeDistribution& d, double t) { return residual_moment(d, 1, t); }

double reversed_residual_moment(const OddsOppeDistribution& d, int r, double t) {
    require_order(r, "reversed_residual_moment");
    const double F = cdf(d, t);
    if (!(F > 0.0)) {
        throw DomainError("reversed_residual_moment: cdf is zero at t = " + std::to_string(t));
    }
    const auto& g = d.generator();
    const double log_f = std::log(F);
    auto integrand = [&](double z) {
        const double w = std::exp(log_z_density(g, z) - log_f);
        if (w == 0.0) return 0.0;
        return std::pow(std::max(0.0, t - x_of_z(d, z)), r) * w;
    };
    return z_integral(d, integrand, 0.0, z_of_x(d, t));
}

double mrrl(const OddsOppeDistribution& d, double t) { return reversed_residual_moment(d, 1, t); }

double log_pdf_derivative(const OddsOppeDistribution& d, double x) {
    if (!interior(d, x)) {
        throw DomainError("log_pdf_derivative: x must be inside the support");
    }
    const auto& g = d.generator();
    const auto a = g.coefficients();
    const double log_v = log_odds(d.baseline(), x);
    // Σ k a_k V^{k-1} / Σ a_k V^k
    std::vector<double> num(a.size(), -kInf);
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (a[k] > 0.0) num[k] = std::log(k * a[k]) + (k - 1.0) * log_v;
    }
    const double ratio = std::exp(log_sum_exp(num) - log_poly(a, log_v));
    const double v_prime = std::exp(log_odds_derivative(d.baseline(), x));
    return log_odds_derivative_slope(d.baseline(), x) + v_prime * (ratio - g.rate());
}

std::vector<CriticalPoint> density_critical_points(const OddsOppeDistribution& d, double lo,
                                                   double hi) {
    if (!(lo < hi) || lo < d.lower() || hi > d.upper()) {
        throw DomainError("density_critical_points: interval must lie inside the support");
    }
    // Keep the scan off the support endpoints, where ln f may be singular.
    const double span = hi - lo;
    if (lo == d.lower()) lo += 1e-9 * span;
    if (hi == d.upper()) hi -= 1e-9 * span;

    constexpr int kGrid = 1000;
    std::vector<CriticalPoint> out;
    double x_prev = lo;
    double d_prev = log_pdf_derivative(d, lo);
    for (int i = 1; i <= kGrid; ++i) {
        const double x = lo + (hi - lo) * i / kGrid;
        const double dx = log_pdf_derivative(d, x);
        if (d_prev == 0.0) {
            out.push_back({x_prev, dx < 0.0});
        } else if ((d_prev > 0.0) != (dx > 0.0) && dx != 0.0) {
            double a = x_prev;
            double b = x;
            const bool rising_left = d_prev > 0.0;
            double m = 0.5 * (a + b);
            for (int it = 0; it < 200; ++it) {
                m = 0.5 * (a + b);
                const double dm = log_pdf_derivative(d, m);
                if (std::abs(dm) <= 1e-12 || m == a || m == b) break;
                if ((dm > 0.0) == rising_left) a = m; else b = m;
            }
            out.push_back({m, rising_left});
        }
        x_prev = x;
        d_prev = dx;
    }
    return out;
}

}  // namespace oppe
