#include <cmath>
#include <string>

#include "oppe/errors.hpp"
#include "oppe/family.hpp"

namespace oppe {

namespace {

constexpr double kMaxBaselineCdf = 0.7;

// Σ_k a_k Σ_{i,j} (-λ)^i / i! · C(i+j+k+1, j) · G^{i+j+k} · c(i+j+k), where
// c(m) = 1 for the density and G / (m+1) for the cdf. The normalizer and g(x)
// factor are applied by the callers.
double double_series(const OddsOppeDistribution& d, double G, bool integrated,
                     const SeriesTruncation& trunc, double scale, const char* who) {
    if (trunc.max_i < 1 || trunc.max_j < 1 || !(trunc.tail_tolerance > 0.0)) {
        throw DomainError(std::string(who) + ": invalid truncation");
    }
    if (G > kMaxBaselineCdf * (1.0 + 1e-12)) {
        throw DomainError(std::string(who) + ": G(x) = " + std::to_string(G) +
                          " exceeds the supported range G <= 0.7");
    }
    const auto a = d.generator().coefficients();
    const double lambda = d.lambda();
    const double log_g = std::log(G);
    const double log_lambda = std::log(lambda);

    double total = 0.0;
    double compensation = 0.0;
    int quiet = 0;
    const int last = trunc.max_i + trunc.max_j;
    for (int diag = 0; diag <= last; ++diag) {
        double diag_sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] == 0.0) continue;
            const double log_a = std::log(a[k]);
            for (int i = std::max(0, diag - trunc.max_j); i <= std::min(diag, trunc.max_i); ++i) {
                const int j = diag - i;
                const double m = static_cast<double>(i + j) + static_cast<double>(k);
                // ln C(m+1, j) = lnΓ(m+2) - lnΓ(j+1) - lnΓ(i+k+2)
                double log_term = log_a + i * log_lambda - std::lgamma(i + 1.0) +
                                  std::lgamma(m + 2.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(i + k + 2.0) + m * log_g;
                if (integrated) log_term += log_g - std::log(m + 1.0);
                const double term = std::exp(log_term);
                diag_sum += (i % 2 == 0) ? term : -term;
            }
        }
        // Neumaier summation across diagonals.
        const double t = total + diag_sum;
        compensation += std::abs(total) >= std::abs(diag_sum) ? (total - t) + diag_sum
                                                               : (diag_sum - t) + total;
        total = t;
        // The diagonals shrink roughly geometrically with ratio G, so the
        // remaining tail is about |last diagonal| / (1 - G).
        const double tail = std::abs(diag_sum) * scale / (1.0 - G);
        if (diag > 2 && tail < 0.1 * trunc.tail_tolerance) {
            if (++quiet >= 3) return total + compensation;
        } else {
            quiet = 0;
        }
    }
    throw DivergenceError(std::string(who) + ": series not converged within max_i = " +
                          std::to_string(trunc.max_i) + ", max_j = " +
                          std::to_string(trunc.max_j));
}

}  // namespace

double series_pdf(const OddsOppeDistribution& d, double x, const SeriesTruncation& trunc) {
    const Baseline& b = d.baseline();
    if (x < d.lower() || !(x < d.upper())) return 0.0;
    const double G = baseline_cdf(b, x);
    const double h = normalizer(d.generator());
    const double g = baseline_pdf(b, x);
    if (G == 0.0) return h * g * d.generator().coefficients()[0];
    const double scale = h * g;
    return scale * double_series(d, G, false, trunc, scale, "series_pdf");
}

double series_cdf(const OddsOppeDistribution& d, double x, const SeriesTruncation& trunc) {
    if (!(x > d.lower())) return 0.0;
    const double G = baseline_cdf(d.baseline(), x);
    if (G == 0.0) return 0.0;
    const double h = normalizer(d.generator());
    return h * double_series(d, G, true, trunc, h, "series_cdf");
}

}  // namespace oppe
