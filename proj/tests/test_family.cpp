#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numeric>

#include "oppe/errors.hpp"
#include "oppe/family.hpp"
#include "oppe/oracles.hpp"

using namespace oppe;

namespace {

OddsOppeDistribution lindley(double lam, Baseline b) {
    return {GeneratorSpec(preset("lindley"), lam), b};
}

// One member per baseline, plus a higher-degree generator.
std::vector<OddsOppeDistribution> zoo() {
    return {lindley(0.5, Baseline(Uniform{2})),
            lindley(1.0, Baseline(Exponential{1})),
            lindley(1.0, Baseline(Pareto{1, 2})),
            lindley(0.5, Baseline(BurrXII{2, 1.5})),
            {GeneratorSpec(preset("akash"), 2), Baseline(Exponential{1})},
            {GeneratorSpec(preset("shambhu"), 3), Baseline(BurrXII{0.8, 2})}};
}

// ∫ over the support by Boost double-exponential quadrature, independent of
// the library's z-space integrator.
double integrate_x(const OddsOppeDistribution& d, const std::function<double(double)>& g) {
    if (std::isfinite(d.upper())) {
        boost::math::quadrature::tanh_sinh<double> ts;
        return ts.integrate(g, d.lower(), d.upper());
    }
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double t) { return g(d.lower() + t); });
}

// As integrate_x, split at an interior point c where g has a kink.
double integrate_x_split(const OddsOppeDistribution& d, const std::function<double(double)>& g,
                         double c) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double left = ts.integrate(g, d.lower(), c);
    if (std::isfinite(d.upper())) return left + ts.integrate(g, c, d.upper());
    boost::math::quadrature::exp_sinh<double> es;
    return left + es.integrate([&](double t) { return g(c + t); });
}

}  // namespace

// Reference values below were frozen from 25-digit mpmath quadrature in x.
TEST(Family, FrozenOleValues) {
    const auto d = lindley(1, Baseline(Exponential{1}));
    EXPECT_NEAR(cdf(d, std::log(2.0)), 1 - 1.5 * std::exp(-1.0), 1e-14);
    EXPECT_NEAR(pdf(d, 0), 0.5, 1e-14);
    EXPECT_NEAR(hazard(d, std::log(2.0)), (0.5 * 2 * std::exp(-1.0) * 2) / (1.5 * std::exp(-1.0)),
                1e-12);
    EXPECT_NEAR(cdf(d, 0.5), 0.30773847404462423, 1e-12);
    EXPECT_NEAR(pdf(d, 0.5), 0.71044165626699839, 1e-12);
    EXPECT_NEAR(quantile(d, 0.3), 0.48908626764770336, 1e-9);
    const auto m = shape_measures(d);
    EXPECT_NEAR(m.mean, 0.79817368116159704, 1e-9);
    EXPECT_NEAR(m.variance, 0.22523152205654849, 1e-9);
    EXPECT_NEAR(m.skewness, 0.37808422527458853, 1e-7);
    EXPECT_NEAR(m.kurtosis, 2.4964465019702331, 1e-7);
    EXPECT_NEAR(mgf(d, 0.5), 1.534202058552992, 1e-9);
    EXPECT_NEAR(cgf(d, 0.5), std::log(1.534202058552992), 1e-9);
    EXPECT_NEAR(renyi_entropy(d, 0.5), 0.69314718055994531, 1e-9);
    EXPECT_NEAR(renyi_entropy(d, 2), -std::log(38.0 / 64.0), 1e-9);
    EXPECT_NEAR(shannon_entropy(d), 0.59679981823675124, 1e-9);
    EXPECT_NEAR(mrl(d, 1), 0.3452876397151738, 1e-9);
    EXPECT_NEAR(mrrl(d, 1), 0.47556596520429774, 1e-9);
    EXPECT_NEAR(incomplete_moment(d, 2, 1), 0.23556722970076701, 1e-9);
    EXPECT_NEAR(order_statistic_pdf(d, 2, 5, 0.6), 1.3219758313297848, 1e-9);
}

TEST(Family, FrozenOtherBaselines) {
    const auto u = lindley(0.5, Baseline(Uniform{2}));
    EXPECT_NEAR(pdf(u, 1), 0.40435377314175562, 1e-12);
    EXPECT_NEAR(cdf(u, 1), 0.19129245371648877, 1e-12);
    EXPECT_NEAR(raw_moment(u, 1), 1.3333333333333333, 1e-9);
    const auto p = lindley(1, Baseline(Pareto{1, 2}));
    EXPECT_NEAR(pdf(p, 1.5), 0.96695368940314159, 1e-12);
    EXPECT_NEAR(cdf(p, 1.5), 0.53442970510219109, 1e-12);
    EXPECT_NEAR(raw_moment(p, 1), 1.534202058552992, 1e-9);
    const auto b = lindley(0.5, Baseline(BurrXII{2, 1.5}));
    EXPECT_NEAR(pdf(b, 1), 0.80166346264968658, 1e-12);
    EXPECT_NEAR(cdf(b, 1), 0.35487106533738327, 1e-12);
    EXPECT_NEAR(raw_moment(b, 1), 1.1659844289217479, 1e-9);
    const OddsOppeDistribution a{GeneratorSpec(preset("akash"), 2), Baseline(Exponential{1})};
    EXPECT_NEAR(cdf(a, 0.7), 0.68914696946297538, 1e-12);
    EXPECT_NEAR(raw_moment(a, 1), 0.52799528355488925, 1e-9);
}

TEST(Family, FrozenStressStrengthUnequalLaws) {
    const auto d1 = lindley(1, Baseline(Exponential{1}));
    const auto d2 = lindley(2, Baseline(Exponential{0.5}));
    EXPECT_NEAR(stress_strength(d1, d2), 0.47187677502196299, 1e-9);
}

TEST(Family, PdfNormalization) {
    for (const auto& d : zoo()) {
        EXPECT_NEAR(integrate_x(d, [&](double x) { return pdf(d, x); }), 1.0, 1e-7);
    }
}

TEST(Family, CdfMatchesIntegratedPdf) {
    for (const auto& d : zoo()) {
        for (double u : {0.05, 0.3, 0.7, 0.95}) {
            const double x = quantile(d, u);
            boost::math::quadrature::tanh_sinh<double> ts;
            const double lo = d.lower();
            const double area = ts.integrate([&](double t) { return pdf(d, t); }, lo, x);
            EXPECT_NEAR(area, u, 1e-8);
        }
    }
}

TEST(Family, QuantileRoundTrip) {
    for (const auto& d : zoo()) {
        for (double u : {1e-9, 1e-4, 0.01, 0.25, 0.5, 0.75, 0.99, 1 - 1e-6}) {
            EXPECT_NEAR(cdf(d, quantile(d, u)), u, 1e-9);
        }
        EXPECT_THROW(quantile(d, 0), DomainError);
        EXPECT_THROW(quantile(d, 1), DomainError);
    }
}

TEST(Family, CdfSurvivalComplement) {
    for (const auto& d : zoo()) {
        double prev = 0;
        for (double u = 0.02; u < 1; u += 0.02) {
            const double x = quantile(d, u);
            EXPECT_NEAR(cdf(d, x) + survival(d, x), 1.0, 1e-14);
            EXPECT_GE(cdf(d, x), prev);
            prev = cdf(d, x);
        }
    }
}

TEST(Family, HazardIsPdfOverSurvival) {
    for (const auto& d : zoo()) {
        for (double u : {0.1, 0.5, 0.9}) {
            const double x = quantile(d, u);
            EXPECT_NEAR(hazard(d, x), pdf(d, x) / survival(d, x), 1e-12 * hazard(d, x));
        }
    }
    const auto u = lindley(1, Baseline(Uniform{1}));
    EXPECT_THROW(hazard(u, 1.0), DomainError);
}

TEST(Family, LogPdfConsistent) {
    for (const auto& d : zoo()) {
        for (double u : {0.1, 0.5, 0.9}) {
            const double x = quantile(d, u);
            EXPECT_NEAR(std::exp(log_pdf(d, x)), pdf(d, x), 1e-13 * pdf(d, x));
        }
        EXPECT_EQ(log_pdf(d, d.lower() - 1), -std::numeric_limits<double>::infinity());
    }
}

TEST(Family, MomentsAgreeWithDirectQuadrature) {
    for (const auto& d : zoo()) {
        for (int r : {1, 2}) {
            const double direct = integrate_x(d, [&](double x) { return std::pow(x, r) * pdf(d, x); });
            EXPECT_NEAR(raw_moment(d, r), direct, 1e-7 * std::max(1.0, direct));
        }
    }
}

TEST(Family, ShapeMeasuresFromRawMoments) {
    const auto d = lindley(0.7, Baseline(BurrXII{1.5, 2}));
    const double m1 = raw_moment(d, 1), m2 = raw_moment(d, 2), m3 = raw_moment(d, 3),
                 m4 = raw_moment(d, 4);
    const double var = m2 - m1 * m1;
    const auto s = shape_measures(d);
    EXPECT_NEAR(s.mean, m1, 1e-12);
    EXPECT_NEAR(s.variance, var, 1e-9);
    EXPECT_NEAR(s.skewness, (m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1) / std::pow(var, 1.5), 1e-6);
    EXPECT_NEAR(s.kurtosis, (m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * std::pow(m1, 4)) / (var * var),
                1e-6);
}

TEST(Family, MgfDerivativeIsMean) {
    const auto d = lindley(2, Baseline(Exponential{1.5}));
    EXPECT_NEAR(mgf(d, 0), 1.0, 1e-12);
    const double h = 1e-4;
    EXPECT_NEAR((mgf(d, h) - mgf(d, -h)) / (2 * h), raw_moment(d, 1), 1e-7);
    EXPECT_NEAR((cgf(d, h) - cgf(d, -h)) / (2 * h), raw_moment(d, 1), 1e-7);
}

TEST(Family, MgfDivergesForHeavyTails) {
    // The tail decays like exp(-λ V(x)); when V grows slower than x,
    // E[e^{tX}] is infinite for every t > 0.
    EXPECT_THROW(mgf(lindley(1, Baseline(Pareto{1, 0.5})), 0.1), DivergenceError);
    EXPECT_THROW(mgf(lindley(1, Baseline(BurrXII{1, 0.5})), 0.1), DivergenceError);
    EXPECT_THROW(mgf(lindley(1, Baseline(BurrXII{1, 1})), 1.5), DivergenceError);
    EXPECT_NO_THROW(mgf(lindley(1, Baseline(Pareto{1, 0.5})), -0.5));
    EXPECT_NO_THROW(mgf(lindley(1, Baseline(BurrXII{1, 1})), 0.5));
}

TEST(Family, MgfUniformIsBounded) {
    const auto d = lindley(1, Baseline(Uniform{1}));
    const double direct = integrate_x(d, [&](double x) { return std::exp(3 * x) * pdf(d, x); });
    EXPECT_NEAR(mgf(d, 3), direct, 1e-8 * direct);
}

TEST(Family, EntropyLimits) {
    for (const auto& d : zoo()) {
        const double sh = shannon_entropy(d);
        EXPECT_NEAR(renyi_entropy(d, 1 - 1e-5), sh, 1e-4);
        EXPECT_NEAR(renyi_entropy(d, 1 + 1e-5), sh, 1e-4);
        // Rényi entropy is nonincreasing in β.
        EXPECT_GE(renyi_entropy(d, 0.5), renyi_entropy(d, 2) - 1e-12);
    }
}

TEST(Family, FrozenBurrEntropies) {
    // Burr XII with alpha < 1 has an unbounded density at 0.
    const auto a = lindley(0.5, Baseline(BurrXII{2, 1.5}));
    EXPECT_NEAR(shannon_entropy(a), 0.591306480705929, 1e-9);
    EXPECT_NEAR(renyi_entropy(a, 2), 0.464674475995529, 1e-9);
    EXPECT_NEAR(renyi_entropy(a, 0.5), 0.727265661057283, 1e-9);
    const OddsOppeDistribution b{GeneratorSpec(preset("shambhu"), 3), Baseline(BurrXII{0.8, 2})};
    EXPECT_NEAR(shannon_entropy(b), -0.156758340588975, 1e-9);
    EXPECT_NEAR(renyi_entropy(b, 2), -0.50869233542302, 1e-9);
    EXPECT_NEAR(renyi_entropy(b, 0.5), 0.11172978883804, 1e-9);
}

TEST(Family, StressStrengthSelfIsHalf) {
    for (const auto& d : zoo()) EXPECT_NEAR(stress_strength(d, d), 0.5, 1e-8);
}

TEST(Family, StressStrengthComplement) {
    const auto d1 = lindley(1, Baseline(Pareto{1, 2}));
    const auto d2 = lindley(0.4, Baseline(Pareto{1.2, 1.5}));
    EXPECT_NEAR(stress_strength(d1, d2) + stress_strength(d2, d1), 1.0, 1e-9);
    EXPECT_THROW(stress_strength(d1, lindley(1, Baseline(Exponential{1}))), DomainError);
}

TEST(Family, OrderStatisticDensities) {
    const auto d = lindley(0.8, Baseline(BurrXII{2, 1}));
    const int n = 5;
    // Each order statistic density integrates to one, and their average is f.
    for (int r = 1; r <= n; ++r) {
        const double total = integrate_x(d, [&](double x) { return order_statistic_pdf(d, r, n, x); });
        EXPECT_NEAR(total, 1.0, 1e-8) << r;
    }
    for (double x : {0.3, 1.0, 2.5}) {
        double sum = 0;
        for (int r = 1; r <= n; ++r) sum += order_statistic_pdf(d, r, n, x);
        EXPECT_NEAR(sum / n, pdf(d, x), 1e-12);
    }
    // Maximum of n: n F^{n-1} f.
    const double x = 1.1;
    EXPECT_NEAR(order_statistic_pdf(d, n, n, x), n * std::pow(cdf(d, x), n - 1) * pdf(d, x), 1e-13);
    EXPECT_THROW(order_statistic_pdf(d, 0, n, x), DomainError);
    EXPECT_THROW(order_statistic_pdf(d, 6, n, x), DomainError);
}

TEST(Family, IncompleteMomentsAndLorenz) {
    for (const auto& d : zoo()) {
        const double mean = raw_moment(d, 1);
        const double med = quantile(d, 0.5);
        EXPECT_NEAR(incomplete_moment(d, 1, d.upper()), mean, 1e-8 * mean);
        const double direct =
            boost::math::quadrature::tanh_sinh<double>().integrate(
                [&](double x) { return x * pdf(d, x); }, d.lower(), med);
        EXPECT_NEAR(incomplete_moment(d, 1, med), direct, 1e-9);
        const auto md = mean_deviations(d);
        EXPECT_NEAR(md.about_mean,
                    integrate_x_split(
                        d, [&](double x) { return std::abs(x - mean) * pdf(d, x); }, mean),
                    1e-7);
        EXPECT_NEAR(md.about_median,
                    integrate_x_split(
                        d, [&](double x) { return std::abs(x - med) * pdf(d, x); }, med),
                    1e-7);
        EXPECT_LE(md.about_median, md.about_mean + 1e-12);
        const auto lb = lorenz_bonferroni(d, 0.4);
        EXPECT_NEAR(lb.lorenz, incomplete_moment(d, 1, quantile(d, 0.4)) / mean, 1e-9);
        EXPECT_NEAR(lb.bonferroni, lb.lorenz / 0.4, 1e-12);
        EXPECT_LT(lb.lorenz, 0.4);
    }
}

TEST(Family, ResidualLife) {
    for (const auto& d : zoo()) {
        EXPECT_NEAR(mrl(d, d.lower()), raw_moment(d, 1) - d.lower(), 1e-8);
        const double t = quantile(d, 0.6);
        const double direct_mrl =
            integrate_x(d, [&](double x) { return x > t ? (x - t) * pdf(d, x) : 0.0; }) /
            survival(d, t);
        EXPECT_NEAR(mrl(d, t), direct_mrl, 1e-6 * std::max(1.0, direct_mrl));
        const double direct_mrrl = boost::math::quadrature::tanh_sinh<double>().integrate(
                                       [&](double x) { return (t - x) * pdf(d, x); }, d.lower(), t) /
                                   cdf(d, t);
        EXPECT_NEAR(mrrl(d, t), direct_mrrl, 1e-9);
        EXPECT_NEAR(residual_moment(d, 1, t), mrl(d, t), 1e-12);
        EXPECT_NEAR(reversed_residual_moment(d, 1, t), mrrl(d, t), 1e-12);
        // Second residual moment dominates the squared first.
        EXPECT_GE(residual_moment(d, 2, t), mrl(d, t) * mrl(d, t));
    }
}

TEST(Family, CriticalPoints) {
    // OLE(1,1) has its single mode at x = ln 2.
    const auto d = lindley(1, Baseline(Exponential{1}));
    const auto cps = density_critical_points(d, 0.01, 5);
    ASSERT_EQ(cps.size(), 1u);
    EXPECT_NEAR(cps[0].x, std::log(2.0), 1e-9);
    EXPECT_TRUE(cps[0].maximum);
    for (const auto& e : zoo()) {
        for (double u : {0.2, 0.5, 0.8}) {
            const double x = quantile(e, u);
            const double h = 1e-6 * std::max(1.0, x);
            const double fd = (log_pdf(e, x + h) - log_pdf(e, x - h)) / (2 * h);
            EXPECT_NEAR(log_pdf_derivative(e, x), fd, 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
    // Exponential generator with exponential baseline: f decreasing, no interior point.
    const OddsOppeDistribution mono{GeneratorSpec(preset("exponential"), 2), Baseline(Exponential{1})};
    EXPECT_TRUE(density_critical_points(mono, 0.01, 5).empty());
}

TEST(Family, SeriesMatchesDirect) {
    for (const auto& d : zoo()) {
        for (double g : {0.05, 0.2, 0.4, 0.6, 0.7}) {
            // x with G(x) = g.
            const double x = inverse_odds(d.baseline(), g / (1 - g));
            EXPECT_NEAR(series_pdf(d, x), pdf(d, x), 1e-6 * std::max(1.0, pdf(d, x)));
            EXPECT_NEAR(series_cdf(d, x), cdf(d, x), 1e-6);
        }
        const double beyond = inverse_odds(d.baseline(), 0.9 / 0.1);
        EXPECT_THROW(series_cdf(d, beyond), DomainError);
    }
}

TEST(Family, SamplingKolmogorovSmirnov) {
    std::uint64_t seed = 100;
    for (const auto& d : zoo()) {
        RandomStream rng(seed++);
        auto xs = sample(d, rng, 10000);
        std::sort(xs.begin(), xs.end());
        double stat = 0;
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double F = cdf(d, xs[i]);
            stat = std::max({stat, (i + 1) / n - F, F - i / n});
        }
        EXPECT_LT(stat, 1.36 / std::sqrt(n)) << describe(d.baseline());
        EXPECT_GE(xs.front(), d.lower());
        EXPECT_LE(xs.back(), d.upper());
    }
}

TEST(Family, SamplingDeterminism) {
    for (const auto& d : zoo()) {
        RandomStream a(42), b(42);
        EXPECT_EQ(sample(d, a, 500), sample(d, b, 500));
    }
}
