#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "oppe/baseline.hpp"
#include "oppe/generator.hpp"
#include "oppe/random.hpp"

namespace oppe {

/// The Odds OPPE-G distribution: X = V^{-1}(T) with T drawn from the OPPE
/// generator and V the baseline odds map, so F(x) = R(V(x)) for the generator
/// cdf R.
class OddsOppeDistribution {
public:
    OddsOppeDistribution(GeneratorSpec generator, Baseline baseline)
        : generator_(std::move(generator)), baseline_(baseline) {}

    const GeneratorSpec& generator() const { return generator_; }
    const Baseline& baseline() const { return baseline_; }
    double lambda() const { return generator_.rate(); }
    double lower() const { return baseline_.lower(); }
    double upper() const { return baseline_.upper(); }

private:
    GeneratorSpec generator_;
    Baseline baseline_;
};

double cdf(const OddsOppeDistribution& d, double x);
double survival(const OddsOppeDistribution& d, double x);
double pdf(const OddsOppeDistribution& d, double x);
/// ln f(x); -inf outside the support.
double log_pdf(const OddsOppeDistribution& d, double x);
/// f(t) / S(t). DomainError when S(t) underflows to zero.
double hazard(const OddsOppeDistribution& d, double t);

/// Inverse cdf for 0 < u < 1, accurate to |F(x) - u| <= 1e-10.
double quantile(const OddsOppeDistribution& d, double u);

double sample_one(const OddsOppeDistribution& d, RandomStream& rng);
std::vector<double> sample(const OddsOppeDistribution& d, RandomStream& rng, std::size_t n);

/// E[φ(X)] restricted to lower < X < t (Below) or X > t (Above); t = ±inf
/// gives the full expectation. Integrates in z = λV(x), where X has the
/// gamma-mixture density Σ π_k z^k e^{-z} / k!.
enum class Side { Below, Above };
double partial_expectation(const OddsOppeDistribution& d, const std::function<double(double)>& phi,
                           Side side, double t);
double expectation(const OddsOppeDistribution& d, const std::function<double(double)>& phi);

double raw_moment(const OddsOppeDistribution& d, int r);

struct ShapeMeasures {
    double mean;
    double variance;
    double skewness;  // γ1
    double kurtosis;  // γ2, not excess
};
ShapeMeasures shape_measures(const OddsOppeDistribution& d);

/// E[e^{tX}]. DivergenceError when the tail of e^{tx} f(x) does not decay.
double mgf(const OddsOppeDistribution& d, double t);
double cgf(const OddsOppeDistribution& d, double t);

double renyi_entropy(const OddsOppeDistribution& d, double beta);
double shannon_entropy(const OddsOppeDistribution& d);

/// Density of the r-th of n order statistics, as the alternating binomial sum
/// M Σ_l (-1)^l C(n-r, l) F^{r+l-1} f.
double order_statistic_pdf(const OddsOppeDistribution& d, int r, int n, double x);

/// R = P(X2 < X1) for strength X1 ~ d1 and stress X2 ~ d2 (same baseline kind).
double stress_strength(const OddsOppeDistribution& d1, const OddsOppeDistribution& d2);

/// ∫_{lower}^{t} x^r f(x) dx.
double incomplete_moment(const OddsOppeDistribution& d, int r, double t);

struct MeanDeviations {
    double about_mean;
    double about_median;
};
MeanDeviations mean_deviations(const OddsOppeDistribution& d);

struct LorenzBonferroni {
    double lorenz;
    double bonferroni;
};
LorenzBonferroni lorenz_bonferroni(const OddsOppeDistribution& d, double p);

/// E[(X - t)^r | X > t].
double residual_moment(const OddsOppeDistribution& d, int r, double t);
double mrl(const OddsOppeDistribution& d, double t);
/// E[(t - X)^r | X < t].
double reversed_residual_moment(const OddsOppeDistribution& d, int r, double t);
double mrrl(const OddsOppeDistribution& d, double t);

/// d/dx ln f(x) at an interior point.
double log_pdf_derivative(const OddsOppeDistribution& d, double x);

struct CriticalPoint {
    double x;
    bool maximum;
};
/// Interior stationary points of f on [lo, hi], found by a sign-change scan of
/// d/dx ln f followed by bisection. Empty when f is monotone there.
std::vector<CriticalPoint> density_critical_points(const OddsOppeDistribution& d, double lo,
                                                   double hi);

struct SeriesTruncation {
    int max_i = 400;
    int max_j = 800;
    double tail_tolerance = 1e-10;
};

/// Power series of f and F in G(x) (valid for G(x) <= 0.7). The sum runs along
/// anti-diagonals i + j = const; DivergenceError when the last diagonal is
/// still above tolerance at the truncation limit.
double series_pdf(const OddsOppeDistribution& d, double x, const SeriesTruncation& trunc = {});
double series_cdf(const OddsOppeDistribution& d, double x, const SeriesTruncation& trunc = {});

}  // namespace oppe
