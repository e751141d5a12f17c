#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "oppe/random.hpp"

namespace oppe {

/// One-parameter polynomial exponential (OPPE) generator:
///
///     r(t) = h(λ) Σ_{k=0}^{s} a_k t^k e^{-λt},   t > 0,
///
/// a finite mixture of Gamma(k+1, rate λ) densities. Immutable once built.
class GeneratorSpec {
public:
    /// Throws DomainError unless every a_k >= 0, some a_k > 0 and rate > 0.
    GeneratorSpec(std::vector<double> coefficients, double rate);

    std::span<const double> coefficients() const { return coefficients_; }
    /// s, the highest power (coefficients().size() - 1).
    std::size_t degree() const { return coefficients_.size() - 1; }
    double rate() const { return rate_; }

    /// Same coefficients, different λ.
    GeneratorSpec with_rate(double rate) const;

    /// ln h(λ).
    double log_normalizer() const { return log_normalizer_; }

    /// π_k, the probability of the Gamma(k+1, λ) component.
    std::span<const double> weights() const { return weights_; }

private:
    std::vector<double> coefficients_;
    double rate_;
    double log_normalizer_;
    std::vector<double> weights_;
};

struct MixtureWeights {
    std::vector<double> probabilities;
};

/// h(λ) = 1 / Σ a_k Γ(k+1) / λ^{k+1}.
double normalizer(const GeneratorSpec& spec);

/// r(t); DomainError for t <= 0.
double generator_pdf(const GeneratorSpec& spec, double t);

/// ∫_0^t r. Clamps to 0 for t <= 0.
double generator_cdf(const GeneratorSpec& spec, double t);

/// ∫_t^∞ r, evaluated from upper incomplete gammas (no subtraction).
double generator_survival(const GeneratorSpec& spec, double t);

MixtureWeights mixture_weights(const GeneratorSpec& spec);

/// One draw: pick component j with probability π_j, then Gamma(j+1, λ).
double sample_generator_one(const GeneratorSpec& spec, RandomStream& rng);

std::vector<double> sample_generator(const GeneratorSpec& spec, RandomStream& rng, std::size_t n);

/// Named coefficient sequences: exponential, lindley, akash, aradhana, sujatha,
/// length_biased_lindley, amarendra, devya, shambhu. DomainError otherwise.
std::vector<double> preset(std::string_view name);

std::span<const std::string_view> preset_names();

}  // namespace oppe
