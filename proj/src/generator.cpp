#include "oppe/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "oppe/errors.hpp"
#include "oppe/specfun.hpp"

namespace oppe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln Σ_k exp(terms[k]) without overflow.
double log_sum_exp(std::span<const double> terms) {
    const double peak = *std::max_element(terms.begin(), terms.end());
    if (peak == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    return peak + std::log(sum);
}

struct Preset {
    std::string_view name;
    std::vector<double> coefficients;
};

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        {"exponential", {1}},
        {"lindley", {1, 1}},
        {"akash", {1, 0, 1}},
        {"aradhana", {1, 2, 1}},
        {"sujatha", {1, 1, 1}},
        {"length_biased_lindley", {0, 1, 1}},
        {"amarendra", {1, 1, 1, 1}},
        {"devya", {1, 1, 1, 1, 1}},
        {"shambhu", {1, 1, 1, 1, 1, 1}},
    };
    return table;
}

}  // namespace

GeneratorSpec::GeneratorSpec(std::vector<double> coefficients, double rate)
    : coefficients_(std::move(coefficients)), rate_(rate) {
    if (coefficients_.empty()) {
        throw DomainError("generator needs at least one coefficient");
    }
    bool any_positive = false;
    for (double a : coefficients_) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw DomainError("generator coefficients must be finite and nonnegative");
        }
        any_positive = any_positive || a > 0.0;
    }
    if (!any_positive) {
        throw DomainError("generator needs a positive coefficient");
    }
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
        throw DomainError("generator rate must be positive, got " + std::to_string(rate_));
    }

    // log of a_k k! / λ^{k+1}; these are the unnormalized mixture weights.
    std::vector<double> log_w(coefficients_.size());
    const double log_rate = std::log(rate_);
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        log_w[k] = coefficients_[k] > 0.0
                       ? std::log(coefficients_[k]) + std::lgamma(k + 1.0) - (k + 1.0) * log_rate
                       : kNegInf;
    }
    const double log_total = log_sum_exp(log_w);
    log_normalizer_ = -log_total;
    weights_.resize(log_w.size());
    for (std::size_t k = 0; k < log_w.size(); ++k) {
        weights_[k] = std::exp(log_w[k] - log_total);
    }
}

GeneratorSpec GeneratorSpec::with_rate(double rate) const { return {coefficients_, rate}; }

double normalizer(const GeneratorSpec& spec) { return std::exp(spec.log_normalizer()); }

double generator_pdf(const GeneratorSpec& spec, double t) {
    if (!(t > 0.0)) {
        throw DomainError("generator_pdf: t must be positive, got " + std::to_string(t));
    }
    if (std::isinf(t)) return 0.0;
    const auto a = spec.coefficients();
    std::vector<double> terms(a.size());
    const double log_t = std::log(t);
    for (std::size_t k = 0; k < a.size(); ++k) {
        terms[k] = a[k] > 0.0 ? std::log(a[k]) + k * log_t : kNegInf;
    }
    return std::exp(spec.log_normalizer() + log_sum_exp(terms) - spec.rate() * t);
}

double generator_cdf(const GeneratorSpec& spec, double t) {
    if (!(t > 0.0)) return 0.0;
    const auto w = spec.weights();
    const double z = spec.rate() * t;
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] > 0.0) sum += w[k] * specfun::regularized_lower(k + 1.0, z);
    }
    return sum;
}

double generator_survival(const GeneratorSpec& spec, double t) {
    if (!(t > 0.0)) return 1.0;
    const auto w = spec.weights();
    const double z = spec.rate() * t;
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] > 0.0) sum += w[k] * specfun::regularized_upper(k + 1.0, z);
    }
    return sum;
}

MixtureWeights mixture_weights(const GeneratorSpec& spec) {
    return {std::vector<double>(spec.weights().begin(), spec.weights().end())};
}

double sample_generator_one(const GeneratorSpec& spec, RandomStream& rng) {
    const auto w = spec.weights();
    const double u = random::uniform_open(rng);
    // Component j is chosen when the cumulative weight first reaches u.
    std::size_t j = 0;
    double cumulative = w[0];
    while (u > cumulative && j + 1 < w.size()) {
        ++j;
        cumulative += w[j];
    }
    // Round-off can leave the last cumulative a hair below 1; never land on a
    // zero-weight component because of it.
    while (w[j] == 0.0 && j > 0) --j;
    return random::gamma_integer_shape(rng, static_cast<unsigned>(j + 1), spec.rate());
}

std::vector<double> sample_generator(const GeneratorSpec& spec, RandomStream& rng, std::size_t n) {
    std::vector<double> out(n);
    for (auto& z : out) z = sample_generator_one(spec, rng);
    return out;
}

std::vector<double> preset(std::string_view name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p.coefficients;
    }
    throw DomainError("unknown generator preset '" + std::string(name) + "'");
}

std::span<const std::string_view> preset_names() {
    static const auto names = [] {
        std::array<std::string_view, 9> out{};
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = presets()[i].name;
        return out;
    }();
    return names;
}

}  // namespace oppe
