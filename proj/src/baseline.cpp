#include "oppe/baseline.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "oppe/errors.hpp"

namespace oppe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string("baseline parameter ") + what +
                          " must be positive and finite, got " + std::to_string(v));
    }
}

// ln(e^y - 1) for y > 0.
double log_expm1(double y) {
    return y > 1.0 ? y + std::log1p(-std::exp(-y)) : std::log(std::expm1(y));
}

// ln(1 + x^α) for x > 0, without forming x^α when it would overflow.
double log1p_pow(double x, double alpha) {
    const double s = alpha * std::log(x);
    return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

void require_interior(const Baseline& b, double x, const char* who) {
    if (!(x > b.lower() && x < b.upper())) {
        throw DomainError(std::string(who) + ": x = " + std::to_string(x) +
                          " is not inside the support");
    }
}

}  // namespace

Baseline::Baseline(Uniform p) : params_(p) { require_positive(p.theta, "theta"); }
Baseline::Baseline(Exponential p) : params_(p) { require_positive(p.theta, "theta"); }
Baseline::Baseline(Pareto p) : params_(p) {
    require_positive(p.a, "a");
    require_positive(p.theta, "theta");
}
Baseline::Baseline(BurrXII p) : params_(p) {
    require_positive(p.alpha, "alpha");
    require_positive(p.theta, "theta");
}

double Baseline::lower() const {
    if (const auto* p = std::get_if<Pareto>(&params_)) return p->a;
    return 0.0;
}

double Baseline::upper() const {
    if (const auto* u = std::get_if<Uniform>(&params_)) return u->theta;
    return kInf;
}

std::string_view kind_name(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::Uniform: return "uniform";
        case BaselineKind::Exponential: return "exponential";
        case BaselineKind::Pareto: return "pareto";
        case BaselineKind::BurrXII: return "burrxii";
    }
    return "";
}

BaselineKind kind_from_name(std::string_view name) {
    for (auto k : {BaselineKind::Uniform, BaselineKind::Exponential, BaselineKind::Pareto,
                   BaselineKind::BurrXII}) {
        if (kind_name(k) == name) return k;
    }
    throw DomainError("unknown baseline '" + std::string(name) + "'");
}

std::span<const std::string_view> parameter_names(BaselineKind kind) {
    static constexpr std::array<std::string_view, 1> theta{"theta"};
    static constexpr std::array<std::string_view, 2> pareto{"theta", "a"};
    static constexpr std::array<std::string_view, 2> burr{"alpha", "theta"};
    switch (kind) {
        case BaselineKind::Uniform:
        case BaselineKind::Exponential: return theta;
        case BaselineKind::Pareto: return pareto;
        case BaselineKind::BurrXII: return burr;
    }
    return {};
}

std::vector<double> parameter_values(const Baseline& b) {
    return std::visit(Overloaded{
                          [](Uniform p) { return std::vector<double>{p.theta}; },
                          [](Exponential p) { return std::vector<double>{p.theta}; },
                          [](Pareto p) { return std::vector<double>{p.theta, p.a}; },
                          [](BurrXII p) { return std::vector<double>{p.alpha, p.theta}; },
                      },
                      b.params());
}

Baseline make_baseline(BaselineKind kind, std::span<const double> v) {
    if (v.size() != parameter_names(kind).size()) {
        throw DomainError("wrong number of parameters for baseline " +
                          std::string(kind_name(kind)));
    }
    switch (kind) {
        case BaselineKind::Uniform: return Uniform{v[0]};
        case BaselineKind::Exponential: return Exponential{v[0]};
        case BaselineKind::Pareto: return Pareto{v[1], v[0]};
        case BaselineKind::BurrXII: return BurrXII{v[0], v[1]};
    }
    throw DomainError("unknown baseline kind");
}

double baseline_cdf(const Baseline& b, double x) {
    if (!(x > b.lower())) return 0.0;
    if (!(x < b.upper())) return 1.0;
    return std::visit(Overloaded{
                          [x](Uniform p) { return x / p.theta; },
                          [x](Exponential p) { return -std::expm1(-p.theta * x); },
                          [x](Pareto p) { return -std::expm1(p.theta * std::log(p.a / x)); },
                          [x](BurrXII p) { return -std::expm1(-p.theta * log1p_pow(x, p.alpha)); },
                      },
                      b.params());
}

double baseline_sf(const Baseline& b, double x) {
    if (!(x > b.lower())) return 1.0;
    if (!(x < b.upper())) return 0.0;
    return std::visit(Overloaded{
                          [x](Uniform p) { return (p.theta - x) / p.theta; },
                          [x](Exponential p) { return std::exp(-p.theta * x); },
                          [x](Pareto p) { return std::exp(p.theta * std::log(p.a / x)); },
                          [x](BurrXII p) { return std::exp(-p.theta * log1p_pow(x, p.alpha)); },
                      },
                      b.params());
}

double baseline_pdf(const Baseline& b, double x) {
    if (x < b.lower() || x > b.upper()) return 0.0;
    return std::visit(
        Overloaded{
            [](Uniform p) { return 1.0 / p.theta; },
            [x](Exponential p) { return p.theta * std::exp(-p.theta * x); },
            [x](Pareto p) {
                return p.theta / x * std::exp(p.theta * std::log(p.a / x));
            },
            [x](BurrXII p) {
                if (x == 0.0) {
                    return p.alpha < 1.0 ? kInf : (p.alpha == 1.0 ? p.theta : 0.0);
                }
                return p.alpha * p.theta * std::exp((p.alpha - 1.0) * std::log(x) -
                                                    (p.theta + 1.0) * log1p_pow(x, p.alpha));
            },
        },
        b.params());
}

double odds(const Baseline& b, double x) {
    require_interior(b, x, "odds");
    return std::visit(
        Overloaded{
            [x](Uniform p) { return x / (p.theta - x); },
            [x](Exponential p) { return std::expm1(p.theta * x); },
            [x](Pareto p) { return std::expm1(p.theta * std::log1p((x - p.a) / p.a)); },
            [x](BurrXII p) { return std::expm1(p.theta * log1p_pow(x, p.alpha)); },
        },
        b.params());
}

double log_odds(const Baseline& b, double x) {
    require_interior(b, x, "log_odds");
    return std::visit(
        Overloaded{
            [x](Uniform p) { return std::log(x) - std::log(p.theta - x); },
            [x](Exponential p) { return log_expm1(p.theta * x); },
            [x](Pareto p) { return log_expm1(p.theta * std::log1p((x - p.a) / p.a)); },
            [x](BurrXII p) { return log_expm1(p.theta * log1p_pow(x, p.alpha)); },
        },
        b.params());
}

double inverse_odds(const Baseline& b, double z) {
    if (!(z > 0.0)) {
        throw DomainError("inverse_odds: z must be positive, got " + std::to_string(z));
    }
    if (std::isinf(z)) return b.upper();
    return std::visit(
        Overloaded{
            [z](Uniform p) { return p.theta * z / (1.0 + z); },
            [z](Exponential p) { return std::log1p(z) / p.theta; },
            [z](Pareto p) { return p.a * std::exp(std::log1p(z) / p.theta); },
            [z](BurrXII p) {
                return std::pow(std::expm1(std::log1p(z) / p.theta), 1.0 / p.alpha);
            },
        },
        b.params());
}

double log_odds_derivative(const Baseline& b, double x) {
    require_interior(b, x, "log_odds_derivative");
    return std::visit(
        Overloaded{
            [x](Uniform p) { return std::log(p.theta) - 2.0 * std::log(p.theta - x); },
            [x](Exponential p) { return std::log(p.theta) + p.theta * x; },
            [x](Pareto p) {
                return std::log(p.theta) + (p.theta - 1.0) * std::log(x) -
                       p.theta * std::log(p.a);
            },
            [x](BurrXII p) {
                return std::log(p.alpha) + std::log(p.theta) + (p.alpha - 1.0) * std::log(x) +
                       (p.theta - 1.0) * log1p_pow(x, p.alpha);
            },
        },
        b.params());
}

double log_odds_derivative_slope(const Baseline& b, double x) {
    require_interior(b, x, "log_odds_derivative_slope");
    return std::visit(
        Overloaded{
            [x](Uniform p) { return 2.0 / (p.theta - x); },
            [](Exponential p) { return p.theta; },
            [x](Pareto p) { return (p.theta - 1.0) / x; },
            [x](BurrXII p) {
                // x^{α-1} / (1 + x^α) = 1 / (x (1 + x^{-α})), safe for large x.
                return (p.alpha - 1.0) / x +
                       (p.theta - 1.0) * p.alpha / (x * (1.0 + std::pow(x, -p.alpha)));
            },
        },
        b.params());
}

std::string describe(const Baseline& b) {
    std::ostringstream os;
    os.precision(17);
    const auto kind = b.kind();
    const auto names = parameter_names(kind);
    const auto values = parameter_values(b);
    os << kind_name(kind) << ':';
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) os << ',';
        os << names[i] << '=' << values[i];
    }
    return os.str();
}

}  // namespace oppe
