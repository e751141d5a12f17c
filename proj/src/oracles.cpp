#include "oppe/oracles.hpp"

#include <cmath>
#include <sstream>

#include "oppe/errors.hpp"
#include "oppe/specfun.hpp"

namespace oppe::oracles {

namespace {

using specfun::Tail;

double upper(double p, double x) { return specfun::upper_incomplete_gamma(p, x); }
double lower(double p, double x) { return specfun::lower_incomplete_gamma(p, x); }
double upper_d(int j, double p, double x) {
    return specfun::incomplete_gamma_param_deriv(j, p, x, Tail::Upper);
}
double lower_d(int j, double p, double x) {
    return specfun::incomplete_gamma_param_deriv(j, p, x, Tail::Lower);
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

void check_beta(double beta) {
    if (!(beta > 0.0) || beta == 1.0) {
        throw DomainError("renyi: beta must be positive and differ from 1");
    }
}

}  // namespace

OddsOppeDistribution ole_distribution(const OleParams& p) {
    return {GeneratorSpec(preset("lindley"), p.lambda), Exponential{p.theta}};
}

OddsOppeDistribution olp_distribution(const OlpParams& p) {
    return {GeneratorSpec(preset("lindley"), p.lambda), Pareto{p.a, p.theta}};
}

double ole_renyi(const OleParams& p, double beta) {
    check_beta(beta);
    const double l = p.lambda;
    const double c = 1.0 - beta;
    return -std::log(p.theta) + l * beta / c - beta / c * std::log1p(l) -
           2.0 * beta / c * std::log(beta) + std::log(upper(2.0 * beta, l * beta)) / c;
}

double olp_renyi(const OlpParams& p, double beta) {
    check_beta(beta);
    const double l = p.lambda;
    const double t = p.theta;
    const double c = 1.0 - beta;
    const double q = 2.0 * beta - beta / t + 1.0 / t;
    return -std::log(l) / t - std::log(t) + std::log(p.a) + l * beta / c -
           q / c * std::log(beta) + std::log(upper(q, l * beta)) / c -
           beta / c * std::log1p(l);
}

double ole_shannon(const OleParams& p) {
    const double l = p.lambda;
    const double e = std::exp(l) / (1.0 + l);
    return -2.0 * std::log(l) - std::log(p.theta) - l + std::log1p(l) + e * upper(3.0, l) -
           2.0 * e * (upper_d(1, 2.0, l) - std::log(l) * upper(2.0, l));
}

double olp_shannon(const OlpParams& p) {
    const double l = p.lambda;
    const double t = p.theta;
    const double e = std::exp(l) / (1.0 + l);
    return -l - std::log(t) + std::log(p.a) - std::log(l) / t + std::log1p(l) +
           e * upper(3.0, l) - (2.0 * t - 1.0) / t * e * upper_d(1, 2.0, l);
}

double ole_stress_strength(double l1, double l2) {
    const double s = l1 + l2;
    return 1.0 - l1 * l1 / ((1.0 + l1) * (1.0 + l2)) *
                     ((1.0 + l2) / s + (1.0 + 2.0 * l2) / (s * s) + 2.0 * l2 / (s * s * s));
}

double olp_stress_strength(double l1, double l2, double theta, double a1, double a2) {
    const double pre = l1 * l1 * std::exp(l1 + l2) / ((1.0 + l1) * (1.0 + l2));
    if (a1 == a2) {
        const double s = l1 + l2;
        return 1.0 - pre / (s * s) * (upper(2.0, s) + l2 / s * upper(3.0, s));
    }
    const double a1t = std::pow(a1, theta);
    const double a2t = std::pow(a2, theta);
    const double c = l1 / a1t + l2 / a2t;
    const double w = l1 + l2 * a1t / a2t;
    return 1.0 - pre / (a1t * a1t) *
                     (upper(2.0, w) / (c * c) + l2 / a2t * upper(3.0, w) / (c * c * c));
}

double ole_incomplete_moment(const OleParams& p, int r, double /*t*/) {
    if (r < 1 || r > 2) {
        throw DomainError("ole_incomplete_moment: r must be 1 or 2");
    }
    const double l = p.lambda;
    const double upper_arg = l * std::exp(p.theta);  // printed as λe^θ
    double sum = 0.0;
    for (int j = 0; j <= r; ++j) {
        const double sign = ((r - j) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binomial(r, j) * std::pow(std::log(l), r - j) *
               (upper_d(j, 2.0, l) - upper_d(j, 2.0, upper_arg));
    }
    return std::exp(l) / ((1.0 + l) * std::pow(p.theta, r)) * sum;
}

double olp_incomplete_moment(const OlpParams& p, int r, double t) {
    const double l = p.lambda;
    const double q = r / p.theta + 2.0;
    return std::exp(l) * std::pow(p.a, r) / ((1.0 + l) * std::pow(l, r / p.theta)) *
           (upper(q, l) - upper(q, l * std::pow(t / p.a, p.theta)));
}

double ole_mrl(const OleParams& p, double t) {
    const double l = p.lambda;
    const double big = l * std::exp(p.theta * t);
    return std::exp(big) / (1.0 + big) *
           (upper_d(1, 2.0, big) / p.theta - (t + std::log(l) / p.theta) * upper(2.0, big));
}

double olp_mrl(const OlpParams& p, double t) {
    const double l = p.lambda;
    const double big = l * std::pow(t / p.a, p.theta);
    return std::exp(big) / (1.0 + big) *
           (p.a / std::pow(l, 1.0 / p.theta) * upper(2.0 + 1.0 / p.theta, big) -
            t * upper(2.0, big));
}

double ole_mrrl(const OleParams& p, double t) {
    const double l = p.lambda;
    const double et = std::exp(p.theta * t);
    const double big = l * et;
    const double denom = 1.0 + l - (1.0 + big) * std::exp(-l * (et - 1.0));
    return std::exp(l) / denom *
           ((t + std::log(l) / p.theta) * (lower(2.0, l) - lower(2.0, big)) -
            (lower_d(1, 2.0, l) - lower_d(1, 2.0, big)) / p.theta);
}

double olp_mrrl(const OlpParams& p, double t) {
    const double l = p.lambda;
    const double ratio = std::pow(t / p.a, p.theta);
    const double big = l * ratio;
    const double q = 2.0 + 1.0 / p.theta;
    const double denom = 1.0 + l - (1.0 + big) * std::exp(-l * (ratio - 1.0));
    return std::exp(l) / denom *
           (t * (upper(2.0, l) - upper(2.0, big)) -
            p.a / std::pow(l, 1.0 / p.theta) * (upper(q, l) - upper(q, big)));
}

std::optional<ErratumRecord> compare(std::string oracle, std::string parameters, double closed,
                                     double numeric, double tolerance) {
    if (std::abs(closed - numeric) <= tolerance) return std::nullopt;
    return ErratumRecord{std::move(oracle), std::move(parameters), closed, numeric};
}

std::string format(const ErratumRecord& e) {
    std::ostringstream os;
    os.precision(12);
    os << "erratum " << e.oracle << " [" << e.parameters << "]: closed form " << e.closed_form
       << ", numeric " << e.numeric << ", difference " << e.closed_form - e.numeric;
    return os.str();
}

namespace {

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    for (const auto& [k, v] : kv) {
        os << (first ? "" : ", ") << k << '=' << v;
        first = false;
    }
    return os.str();
}

}  // namespace

std::vector<OracleCheck> example_grid(double tolerance) {
    std::vector<OracleCheck> out;
    auto add = [&](std::string name, std::string where, double closed, double numeric) {
        auto e = compare(name, where, closed, numeric, tolerance);
        out.push_back({std::move(name), std::move(where), closed, numeric, std::move(e)});
    };

    const OleParams ole_grid[] = {{1.0, 1.0}, {0.5, 2.0}, {2.0, 0.5}};
    const OlpParams olp_grid[] = {{1.0, 1.0, 1.0}, {0.5, 2.0, 0.5}, {2.0, 0.7, 0.8}};

    for (const auto& p : ole_grid) {
        const auto d = ole_distribution(p);
        for (double beta : {0.5, 2.0}) {
            add("ole_renyi", params({{"lambda", p.lambda}, {"theta", p.theta}, {"beta", beta}}),
                ole_renyi(p, beta), renyi_entropy(d, beta));
        }
        add("ole_shannon", params({{"lambda", p.lambda}, {"theta", p.theta}}), ole_shannon(p),
            shannon_entropy(d));
        for (auto [r, t] : {std::pair{1, 1.0}, {2, 1.0}, {1, 3.0}}) {
            add("ole_incomplete_moment",
                params({{"lambda", p.lambda}, {"theta", p.theta}, {"r", r}, {"t", t}}),
                ole_incomplete_moment(p, r, t), incomplete_moment(d, r, t));
        }
        for (double t : {0.0, 0.5, 1.5}) {
            add("ole_mrl", params({{"lambda", p.lambda}, {"theta", p.theta}, {"t", t}}),
                ole_mrl(p, t), mrl(d, t));
        }
        for (double t : {0.5, 1.0, 2.0}) {
            add("ole_mrrl", params({{"lambda", p.lambda}, {"theta", p.theta}, {"t", t}}),
                ole_mrrl(p, t), mrrl(d, t));
        }
    }
    for (const auto& p : olp_grid) {
        const auto d = olp_distribution(p);
        const auto where = [&](std::initializer_list<std::pair<const char*, double>> extra) {
            std::string s = params({{"lambda", p.lambda}, {"theta", p.theta}, {"a", p.a}});
            if (extra.size()) s += ", " + params(extra);
            return s;
        };
        for (double beta : {0.5, 2.0}) {
            add("olp_renyi", where({{"beta", beta}}), olp_renyi(p, beta), renyi_entropy(d, beta));
        }
        add("olp_shannon", where({}), olp_shannon(p), shannon_entropy(d));
        for (auto [r, t] : {std::pair{1, 1.0}, {2, 1.0}, {1, 3.0}}) {
            add("olp_incomplete_moment", where({{"r", r}, {"t", t}}),
                olp_incomplete_moment(p, r, t), incomplete_moment(d, r, t));
        }
        for (double k : {1.0, 1.5, 3.0}) {
            add("olp_mrl", where({{"t", k * p.a}}), olp_mrl(p, k * p.a), mrl(d, k * p.a));
        }
        for (double k : {1.5, 2.0, 4.0}) {
            add("olp_mrrl", where({{"t", k * p.a}}), olp_mrrl(p, k * p.a), mrrl(d, k * p.a));
        }
    }

    for (auto [l1, l2] : {std::pair{1.0, 2.0}, {0.5, 0.5}, {3.0, 0.7}}) {
        const double theta = 1.3;
        add("ole_stress_strength", params({{"lambda1", l1}, {"lambda2", l2}}),
            ole_stress_strength(l1, l2),
            stress_strength(ole_distribution({l1, theta}), ole_distribution({l2, theta})));
    }
    struct OlpPair {
        double l1, l2, theta, a1, a2;
    };
    for (const auto& q : {OlpPair{1.0, 1.0, 1.0, 1.0, 1.0}, OlpPair{1.0, 2.0, 1.5, 1.0, 1.0},
                          OlpPair{0.5, 2.0, 2.0, 1.5, 1.0}}) {
        add("olp_stress_strength",
            params({{"lambda1", q.l1}, {"lambda2", q.l2}, {"theta", q.theta}, {"a1", q.a1},
                    {"a2", q.a2}}),
            olp_stress_strength(q.l1, q.l2, q.theta, q.a1, q.a2),
            stress_strength(olp_distribution({q.l1, q.theta, q.a1}),
                            olp_distribution({q.l2, q.theta, q.a2})));
    }
    return out;
}

bool documented_erratum(std::string_view oracle) {
    return oracle == "ole_incomplete_moment" || oracle == "ole_mrrl";
}

}  // namespace oppe::oracles
