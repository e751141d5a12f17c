#include "oppe/spec_parse.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>

#include "oppe/errors.hpp"
#include "oppe/estimation.hpp"
#include "oppe/generator.hpp"

namespace oppe {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double number(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw InvalidInput("bad number '" + std::string(s) + "' in " + std::string(what));
    }
    return v;
}

// key=value[,key=value...]
std::map<std::string, double, std::less<>> assignments(std::string_view s,
                                                       std::string_view what) {
    std::map<std::string, double, std::less<>> out;
    if (s.empty()) return out;
    for (auto item : split(s, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw InvalidInput("expected key=value in " + std::string(what) + ", got '" +
                               std::string(item) + "'");
        }
        const std::string key(item.substr(0, eq));
        if (!out.emplace(key, number(item.substr(eq + 1), what)).second) {
            throw InvalidInput("repeated key '" + key + "' in " + std::string(what));
        }
    }
    return out;
}

}  // namespace

FamilyText parse_family(std::string_view text) {
    const auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    FamilyText f;
    if (head.empty()) throw InvalidInput("empty family");
    if (std::isdigit(static_cast<unsigned char>(head.front())) || head.front() == '.') {
        f.label = "custom";
        for (auto c : split(head, ',')) f.coefficients.push_back(number(c, "family coefficients"));
    } else {
        f.label = std::string(head);
        try {
            f.coefficients = preset(head);
        } catch (const DomainError&) {
            throw InvalidInput("unknown family '" + f.label + "'");
        }
    }
    if (colon != std::string_view::npos) {
        for (const auto& [key, value] : assignments(text.substr(colon + 1), "family")) {
            if (key != "lambda") throw InvalidInput("unknown family parameter '" + key + "'");
            f.lambda = value;
        }
    }
    try {
        GeneratorSpec(f.coefficients, f.lambda.value_or(1.0));
    } catch (const DomainError& e) {
        throw InvalidInput(e.what());
    }
    return f;
}

BaselineText parse_baseline(std::string_view text) {
    const auto colon = text.find(':');
    BaselineText b;
    try {
        b.kind = kind_from_name(text.substr(0, colon));
    } catch (const DomainError&) {
        throw InvalidInput("unknown baseline '" + std::string(text.substr(0, colon)) + "'");
    }
    if (colon != std::string_view::npos) {
        b.params = assignments(text.substr(colon + 1), "baseline");
    }
    const auto names = parameter_names(b.kind);
    for (const auto& [key, value] : b.params) {
        if (std::find(names.begin(), names.end(), key) == names.end()) {
            throw InvalidInput("baseline " + std::string(kind_name(b.kind)) +
                               " has no parameter '" + key + "'");
        }
        if (!(value > 0.0)) throw InvalidInput("baseline parameter '" + key + "' must be > 0");
    }
    return b;
}

LocationText parse_fix(std::string_view text) {
    if (text.substr(0, 2) != "a=") throw InvalidInput("--fix expects a=min or a=<value>");
    const auto v = text.substr(2);
    if (v == "min") return {};
    const double a = number(v, "--fix");
    if (!(a > 0.0)) throw InvalidInput("fixed a must be > 0");
    return {false, a};
}

std::vector<double> parse_grid(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidInput("--grid expects start:stop:count");
    const double start = number(parts[0], "--grid");
    const double stop = number(parts[1], "--grid");
    const double count = number(parts[2], "--grid");
    if (count < 2 || count != std::floor(count) || count > 1e7) {
        throw InvalidInput("grid count must be an integer >= 2");
    }
    if (!(stop > start)) throw InvalidInput("grid stop must exceed start");
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = i + 1 == n ? stop : start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
    return xs;
}

std::vector<double> full_parameters(const FamilyText& family, const BaselineText& baseline) {
    if (!family.lambda) throw InvalidInput("family needs lambda=<value>");
    std::vector<double> phi{*family.lambda};
    for (auto name : parameter_names(baseline.kind)) {
        const auto it = baseline.params.find(name);
        if (it == baseline.params.end()) {
            throw InvalidInput("baseline " + std::string(kind_name(baseline.kind)) + " needs " +
                               std::string(name) + "=<value>");
        }
        phi.push_back(it->second);
    }
    return phi;
}

OddsOppeDistribution build_distribution(const FamilyText& family, const BaselineText& baseline) {
    const auto phi = full_parameters(family, baseline);
    try {
        return make_distribution({family.coefficients, baseline.kind}, phi);
    } catch (const DomainError& e) {
        throw InvalidInput(e.what());
    }
}

}  // namespace oppe
