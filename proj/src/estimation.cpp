#include "oppe/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "oppe/errors.hpp"

namespace oppe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_data(std::span<const double> data) {
    if (data.empty()) throw InvalidInput("empty data");
    for (double x : data) {
        if (!std::isfinite(x)) throw InvalidInput("data contain a non-finite value");
    }
}

// ---------------------------------------------------------------------------
// Nelder-Mead (minimization)

struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

struct NmOutcome {
    std::vector<double> x;
    double f;
    int evaluations;
    bool converged;
};

NmOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                      std::vector<double> x0, double step, int budget, double ftol) {
    constexpr double kXtol = 1e-8;
    const std::size_t dim = x0.size();
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = objective(x);
        return std::isfinite(v) ? v : kInf;
    };

    Simplex s;
    s.x.push_back(x0);
    s.f.push_back(eval(x0));
    for (std::size_t i = 0; i < dim; ++i) {
        auto xi = x0;
        xi[i] += step;
        s.f.push_back(eval(xi));
        s.x.push_back(std::move(xi));
    }

    std::vector<std::size_t> order(dim + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
        Simplex sorted;
        for (auto i : order) {
            sorted.x.push_back(s.x[i]);
            sorted.f.push_back(s.f[i]);
        }
        s = std::move(sorted);
    };

    for (;;) {
        sort_simplex();
        double spread = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                spread = std::max(spread, std::abs(s.x[i][j] - s.x[0][j]));
            }
        }
        if (std::isfinite(s.f[dim]) && s.f[dim] - s.f[0] <= ftol && spread <= kXtol) {
            return {s.x[0], s.f[0], evals, true};
        }
        if (evals >= budget) return {s.x[0], s.f[0], evals, false};

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += s.x[i][j] / dim;
        }
        auto along = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                p[j] = centroid[j] + t * (s.x[dim][j] - centroid[j]);
            }
            return p;
        };

        auto xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < s.f[0]) {
            auto xe = along(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                s.x[dim] = std::move(xe);
                s.f[dim] = fe;
            } else {
                s.x[dim] = std::move(xr);
                s.f[dim] = fr;
            }
            continue;
        }
        if (fr < s.f[dim - 1]) {
            s.x[dim] = std::move(xr);
            s.f[dim] = fr;
            continue;
        }
        const bool outside = fr < s.f[dim];
        auto xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : s.f[dim])) {
            s.x[dim] = std::move(xc);
            s.f[dim] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                s.x[i][j] = s.x[0][j] + 0.5 * (s.x[i][j] - s.x[0][j]);
            }
            s.f[i] = eval(s.x[i]);
        }
    }
}

double halton(int index, int base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Parameter transforms: every free coordinate lives on the whole real line.

struct Slot {
    enum class Kind { Log, AboveAnchor, BelowAnchor, Fixed } kind;
    double anchor = 0.0;
};

struct Layout {
    std::vector<Slot> slots;
    std::vector<std::size_t> free;
    bool location_fixed = false;

    std::vector<double> to_phi(const std::vector<double>& u, const std::vector<double>& base) const {
        std::vector<double> phi = base;
        for (std::size_t f = 0; f < free.size(); ++f) {
            const std::size_t i = free[f];
            const Slot& s = slots[i];
            switch (s.kind) {
                case Slot::Kind::Log: phi[i] = std::exp(u[f]); break;
                case Slot::Kind::AboveAnchor: phi[i] = s.anchor + std::exp(u[f]); break;
                case Slot::Kind::BelowAnchor: phi[i] = s.anchor / (1.0 + std::exp(-u[f])); break;
                case Slot::Kind::Fixed: break;
            }
        }
        return phi;
    }

    // True when a coordinate has run off to 0 or infinity on its natural
    // scale: the supremum then sits on the boundary and no finite MLE exists.
    bool escaped(const std::vector<double>& u) const {
        static const double limit = std::log(1e8);
        for (std::size_t f = 0; f < free.size(); ++f) {
            const Slot::Kind kind = slots[free[f]].kind;
            if (kind == Slot::Kind::Log && std::abs(u[f]) > limit) return true;
            if (kind == Slot::Kind::AboveAnchor && u[f] > limit) return true;
        }
        return false;
    }

    std::vector<double> to_u(const std::vector<double>& phi) const {
        std::vector<double> u(free.size());
        for (std::size_t f = 0; f < free.size(); ++f) {
            const std::size_t i = free[f];
            const Slot& s = slots[i];
            switch (s.kind) {
                case Slot::Kind::Log: u[f] = std::log(phi[i]); break;
                case Slot::Kind::AboveAnchor:
                    u[f] = std::log(std::max(phi[i] - s.anchor, 1e-12 * s.anchor));
                    break;
                case Slot::Kind::BelowAnchor: {
                    const double q = std::clamp(phi[i] / s.anchor, 1e-12, 1.0 - 1e-12);
                    u[f] = std::log(q / (1.0 - q));
                    break;
                }
                case Slot::Kind::Fixed: break;
            }
        }
        return u;
    }
};

Layout make_layout(const ModelTemplate& model, std::span<const double> sorted,
                   const FitConfig& config) {
    const double lo = sorted.front();
    const double hi = sorted.back();
    Layout layout;
    layout.slots.push_back({Slot::Kind::Log});  // λ
    switch (model.baseline) {
        case BaselineKind::Uniform:
            layout.slots.push_back({Slot::Kind::AboveAnchor, hi * (1.0 + 1e-9)});
            break;
        case BaselineKind::Exponential: layout.slots.push_back({Slot::Kind::Log}); break;
        case BaselineKind::Pareto:
            layout.slots.push_back({Slot::Kind::Log});  // θ
            switch (config.location) {
                case LocationMode::Minimum:
                    layout.slots.push_back({Slot::Kind::Fixed, lo});
                    layout.location_fixed = true;
                    break;
                case LocationMode::Fixed:
                    if (!(config.pareto_a > 0.0) || config.pareto_a > lo) {
                        throw InvalidInput("fixed Pareto location must lie in (0, min(data)]");
                    }
                    layout.slots.push_back({Slot::Kind::Fixed, config.pareto_a});
                    layout.location_fixed = true;
                    break;
                case LocationMode::Free:
                    layout.slots.push_back({Slot::Kind::BelowAnchor, lo});
                    break;
            }
            break;
        case BaselineKind::BurrXII:
            layout.slots.push_back({Slot::Kind::Log});
            layout.slots.push_back({Slot::Kind::Log});
            break;
    }
    for (std::size_t i = 0; i < layout.slots.size(); ++i) {
        if (layout.slots[i].kind != Slot::Kind::Fixed) layout.free.push_back(i);
    }
    return layout;
}

// A rough but always-valid starting point built from simple moment matches.
std::vector<double> heuristic_start(const ModelTemplate& model, std::span<const double> sorted,
                                    const Layout& layout) {
    const double n = static_cast<double>(sorted.size());
    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    const double lo = sorted.front();
    const double hi = sorted.back();
    std::vector<double> baseline;
    switch (model.baseline) {
        case BaselineKind::Uniform: baseline = {hi * 1.05}; break;
        case BaselineKind::Exponential: baseline = {1.0 / mean}; break;
        case BaselineKind::Pareto: {
            const Slot& s = layout.slots[2];
            const double a = s.kind == Slot::Kind::Fixed ? s.anchor : 0.9 * lo;
            double sum_log = 0.0;
            for (double x : sorted) sum_log += std::log(x / a);
            baseline = {sum_log > 0.0 ? n / sum_log : 1.0, a};
            break;
        }
        case BaselineKind::BurrXII: {
            double sum = 0.0;
            for (double x : sorted) sum += std::log1p(x);
            baseline = {1.0, n / sum};
            break;
        }
    }
    const Baseline b = make_baseline(model.baseline, baseline);
    double sum_v = 0.0;
    for (double x : sorted) {
        if (x > b.lower() && x < b.upper()) sum_v += odds(b, x);
    }
    const double mean_v = sum_v / n;
    const double lambda = (mean_v > 0.0 && std::isfinite(mean_v))
                              ? std::clamp(1.0 / mean_v, 1e-3, 1e3)
                              : 1.0;
    std::vector<double> phi{lambda};
    phi.insert(phi.end(), baseline.begin(), baseline.end());
    return phi;
}

bool lexicographically_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<std::string> parameter_names(const ModelTemplate& model) {
    std::vector<std::string> names{"lambda"};
    for (auto n : parameter_names(model.baseline)) names.emplace_back(n);
    return names;
}

OddsOppeDistribution make_distribution(const ModelTemplate& model, std::span<const double> phi) {
    if (phi.empty()) throw DomainError("empty parameter vector");
    return {GeneratorSpec(model.coefficients, phi[0]), make_baseline(model.baseline, phi.subspan(1))};
}

double log_likelihood(const ModelTemplate& model, std::span<const double> phi,
                      std::span<const double> data) {
    validate_data(data);
    for (double p : phi) {
        if (!(p > 0.0) || !std::isfinite(p)) return -kInf;
    }
    std::optional<OddsOppeDistribution> d;
    try {
        d.emplace(make_distribution(model, phi));
    } catch (const DomainError&) {
        return -kInf;
    }
    double sum = 0.0;
    for (double x : data) {
        const double lf = log_pdf(*d, x);
        if (!std::isfinite(lf)) return -kInf;
        sum += lf;
    }
    return sum;
}

std::vector<double> score(const ModelTemplate& model, std::span<const double> phi,
                          std::span<const double> data) {
    std::vector<double> grad(phi.size());
    std::vector<double> p(phi.begin(), phi.end());
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const double h = std::max(1e-6, 1e-6 * std::abs(phi[j]));
        p[j] = phi[j] + h;
        const double up = log_likelihood(model, p, data);
        p[j] = phi[j] - h;
        const double down = log_likelihood(model, p, data);
        p[j] = phi[j];
        grad[j] = (up - down) / (2.0 * h);
    }
    return grad;
}

InformationCriteria information_criteria(double log_likelihood, int k, std::size_t n) {
    if (k < 1 || n < 1) throw DomainError("information_criteria: need k >= 1 and n >= 1");
    return {2.0 * k - 2.0 * log_likelihood,
            k * std::log(static_cast<double>(n)) - 2.0 * log_likelihood};
}

FitResult fit_mle(const ModelTemplate& model, std::span<const double> data,
                  const FitConfig& config) {
    validate_data(data);
    if (config.max_evaluations < 0 || config.starts < 1 || !(config.tolerance > 0.0)) {
        throw InvalidInput("invalid fit configuration");
    }
    // Sorting makes every floating-point sum independent of the input order.
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) {
        throw InvalidInput("data have zero variance; the model is not identifiable");
    }
    if (model.baseline != BaselineKind::Uniform && sorted.front() <= 0.0) {
        throw InvalidInput("data must be positive for this baseline");
    }
    if (model.baseline == BaselineKind::Uniform && sorted.front() < 0.0) {
        throw InvalidInput("data must be nonnegative for the uniform baseline");
    }

    const Layout layout = make_layout(model, sorted, config);
    const std::size_t dim = layout.free.size();
    if (sorted.size() < dim + 1) {
        throw InvalidInput("need at least " + std::to_string(dim + 1) + " observations");
    }

    std::vector<double> base;
    if (config.initial) {
        base = *config.initial;
        if (base.size() != layout.slots.size()) {
            throw InvalidInput("initial parameter vector has the wrong length");
        }
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (layout.slots[i].kind == Slot::Kind::Fixed) base[i] = layout.slots[i].anchor;
        }
    } else {
        base = heuristic_start(model, sorted, layout);
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (layout.slots[i].kind == Slot::Kind::Fixed) base[i] = layout.slots[i].anchor;
        }
    }
    // Round-trip through the transform so the start respects every bound.
    const std::vector<double> u_base = layout.to_u(base);
    base = layout.to_phi(u_base, base);

    auto objective = [&](const std::vector<double>& u) {
        return -log_likelihood(model, layout.to_phi(u, base), sorted);
    };

    FitResult result;
    result.names = parameter_names(model);
    result.n = sorted.size();
    result.k = static_cast<int>(dim) +
               ((layout.location_fixed && config.count_fixed_location) ? 1 : 0);
    result.evaluations = 0;

    if (config.max_evaluations == 0) {
        const double ll = log_likelihood(model, base, sorted);
        result.estimates = base;
        result.log_likelihood = ll;
        result.converged = std::isfinite(ll);
        result.evaluations = 1;
        result.starts.push_back({base, base, ll, result.converged, 1});
    } else {
        static constexpr int kBases[] = {2, 3, 5, 7, 11, 13};
        for (int s = 0; s < config.starts; ++s) {
            std::vector<double> u0 = u_base;
            for (std::size_t f = 0; f < dim; ++f) {
                if (s > 0) u0[f] += 4.0 * (halton(s, kBases[f % 6]) - 0.5);
            }
            const std::vector<double> start = layout.to_phi(u0, base);
            StartSummary summary{start, start, -kInf, false, 0};
            if (dim == 0) {
                summary.log_likelihood = log_likelihood(model, start, sorted);
                summary.converged = std::isfinite(summary.log_likelihood);
                summary.evaluations = 1;
            } else if (std::isfinite(objective(u0))) {
                auto run = nelder_mead(objective, u0, 0.5, config.max_evaluations,
                                       config.tolerance);
                int used = run.evaluations + 1;
                // One restart from the reported optimum guards against a
                // collapsed simplex stalling short of the maximum.
                if (run.converged && used < config.max_evaluations) {
                    auto again = nelder_mead(objective, run.x, 0.05,
                                             config.max_evaluations - used, config.tolerance);
                    used += again.evaluations;
                    if (again.f <= run.f) run = again;
                    else run.converged = run.converged && again.converged;
                }
                summary.estimate = layout.to_phi(run.x, base);
                summary.log_likelihood = -run.f;
                summary.converged =
                    run.converged && std::isfinite(run.f) && !layout.escaped(run.x);
                summary.evaluations = used;
            } else {
                summary.evaluations = 1;
            }
            result.evaluations += summary.evaluations;
            result.starts.push_back(std::move(summary));
        }
        const StartSummary* best = nullptr;
        for (const auto& s : result.starts) {
            if (!std::isfinite(s.log_likelihood)) continue;
            if (!best || s.log_likelihood > best->log_likelihood ||
                (s.log_likelihood == best->log_likelihood &&
                 lexicographically_less(s.estimate, best->estimate))) {
                best = &s;
            }
        }
        if (best) {
            result.estimates = best->estimate;
            result.log_likelihood = best->log_likelihood;
            result.converged = best->converged;
        } else {
            result.estimates = base;
            result.log_likelihood = -kInf;
            result.converged = false;
        }
    }
    const auto ic = information_criteria(result.log_likelihood, std::max(result.k, 1), result.n);
    result.aic = ic.aic;
    result.bic = ic.bic;
    return result;
}

}  // namespace oppe
