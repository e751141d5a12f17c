// oppe: fit, sample, evaluate and simulate Odds OPPE-G models.
//
// Exit status: 0 success, 1 malformed input, 2 fit did not converge.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oppe/datasets.hpp"
#include "oppe/errors.hpp"
#include "oppe/estimation.hpp"
#include "oppe/family.hpp"
#include "oppe/simulation.hpp"
#include "oppe/spec_parse.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace oppe;

constexpr int kMalformed = 1;
constexpr int kNotConverged = 2;

struct ModelFlags {
    std::string family = "lindley";
    std::string baseline;
    std::string fix;
    std::string free;
};

struct FitFlags {
    std::string data;
    int starts = FitConfig{}.starts;
    int max_evaluations = FitConfig{}.max_evaluations;
    double tolerance = FitConfig{}.tolerance;
    bool exclude_fixed = false;
};

// Output goes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InvalidInput("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<double> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    return read_values(in);
}

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool location) {
    cmd->add_option("--family", m.family, "preset[:lambda=v] or a0,a1,...[:lambda=v]")
        ->capture_default_str();
    cmd->add_option("--baseline", m.baseline,
                    "uniform|exponential|pareto|burrxii[:name=v,...]")
        ->required();
    if (location) {
        cmd->add_option("--fix", m.fix, "pareto location: a=min (default) or a=<value>");
        cmd->add_option("--free", m.free, "estimate the pareto location (--free a)");
    }
}

void add_fit_flags(CLI::App* cmd, FitFlags& f) {
    cmd->add_option("data", f.data, "one value per line")->required();
    cmd->add_option("--starts", f.starts, "multi-start count")->capture_default_str();
    cmd->add_option("--max-evals", f.max_evaluations, "objective evaluations per start")
        ->capture_default_str();
    cmd->add_option("--tolerance", f.tolerance, "simplex spread in log-likelihood")
        ->capture_default_str();
    cmd->add_flag("--exclude-fixed", f.exclude_fixed,
                  "do not count a held-fixed pareto location in k");
}

struct Prepared {
    FamilyText family;
    BaselineText baseline;
    ModelTemplate model;
    FitConfig config;
};

Prepared prepare_fit(const ModelFlags& m, const FitFlags& f) {
    Prepared p{parse_family(m.family), parse_baseline(m.baseline), {}, {}};
    p.model = {p.family.coefficients, p.baseline.kind};
    p.config.starts = f.starts;
    p.config.max_evaluations = f.max_evaluations;
    p.config.tolerance = f.tolerance;
    p.config.count_fixed_location = !f.exclude_fixed;
    const bool pareto = p.baseline.kind == BaselineKind::Pareto;
    if ((!m.fix.empty() || !m.free.empty()) && !pareto) {
        throw InvalidInput("--fix/--free apply to the pareto baseline only");
    }
    if (!m.fix.empty() && !m.free.empty()) throw InvalidInput("--fix and --free conflict");
    if (!m.free.empty()) {
        if (m.free != "a") throw InvalidInput("--free accepts only 'a'");
        p.config.location = LocationMode::Free;
    } else if (!m.fix.empty()) {
        const auto loc = parse_fix(m.fix);
        if (!loc.at_minimum) {
            p.config.location = LocationMode::Fixed;
            p.config.pareto_a = loc.value;
        }
    }
    // A fully specified model doubles as the first start.
    try {
        p.config.initial = full_parameters(p.family, p.baseline);
    } catch (const InvalidInput&) {
    }
    return p;
}

std::string location_mode(const FitConfig& c) {
    switch (c.location) {
        case LocationMode::Minimum: return "min";
        case LocationMode::Fixed: return "fixed";
        case LocationMode::Free: return "free";
    }
    return "";
}

json fit_json(const Prepared& p, const std::string& source, const FitResult& r) {
    json params = json::object();
    for (std::size_t i = 0; i < r.names.size(); ++i) params[r.names[i]] = r.estimates[i];
    json out;
    out["schema"] = 1;
    out["command"] = "fit";
    out["data"] = source;
    out["n"] = r.n;
    out["family"] = {{"name", p.family.label}, {"coefficients", p.family.coefficients}};
    out["baseline"] = std::string(kind_name(p.baseline.kind));
    if (p.baseline.kind == BaselineKind::Pareto) out["location"] = location_mode(p.config);
    out["parameters"] = params;
    out["log_likelihood"] = r.log_likelihood;
    out["aic"] = r.aic;
    out["bic"] = r.bic;
    out["k"] = r.k;
    out["converged"] = r.converged;
    out["evaluations"] = r.evaluations;
    return out;
}

int cmd_fit(const ModelFlags& m, const FitFlags& f, const std::string& out_path) {
    const auto p = prepare_fit(m, f);
    const auto data = load(f.data);
    const auto r = fit_mle(p.model, data, p.config);
    Output out(out_path);
    out.stream() << fit_json(p, f.data, r).dump(2) << '\n';
    if (!r.converged) std::cerr << "fit did not converge within the evaluation budget\n";
    return r.converged ? 0 : kNotConverged;
}

int cmd_sample(const ModelFlags& m, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
    if (n < 1) throw InvalidInput("-n must be at least 1");
    const auto d = build_distribution(parse_family(m.family), parse_baseline(m.baseline));
    RandomStream rng(seed);
    const auto xs = sample(d, rng, n);
    Output out(out_path);
    auto& os = out.stream();
    os.precision(17);
    for (double x : xs) os << x << '\n';
    return 0;
}

std::optional<double> evaluate(const OddsOppeDistribution& d, const std::string& which,
                               double x) {
    try {
        double v = 0.0;
        if (which == "pdf") v = pdf(d, x);
        else if (which == "cdf") v = cdf(d, x);
        else if (which == "sf") v = survival(d, x);
        else if (which == "hazard") v = hazard(d, x);
        else if (which == "mrl") v = mrl(d, x);
        else v = mrrl(d, x);
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const DomainError&) {
    } catch (const DivergenceError&) {
    } catch (const ConvergenceError&) {
    } catch (const OverflowError&) {
    }
    return std::nullopt;
}

int cmd_eval(const ModelFlags& m, const std::string& which, const std::string& grid,
             const std::string& out_path) {
    const auto d = build_distribution(parse_family(m.family), parse_baseline(m.baseline));
    const auto xs = parse_grid(grid);
    Output out(out_path);
    auto& os = out.stream();
    os.precision(17);
    os << "x," << which << '\n';
    for (double x : xs) {
        os << x << ',';
        if (const auto v = evaluate(d, which, x)) os << *v;
        os << '\n';
    }
    return 0;
}

json report_json(const StudyReport& r) {
    json params = json::array();
    for (const auto& p : r.parameters) {
        params.push_back({{"name", p.name}, {"true", p.truth}, {"bias", p.bias}, {"mse", p.mse}});
    }
    return {{"table", r.table},       {"panel", r.panel},       {"n", r.n},
            {"replicates", r.replicates}, {"used", r.used},     {"retries", r.retries},
            {"failures", r.failures}, {"parameters", params}};
}

struct SimulateFlags {
    std::optional<int> table;
    std::uint64_t seed = 1;
    std::size_t replicates = 1000;
    unsigned threads = 1;
    std::optional<std::size_t> n;
    std::string format = "csv";
};

int cmd_simulate(const ModelFlags& m, const SimulateFlags& s, const std::string& out_path) {
    if (s.replicates < 1) throw InvalidInput("--replicates must be at least 1");
    std::vector<StudyReport> reports;
    if (s.table) {
        if (!m.baseline.empty()) throw InvalidInput("--table and --baseline are exclusive");
        try {
            reports = run_table(*s.table, s.seed, s.replicates, s.threads);
        } catch (const DomainError& e) {
            throw InvalidInput(e.what());
        }
    } else {
        if (m.baseline.empty() || !s.n) {
            throw InvalidInput("simulate needs --table, or --family, --baseline and -n");
        }
        const auto family = parse_family(m.family);
        const auto baseline = parse_baseline(m.baseline);
        StudyCell cell;
        cell.model = {family.coefficients, baseline.kind};
        cell.truth = full_parameters(family, baseline);
        cell.n = *s.n;
        cell.replicates = s.replicates;
        cell.seed = s.seed;
        cell.fit = study_fit_config();
        try {
            reports.push_back(run_cell(cell, s.threads));
        } catch (const DomainError& e) {
            throw InvalidInput(e.what());
        }
    }
    Output out(out_path);
    if (s.format == "json") {
        json doc;
        doc["schema"] = 1;
        doc["command"] = "simulate";
        doc["seed"] = s.seed;
        doc["reports"] = json::array();
        for (const auto& r : reports) doc["reports"].push_back(report_json(r));
        out.stream() << doc.dump(2) << '\n';
    } else {
        write_csv(out.stream(), reports);
    }
    std::size_t failures = 0;
    for (const auto& r : reports) failures += r.failures;
    if (failures) std::cerr << failures << " replicate(s) excluded after a failed retry\n";
    return 0;
}

int cmd_fitplot(const ModelFlags& m, const FitFlags& f, const std::string& out_path) {
    const auto p = prepare_fit(m, f);
    auto data = load(f.data);
    const auto r = fit_mle(p.model, data, p.config);
    if (!r.converged) std::cerr << "fit did not converge within the evaluation budget\n";
    const auto d = make_distribution(p.model, r.estimates);
    std::sort(data.begin(), data.end());
    const std::size_t n = data.size();
    // Sturges' rule over [min, max].
    const auto bins =
        static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
    const double lo = data.front();
    const double width = (data.back() - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    auto bin_of = [&](double x) {
        return std::min(bins - 1, static_cast<std::size_t>((x - lo) / width));
    };
    for (double x : data) ++counts[bin_of(x)];

    Output out(out_path);
    auto& os = out.stream();
    os.precision(12);
    os << "x,empirical_cdf,fitted_cdf,histogram_density,fitted_pdf\n";
    for (std::size_t i = 0; i < n; ++i) {
        // Ties: the empirical cdf at x counts every point <= x.
        std::size_t j = i;
        while (j + 1 < n && data[j + 1] == data[i]) ++j;
        const double x = data[i];
        const double density = static_cast<double>(counts[bin_of(x)]) /
                               (static_cast<double>(n) * width);
        os << x << ',' << static_cast<double>(j + 1) / static_cast<double>(n) << ','
           << cdf(d, x) << ',' << density << ',' << pdf(d, x) << '\n';
    }
    return r.converged ? 0 : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Odds OPPE-G lifetime models: fit, sample, evaluate, simulate"};
    app.require_subcommand(1);
    std::string out_path;

    ModelFlags fit_model;
    FitFlags fit_flags;
    auto* fit = app.add_subcommand("fit", "maximum-likelihood fit, JSON on stdout");
    add_model_flags(fit, fit_model, true);
    add_fit_flags(fit, fit_flags);
    fit->add_option("--out", out_path, "write here instead of stdout");

    ModelFlags sample_model;
    std::size_t sample_n = 0;
    std::uint64_t sample_seed = 1;
    auto* samp = app.add_subcommand("sample", "random draws, one per line");
    add_model_flags(samp, sample_model, false);
    samp->add_option("-n", sample_n, "number of draws")->required();
    samp->add_option("--seed", sample_seed)->capture_default_str();
    samp->add_option("--out", out_path, "write here instead of stdout");

    ModelFlags eval_model;
    std::string which;
    std::string grid;
    auto* ev = app.add_subcommand("eval", "evaluate a function on a grid, CSV (x,value)");
    add_model_flags(ev, eval_model, false);
    ev->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"pdf", "cdf", "sf", "hazard", "mrl", "mrrl"}));
    ev->add_option("--grid", grid, "start:stop:count")->required();
    ev->add_option("--out", out_path, "write here instead of stdout");

    ModelFlags sim_model;
    SimulateFlags sim;
    auto* simc = app.add_subcommand("simulate", "Monte Carlo bias/MSE study");
    simc->add_option("--table", sim.table, "built-in study design: 2, 3, 4 or 5");
    simc->add_option("--family", sim_model.family, "ad-hoc cell: family with lambda")
        ->capture_default_str();
    simc->add_option("--baseline", sim_model.baseline, "ad-hoc cell: baseline with parameters");
    simc->add_option("-n", sim.n, "ad-hoc cell: sample size");
    simc->add_option("--seed", sim.seed)->capture_default_str();
    simc->add_option("--replicates", sim.replicates)->capture_default_str();
    simc->add_option("--threads", sim.threads)->capture_default_str();
    simc->add_option("--format", sim.format)
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    simc->add_option("--out", out_path, "write here instead of stdout");

    ModelFlags plot_model;
    FitFlags plot_flags;
    auto* plot = app.add_subcommand("fitplot", "fit, then emit cdf/pdf comparison columns");
    add_model_flags(plot, plot_model, true);
    add_fit_flags(plot, plot_flags);
    plot->add_option("--out", out_path, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kMalformed;
    }

    try {
        if (*fit) return cmd_fit(fit_model, fit_flags, out_path);
        if (*samp) return cmd_sample(sample_model, sample_n, sample_seed, out_path);
        if (*ev) return cmd_eval(eval_model, which, grid, out_path);
        if (*simc) return cmd_simulate(sim_model, sim, out_path);
        if (*plot) return cmd_fitplot(plot_model, plot_flags, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMalformed;
    }
    return kMalformed;
}
