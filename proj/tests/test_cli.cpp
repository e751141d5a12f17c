#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(OPPE_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

// strtod rather than stod: far-tail densities can be subnormal.
double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string data(const char* name) { return std::string(OPPE_DATA_DIR) + "/" + name; }

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto p = std::filesystem::temp_directory_path() / ("oppe_cli_test_" + name);
    std::ofstream(p) << contents;
    return p;
}

}  // namespace

TEST(Cli, FitCarbon) {
    const auto r = run("fit " + data("carbon20.csv") + " --baseline exponential");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["n"], 69);
    EXPECT_EQ(j["k"], 2);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_NEAR(j["parameters"]["lambda"].get<double>(), 0.2202, 5e-4);
    EXPECT_NEAR(j["parameters"]["theta"].get<double>(), 1.3773, 5e-4);
    EXPECT_NEAR(j["aic"].get<double>(), 104.3232, 5e-3);
}

TEST(Cli, FitParetoFixedLocation) {
    const auto r = run("fit " + data("aircond.csv") + " --baseline pareto --fix a=1 --exclude-fixed");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["k"], 2);
    EXPECT_EQ(j["parameters"]["a"].get<double>(), 1.0);
}

TEST(Cli, FitRejectsBadInput) {
    const auto empty = temp_file("empty.csv", "");
    EXPECT_EQ(run("fit " + empty.string() + " --baseline exponential").status, 1);
    const auto flat = temp_file("flat.csv", "2\n2\n2\n2\n");
    EXPECT_EQ(run("fit " + flat.string() + " --baseline exponential").status, 1);
    const auto junk = temp_file("junk.csv", "1\nx\n");
    EXPECT_EQ(run("fit " + junk.string() + " --baseline exponential").status, 1);
    EXPECT_EQ(run("fit /nonexistent/file --baseline exponential").status, 1);
    EXPECT_EQ(run("fit " + data("carbon20.csv") + " --baseline weibull").status, 1);
    EXPECT_EQ(run("fit " + data("carbon20.csv")).status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
}

TEST(Cli, FitNotConvergedExitCode) {
    EXPECT_EQ(run("fit " + data("carbon20.csv") +
                  " --baseline exponential --starts 1 --max-evals 5")
                  .status,
              2);
}

TEST(Cli, Help) { EXPECT_EQ(run("--help").status, 0); }

TEST(Cli, SampleDeterministic) {
    const std::string args =
        "sample --family lindley:lambda=0.5 --baseline exponential:theta=1 -n 50 --seed 4";
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 50);
    EXPECT_NE(a.out, run(args + "0").out);
}

TEST(Cli, SampleNeedsParameters) {
    EXPECT_EQ(run("sample --family lindley --baseline exponential:theta=1 -n 5").status, 1);
}

TEST(Cli, EvalPdfIntegratesToOne) {
    const auto r = run("eval --family lindley:lambda=1 --baseline exponential:theta=1 --which pdf "
                       "--grid 0:12:4001");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 4002u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "pdf"}));
    double total = 0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double x0 = num(rows[i - 1][0]), x1 = num(rows[i][0]);
        total += 0.5 * (x1 - x0) * (num(rows[i - 1][1]) + num(rows[i][1]));
    }
    EXPECT_NEAR(total, 1.0, 1e-5);
}

TEST(Cli, EvalCdfMonotone) {
    const auto r = run("eval --family akash:lambda=2 --baseline burrxii:alpha=2,theta=1 --which cdf "
                       "--grid 0:5:101");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv(r.out);
    double prev = -1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = num(rows[i][1]);
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_EQ(num(rows[1][1]), 0.0);
}

TEST(Cli, EvalMrlAtOriginIsMean) {
    const auto r = run("eval --family lindley:lambda=1 --baseline exponential:theta=1 --which mrl "
                       "--grid 0:1:2");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv(r.out);
    EXPECT_NEAR(num(rows[1][1]), 0.79817368116159704, 1e-8);
}

TEST(Cli, EvalUndefinedPointsAreEmpty) {
    const auto r = run("eval --family lindley:lambda=1 --baseline uniform:theta=2 --which hazard "
                       "--grid 0:2:3");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_FALSE(rows[1][1].empty());
    EXPECT_TRUE(rows[3].size() < 2 || rows[3][1].empty());
}

TEST(Cli, EvalRejectsBadGrid) {
    EXPECT_EQ(run("eval --family lindley:lambda=1 --baseline exponential:theta=1 --which pdf "
                  "--grid 1:0:3")
                  .status,
              1);
    EXPECT_EQ(run("eval --family lindley:lambda=1 --baseline exponential:theta=1 --which pmf "
                  "--grid 0:1:3")
                  .status,
              1);
}

TEST(Cli, FitplotColumns) {
    const auto r = run("fitplot " + data("carbon20.csv") + " --baseline exponential");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 70u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "empirical_cdf", "fitted_cdf",
                                                 "histogram_density", "fitted_pdf"}));
    EXPECT_EQ(num(rows.back()[1]), 1.0);
    double gap = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        gap = std::max(gap, std::abs(num(rows[i][1]) - num(rows[i][2])));
        EXPECT_GE(num(rows[i][3]), 0.0);
    }
    EXPECT_LT(gap, 0.12);
}

TEST(Cli, SimulateTableRows) {
    const auto r = run("simulate --table 2 --seed 7 --replicates 2");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 61u);
    EXPECT_EQ(rows[0][0], "table");
    EXPECT_EQ(run("simulate --table 9").status, 1);
}

TEST(Cli, SimulateAdHocCellJson) {
    const auto r = run("simulate --family lindley:lambda=0.5 --baseline exponential:theta=1 -n 30 "
                       "--replicates 5 --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j.empty());
}
