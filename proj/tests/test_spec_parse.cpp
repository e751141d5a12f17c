#include <gtest/gtest.h>

#include "oppe/errors.hpp"
#include "oppe/spec_parse.hpp"

using namespace oppe;

TEST(SpecParse, PresetFamily) {
    const auto f = parse_family("akash");
    EXPECT_EQ(f.label, "akash");
    EXPECT_EQ(f.coefficients, (std::vector<double>{1, 0, 1}));
    EXPECT_FALSE(f.lambda.has_value());
    EXPECT_EQ(parse_family("lindley:lambda=0.5").lambda, 0.5);
}

TEST(SpecParse, CustomFamily) {
    const auto f = parse_family("1,0,2.5:lambda=2");
    EXPECT_EQ(f.label, "custom");
    EXPECT_EQ(f.coefficients, (std::vector<double>{1, 0, 2.5}));
    EXPECT_EQ(f.lambda, 2.0);
}

TEST(SpecParse, BadFamily) {
    for (auto text : {"", "weibull", "1,x", "0,0", "1,-1", "lindley:mu=1", "lindley:lambda=0",
                      "lindley:lambda", "lindley:lambda=1,lambda=2"}) {
        EXPECT_THROW(parse_family(text), InvalidInput) << text;
    }
}

TEST(SpecParse, Baseline) {
    const auto b = parse_baseline("pareto:a=1,theta=0.5");
    EXPECT_EQ(b.kind, BaselineKind::Pareto);
    EXPECT_EQ(b.params.at("a"), 1.0);
    EXPECT_EQ(b.params.at("theta"), 0.5);
    EXPECT_TRUE(parse_baseline("exponential").params.empty());
    EXPECT_EQ(parse_baseline("burrxii:alpha=2,theta=1").kind, BaselineKind::BurrXII);
}

TEST(SpecParse, BadBaseline) {
    for (auto text : {"normal", "pareto:b=1", "exponential:theta=-1", "uniform:theta=",
                      "uniform:=1", "exponential:theta=1e999"}) {
        EXPECT_THROW(parse_baseline(text), InvalidInput) << text;
    }
}

TEST(SpecParse, Fix) {
    EXPECT_TRUE(parse_fix("a=min").at_minimum);
    const auto l = parse_fix("a=0.013");
    EXPECT_FALSE(l.at_minimum);
    EXPECT_EQ(l.value, 0.013);
    EXPECT_THROW(parse_fix("b=1"), InvalidInput);
    EXPECT_THROW(parse_fix("a=0"), InvalidInput);
    EXPECT_THROW(parse_fix("a=max"), InvalidInput);
}

TEST(SpecParse, Grid) {
    EXPECT_EQ(parse_grid("0:1:5"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
    const auto g = parse_grid("0.1:0.7:7");
    EXPECT_EQ(g.size(), 7u);
    EXPECT_EQ(g.back(), 0.7);
    for (auto text : {"0:1", "0:1:1", "1:0:5", "0:1:2.5", "a:1:3", "0:1:3:4"}) {
        EXPECT_THROW(parse_grid(text), InvalidInput) << text;
    }
}

TEST(SpecParse, BuildDistribution) {
    const auto d = build_distribution(parse_family("lindley:lambda=1"),
                                      parse_baseline("exponential:theta=1"));
    EXPECT_NEAR(cdf(d, 0.5), 0.30773847404462423, 1e-12);
    EXPECT_EQ(full_parameters(parse_family("lindley:lambda=0.3"),
                              parse_baseline("pareto:theta=2,a=0.5")),
              (std::vector<double>{0.3, 2, 0.5}));
    EXPECT_THROW(build_distribution(parse_family("lindley"), parse_baseline("exponential:theta=1")),
                 InvalidInput);
    EXPECT_THROW(build_distribution(parse_family("lindley:lambda=1"), parse_baseline("pareto:a=1")),
                 InvalidInput);
}
