#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "contractum/fixtures.hpp"
#include "contractum/metric_spaces.hpp"
#include "oracles.hpp"
#include "random_spaces.hpp"

using namespace contractum;
using testing_support::random_space;
using testing_support::table;

namespace {

FiniteSpace square_space() {
    return FiniteSpace({"a", "b", "c", "d"}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

} // namespace

TEST(FiniteSpaceTest, RejectsAsymmetryNamingPair) {
    try {
        FiniteSpace({"p", "q", "r"}, {{0, 1, 2}, {1, 0, 3}, {2, 3.5, 0}});
        FAIL();
    } catch (const malformed_input& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("q"), std::string::npos);
        EXPECT_NE(msg.find("r"), std::string::npos);
    }
}

TEST(FiniteSpaceTest, RejectsShapeSignAndDiagonal) {
    EXPECT_THROW(FiniteSpace({"a", "b"}, {{0, 1}}), malformed_input);
    EXPECT_THROW(FiniteSpace({"a", "b"}, {{0, -1}, {-1, 0}}), malformed_input);
    EXPECT_THROW(FiniteSpace({"a", "b"}, {{1, 1}, {1, 0}}), malformed_input);
    EXPECT_THROW(FiniteSpace({"a", "b"}, {{0, NAN}, {NAN, 0}}), malformed_input);
    EXPECT_THROW(FiniteSpace({"a", "a"}, {{0, 1}, {1, 0}}), malformed_input);
}

TEST(FiniteSpaceTest, AsymmetryWithinToleranceAccepted) {
    FiniteSpace s({"a", "b"}, {{0, 1}, {1 + 1e-13, 0}});
    EXPECT_NEAR(s(0, 1), s(1, 0), 1e-12);
}

TEST(FiniteSpaceTest, CoincidentPairsFailIdentity) {
    FiniteSpace s({"a", "b", "c", "d"}, {{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
    ASSERT_EQ(s.coincident_pairs().size(), 1u);
    auto report = validate_space(s, 3.0);
    EXPECT_FALSE(report.holds);
    ASSERT_EQ(report.identity_failures.size(), 1u);
    EXPECT_EQ(report.identity_failures[0].first, "a");
    auto flags = classify_space(s);
    EXPECT_FALSE(flags.is_metric);
    EXPECT_FALSE(flags.is_rectangular);
}

TEST(FiniteSpaceTest, LookupByValue) {
    auto s = fixtures::example_3_4_table();
    EXPECT_TRUE(s.contains(1.0 / 3.0));
    EXPECT_FALSE(s.contains(0.3));
    EXPECT_DOUBLE_EQ(s.distance(0.0, 0.25), 0.25);
    EXPECT_THROW(s.distance(0.0, 0.3), closure_error);
    EXPECT_EQ(s.label_of(0.5), "1/2");
}

TEST(ValidateSpace, FewerThanFourPointsIsVacuous) {
    FiniteSpace s({"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
    auto report = validate_space(s, 1.0);
    EXPECT_TRUE(report.vacuous);
    EXPECT_TRUE(report.holds);
    EXPECT_EQ(report.minimal_s, 1.0);
}

TEST(ValidateSpace, RejectsCoefficientBelowOne) { EXPECT_THROW(validate_space(square_space(), 0.5), malformed_input); }

TEST(ValidateSpace, MetricSquareIsRectangular) {
    auto report = validate_space(square_space(), 1.0);
    EXPECT_TRUE(report.holds);
    EXPECT_FALSE(report.witness);
}

TEST(ValidateSpace, LargeSpaceNeedsSampledMode) {
    auto space = PiecewiseSpace::interval(0, 1, 1.0).sample(201);
    EXPECT_THROW(validate_space(space, 1.0), malformed_input);
    EnumerationOptions opts;
    opts.sampled = SampledMode{5000, 7};
    auto report = validate_space(space, 1.0, opts);
    EXPECT_TRUE(report.sampled);
    EXPECT_EQ(report.quadruples_checked, 5000u);
    EXPECT_TRUE(report.holds);
}

TEST(ValidateSpace, SampledModeIsReproducible) {
    Rng rng(3);
    auto space = random_space(rng, 30);
    EnumerationOptions opts;
    opts.sampled = SampledMode{2000, 11};
    auto a = validate_space(space, 1.0, opts);
    auto b = validate_space(space, 1.0, opts);
    EXPECT_EQ(a.minimal_s, b.minimal_s);
    EXPECT_LE(a.minimal_s, minimal_coefficient(space).value + 1e-12);
}

TEST(ValidateSpace, WitnessViolatesForRequestedS) {
    auto space = fixtures::example_3_4_table();
    auto report = validate_space(space, 1.0);
    ASSERT_TRUE(report.witness);
    const auto& w = *report.witness;
    EXPECT_GT(w.lhs, 1.0 * w.bracket + space.tolerance());
    std::vector<std::string> expected{"1/2", "0", "1/3", "1/4"};
    EXPECT_EQ(std::vector<std::string>(w.labels.begin(), w.labels.end()), expected);
}

// Frozen oracle outputs for the fixture tables.
TEST(MinimalCoefficient, FixtureValuesMatchOracle) {
    const auto t34 = fixtures::example_3_4_table();
    const double oracle34 = oracle::max_quadrilateral_ratio(table(t34));
    EXPECT_NEAR(oracle34, 25.0 / 24.0, 1e-15);
    EXPECT_NEAR(minimal_coefficient(t34).value, oracle34, 1e-12);

    const auto t22 = fixtures::example_2_2().sample(64);
    const double oracle22 = oracle::max_quadrilateral_ratio(table(t22));
    EXPECT_NEAR(oracle22, 3.0, 1e-12);
    EXPECT_NEAR(minimal_coefficient(t22).value, oracle22, 1e-12);
}

TEST(MinimalCoefficient, ThreadCountDoesNotChangeResult) {
    Rng rng(5);
    auto space = random_space(rng, 40);
    EnumerationOptions one, many;
    one.threads = 1;
    many.threads = 7;
    auto a = minimal_coefficient(space, one);
    auto b = minimal_coefficient(space, many);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.argmax->points, b.argmax->points);
}

TEST(MinimalCoefficient, ZeroDenominatorRejected) {
    // d(a,c) = d(c,d) = d(d,b) = 0 but d(a,b) = 1.
    FiniteSpace s({"a", "b", "c", "d"}, {{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
    EXPECT_THROW(minimal_coefficient(s), malformed_input);
}

TEST(MinimalCoefficient, RandomSpacesMatchOracle) {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto space = random_space(rng, 4 + rng.index(6));
        EXPECT_NEAR(minimal_coefficient(space).value, oracle::max_quadrilateral_ratio(table(space)), 1e-12);
    }
}

// validate(min s) holds, validate(min s - 1e-9) fails once min s exceeds 1.
TEST(MinimalCoefficient, IsTightThreshold) {
    Rng rng(99);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto space = random_space(rng, 4 + rng.index(5), 0.01, 1.0);
        const double s = minimal_coefficient(space).value;
        if (s <= 1.0 + 1e-6)
            continue;
        ++checked;
        EXPECT_TRUE(validate_space(space, s).holds);
        EXPECT_FALSE(validate_space(space, s - 1e-9).holds) << "s = " << s;
        EXPECT_EQ(oracle::quadrilateral_violations(table(space), s, 1e-12), 0u);
    }
    EXPECT_GT(checked, 20);
}

TEST(MinimalCoefficient, PermutationInvariant) {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto space = random_space(rng, 4 + rng.index(6));
        std::vector<std::size_t> order(space.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng.engine());
        auto shuffled = space.permuted(order);
        EXPECT_NEAR(minimal_coefficient(space).value, minimal_coefficient(shuffled).value, 1e-12);
        EXPECT_EQ(classify_space(space).is_rectangular, classify_space(shuffled).is_rectangular);
        EXPECT_EQ(classify_space(space).is_metric, classify_space(shuffled).is_metric);
    }
}

TEST(ClassifySpace, Example34Witnesses) {
    auto flags = classify_space(fixtures::example_3_4_table());
    EXPECT_FALSE(flags.is_metric);
    EXPECT_FALSE(flags.is_rectangular);
    ASSERT_EQ(flags.witnesses.size(), 2u);
    const auto& tri = flags.witnesses[0];
    EXPECT_EQ(tri.kind, "triangle");
    EXPECT_EQ(tri.labels, (std::vector<std::string>{"0", "1/3", "1/4"}));
    EXPECT_NEAR(tri.lhs, 0.25, 1e-12);
    EXPECT_NEAR(tri.rhs, 0.08, 1e-12);
    const auto& quad = flags.witnesses[1];
    EXPECT_EQ(quad.kind, "quadrilateral");
    EXPECT_EQ(quad.labels, (std::vector<std::string>{"1/2", "0", "1/3", "1/4"}));
    EXPECT_NEAR(quad.lhs, 0.25, 1e-12);
    EXPECT_NEAR(quad.rhs, 0.24, 1e-12);
    EXPECT_NEAR(*flags.b_metric_s, oracle::max_triangle_ratio(table(fixtures::example_3_4_table())), 1e-12);
    EXPECT_NEAR(*flags.b_metric_s, 3.125, 1e-12);
}

// Metric implies rectangular: a triangle-valid table never fails s = 1.
TEST(ClassifySpace, MetricImpliesRectangularOnRandomMetrics) {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto space = random_space(rng, 4 + rng.index(5), 0.5, 1.0);  // any values in [1/2, 1] are metric
        auto flags = classify_space(space);
        EXPECT_TRUE(flags.is_metric);
        EXPECT_TRUE(flags.is_rectangular);
    }
}

// Scaling every distance up to a fixed s keeps validity monotone in s.
TEST(ClassifySpace, ValidityMonotoneInS) {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        auto space = random_space(rng, 5 + rng.index(3), 0.01, 1.0);
        bool previous = false;
        for (double s : {1.0, 1.5, 2.0, 4.0, 8.0, 16.0, 64.0}) {
            bool holds = validate_space(space, s).holds;
            EXPECT_TRUE(!previous || holds);
            previous = holds;
        }
    }
}

TEST(PiecewiseSpaceTest, DistanceRules) {
    auto space = fixtures::example_3_4();
    EXPECT_DOUBLE_EQ(space.distance(0.0, 0.5), 0.16);    // table
    EXPECT_DOUBLE_EQ(space.distance(0.0, 1.5), 2.25);    // mixed, (x - y)^2
    EXPECT_DOUBLE_EQ(space.distance(1.0, 2.0), 1.0);     // interval
    EXPECT_DOUBLE_EQ(space.distance(1.3, 1.3), 0.0);
    EXPECT_THROW(space.distance(0.7, 1.0), closure_error);
    EXPECT_TRUE(space.contains(2.0));
    EXPECT_FALSE(space.contains(2.0001));
}

TEST(PiecewiseSpaceTest, SamplePointsIncludeEndpoints) {
    auto pts = fixtures::example_3_4().sample_points(32);
    EXPECT_EQ(pts.size(), 36u);
    EXPECT_NE(std::find(pts.begin(), pts.end(), 1.0), pts.end());
    EXPECT_NE(std::find(pts.begin(), pts.end(), 2.0), pts.end());
}

TEST(PiecewiseSpaceTest, SampleAgreesWithDistance) {
    auto space = fixtures::example_2_2();
    auto finite = space.sample(8);
    for (std::size_t i = 0; i < finite.size(); ++i)
        for (std::size_t j = 0; j < finite.size(); ++j)
            EXPECT_DOUBLE_EQ(finite(i, j), space.distance(finite.value(i), finite.value(j)));
}

TEST(PiecewiseSpaceTest, DrawStaysInSpace) {
    auto space = fixtures::example_3_10();
    Rng rng(1);
    for (int k = 0; k < 1000; ++k)
        EXPECT_TRUE(space.contains(space.draw(rng)));
}

TEST(Example22, BRectangularWithSThree) {
    auto report = validate_space(fixtures::example_2_2().sample(64), 3.0);
    EXPECT_TRUE(report.holds);
    EXPECT_NEAR(report.minimal_s, 3.0, 1e-12);
    EXPECT_FALSE(validate_space(fixtures::example_2_2_table(), 1.0).holds);
}

TEST(SpecExamples, SinglePointVacuous) {
    FiniteSpace p({"p"}, {{0.0}});
    auto r = validate_space(p, 1.0);
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.vacuous);
    EXPECT_TRUE(minimal_coefficient(p).vacuous);
}

TEST(SpecExamples, AbsoluteValueMetric) {
    std::vector<std::vector<double>> d(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            d[i][j] = std::abs(i - j);
    FiniteSpace s({"0", "1", "2", "3"}, d);
    EXPECT_TRUE(classify_space(s).is_metric);
    EXPECT_LE(minimal_coefficient(s).value, 1.0 + 1e-12);
}

TEST(SpecExamples, Example22FinitePartAtMostThree) {
    EXPECT_LE(minimal_coefficient(fixtures::example_2_2_table()).value, 3.0 + 1e-12);
}
