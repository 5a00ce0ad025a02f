#include <gtest/gtest.h>

#include <cmath>

#include "contractum/contraction_checker.hpp"
#include "contractum/fixtures.hpp"
#include "random_spaces.hpp"

using namespace contractum;

namespace {

ContractionSpec spec_for(Variant v, double s, AuxiliaryPair pair) {
    ContractionSpec spec;
    spec.variant = v;
    spec.s = s;
    spec.pair = std::move(pair);
    return spec;
}

/// Random self-map of {0, ..., n-1} as a lookup table.
SelfMap random_map(Rng& rng, std::size_t n) {
    std::vector<double> image(n);
    for (auto& v : image)
        v = static_cast<double>(rng.index(n));
    return [image](double x) { return image.at(static_cast<std::size_t>(x)); };
}

// Direct evaluation of the TypeF inequality, written out by hand.
double type_f_margin(const PiecewiseSpace& X, const SelfMap& T, double s, double x, double y) {
    const double dT = X.distance(T(x), T(y));
    const double d = X.distance(x, y);
    const double lhs = std::log(s * dT) + std::sqrt(s * dT);
    const double rhs = std::log(d) + std::sqrt(d) - 1.0 / (1.0 + d);
    return rhs - lhs;
}

} // namespace

TEST(Variants, NamesRoundTrip) {
    for (auto v : {Variant::TypeF, Variant::TypeIm, Variant::Kannan, Variant::Reich, Variant::BetaCombo})
        EXPECT_EQ(parse_variant(to_string(v)), v);
    EXPECT_THROW(parse_variant("banach"), malformed_input);
}

TEST(Spec, Validation) {
    auto spec = spec_for(Variant::BetaCombo, 2.0, make_pair("ln", "inv_1p"));
    EXPECT_THROW(spec.validate(), malformed_input);
    spec.betas = std::array<double, 4>{0.5, 0.3, 0.2, 0.1};
    EXPECT_THROW(spec.validate(), malformed_input);
    spec.betas = std::array<double, 4>{0.4, 0.3, 0.2, 0.1};
    EXPECT_NO_THROW(spec.validate());
    spec.betas = std::array<double, 4>{0.4, -0.1, 0.2, 0.1};
    EXPECT_THROW(spec.validate(), malformed_input);

    auto f = spec_for(Variant::TypeF, 0.9, make_pair("ln", "inv_1p"));
    EXPECT_THROW(f.validate(), malformed_input);
    f.s = 2.0;
    f.tau = 0.0;
    EXPECT_THROW(f.validate(), malformed_input);
    f.tau = 0.2;
    EXPECT_DOUBLE_EQ(f.phi(100.0), 0.2);
    EXPECT_DOUBLE_EQ(f.image_scale(), 2.0);
    EXPECT_DOUBLE_EQ(spec_for(Variant::Reich, 2.0, make_pair("ln", "inv_1p")).image_scale(), 4.0);
}

TEST(MValue, Example34) {
    const auto X = fixtures::example_3_4();
    // T(0) = T(1/2) = 1: d(0,1/2) = 0.16, d(0,1) = 1, d(1/2,1) = 0.25.
    EXPECT_DOUBLE_EQ(m_value(X, fixtures::example_3_4_map, 0.0, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(m_value(X, fixtures::example_3_4_map, 1.0, 2.0),
                     std::max({1.0, 0.0, std::pow(2.0 - std::pow(2.0, 0.25), 2), std::pow(2.0 - 1.0, 2)}));
}

TEST(CheckPair, VacuousWhenImagesCoincide) {
    const auto X = fixtures::example_3_4();
    auto v = check_pair(fixtures::example_3_4_spec(), X, fixtures::example_3_4_map, 0.0, 0.5);
    EXPECT_EQ(v.status, VerdictStatus::vacuous);
}

TEST(CheckPair, ClosureErrorOutsideSpace) {
    const auto X = fixtures::example_3_4();
    EXPECT_THROW(check_pair(fixtures::example_3_4_spec(), X, fixtures::resolve_map("shift"), 1.5, 2.0), closure_error);
}

TEST(CheckPair, MatchesHandEvaluatedTypeF) {
    const auto X = fixtures::example_3_4();
    const auto spec = fixtures::example_3_4_spec();
    const auto T = fixtures::example_3_4_map;
    for (auto [x, y] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.25, 1.75}, {0.0, 1.5}, {1.0 / 3.0, 2.0}}) {
        auto v = check_pair(spec, X, T, x, y);
        EXPECT_NEAR(v.margin, type_f_margin(X, T, 3.0, x, y), 1e-12) << x << ", " << y;
        EXPECT_EQ(v.status, VerdictStatus::holds);
    }
}

TEST(VerifyOverFinite, Example34PassesAndIdentityFails) {
    const auto X = fixtures::example_3_4();
    const auto pts = X.sample_points(32);
    ASSERT_EQ(pts.size(), 36u);
    auto report = verify_over_finite(fixtures::example_3_4_spec(), X, pts, fixtures::example_3_4_map);
    EXPECT_TRUE(report.pass());
    EXPECT_EQ(report.pairs, 630u);
    EXPECT_GT(report.worst_margin, 0.7);

    auto identity = verify_over_finite(fixtures::example_3_4_spec(), X, pts, fixtures::resolve_map("identity"));
    EXPECT_EQ(identity.violated, 630u);
    EXPECT_FALSE(identity.pass());
    EXPECT_TRUE(std::is_sorted(identity.violations.begin(), identity.violations.end(),
                               [](const PairVerdict& a, const PairVerdict& b) {
                                   return std::tie(a.x_label, a.y_label) < std::tie(b.x_label, b.y_label);
                               }));
}

TEST(VerifyOverFinite, ThreadCountDoesNotChangeVerdicts) {
    const auto X = fixtures::example_3_4();
    const auto pts = X.sample_points(16);
    auto a = verify_over_finite(fixtures::example_3_4_spec(), X, pts, fixtures::example_3_4_map, 1);
    auto b = verify_over_finite(fixtures::example_3_4_spec(), X, pts, fixtures::example_3_4_map, 5);
    ASSERT_EQ(a.verdicts.size(), b.verdicts.size());
    for (std::size_t i = 0; i < a.verdicts.size(); ++i)
        EXPECT_EQ(a.verdicts[i].margin, b.verdicts[i].margin);
}

TEST(VerifyOverSample, Example310) {
    const auto X = fixtures::example_3_10();
    auto sampler = [&](Rng& rng) { return X.draw(rng); };
    auto a = verify_over_sample(fixtures::example_3_10_spec(), X, sampler, fixtures::example_3_10_map, 10'000, 42);
    EXPECT_TRUE(a.pass());
    EXPECT_EQ(a.pairs, 10'000u);
    auto b = verify_over_sample(fixtures::example_3_10_spec(), X, sampler, fixtures::example_3_10_map, 10'000, 42);
    EXPECT_EQ(a.worst_margin, b.worst_margin);
    EXPECT_THROW(verify_over_sample(fixtures::example_3_10_spec(), X, sampler, fixtures::example_3_10_map, 0, 42),
                 malformed_input);
}

TEST(Orientation, WorseOrientationReported) {
    const auto X = fixtures::example_3_10();
    const auto spec = fixtures::example_3_10_spec();
    const auto T = fixtures::example_3_10_map;
    auto forward = check_pair(spec, X, T, 1.2, 2.4);
    auto backward = check_pair(spec, X, T, 2.4, 1.2);
    auto report = verify_over_finite(spec, X, {1.2, 2.4}, T);
    EXPECT_DOUBLE_EQ(report.worst_margin, std::min(forward.margin, backward.margin));
}

TEST(KannanReich, BothPointsFixedIsVacuousNotError) {
    FiniteSpace s({"0", "1"}, {{0, 1}, {1, 0}});
    auto swap = [](double x) { return 1.0 - x; };
    auto kannan = spec_for(Variant::Kannan, 1.0, make_pair("ln", "inv_1p"));
    auto v = check_pair(kannan, s, swap, 0.0, 1.0);
    EXPECT_NE(v.status, VerdictStatus::vacuous);  // d(x,Tx) = 1 > 0
    EXPECT_LT(v.margin, 0.0);
}

// Kannan, Reich and BetaCombo comparison terms never exceed M(x,y), so with
// the same F, phi and scale, any pair passing them passes TypeIm.
TEST(Dominance, ReductionsImplyTypeIm) {
    Rng rng(20240601);
    std::size_t checked = 0, counterexamples = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng.index(7);
        auto space = testing_support::random_space(rng, n, 0.01, 2.0);
        auto T = random_map(rng, n);
        AuxiliaryPair pair = make_pair("ln", "inv_1p", FamilyTag::Im);
        const double s = 1.0 + 2.0 * rng.unit();
        auto im = spec_for(Variant::TypeIm, s, pair);
        auto kannan = spec_for(Variant::Kannan, s, pair);
        auto reich = spec_for(Variant::Reich, s, pair);
        auto beta = spec_for(Variant::BetaCombo, s, pair);
        std::array<double, 4> b{rng.unit(), rng.unit(), rng.unit(), rng.unit()};
        const double total = b[0] + b[1] + b[2] + b[3] + rng.unit();
        for (auto& v : b)
            v /= total;
        beta.betas = b;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                const double x = static_cast<double>(i), y = static_cast<double>(j);
                auto target = check_pair(im, space, T, x, y);
                for (const auto* sub : {&kannan, &reich, &beta}) {
                    PairVerdict v;
                    try {
                        v = check_pair(*sub, space, T, x, y);
                    } catch (const domain_error&) {
                        continue;  // beta term zero: the premise is undefined
                    }
                    if (v.status != VerdictStatus::holds)
                        continue;
                    ++checked;
                    if (target.status == VerdictStatus::violated)
                        ++counterexamples;
                }
            }
    }
    EXPECT_EQ(counterexamples, 0u);
    EXPECT_GT(checked, 100u);
}

TEST(SpecExamples, CheckPairCases) {
    const auto X34 = fixtures::example_3_4();
    const auto T34 = fixtures::example_3_4_map;
    EXPECT_EQ(check_pair(fixtures::example_3_4_spec(), X34, T34, 1.5, 2.0).status, VerdictStatus::holds);
    EXPECT_EQ(check_pair(fixtures::example_3_4_spec(), X34, T34, 1.5, 1.5).status, VerdictStatus::vacuous);
    const auto X310 = fixtures::example_3_10();
    EXPECT_EQ(check_pair(fixtures::example_3_10_spec(), X310, fixtures::example_3_10_map, 2.0, 1.0 / 3.0).status,
              VerdictStatus::holds);
}

TEST(SpecExamples, SixteenPointGridAndSeededPairs) {
    const auto X = fixtures::example_3_4();
    EXPECT_TRUE(verify_over_finite(fixtures::example_3_4_spec(), X, X.sample_points(16), fixtures::example_3_4_map).pass());
    auto sampled = verify_over_sample(
        fixtures::example_3_4_spec(), X, [&](Rng& rng) { return X.draw(rng); }, fixtures::example_3_4_map, 10'000, 1);
    EXPECT_TRUE(sampled.pass());
}

TEST(SpecExamples, ConstantMapAllVacuous) {
    const auto X = fixtures::example_3_4();
    auto r = verify_over_finite(fixtures::example_3_4_spec(), X, X.sample_points(8), [](double) { return 1.0; });
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.vacuous, r.pairs);
}

TEST(SpecExamples, ShiftMapViolates) {
    const auto X = PiecewiseSpace::interval(1.0, 3.0, 2.0);
    std::vector<double> pts;
    for (int i = 0; i <= 8; ++i)
        pts.push_back(1.0 + i / 8.0);
    auto r = verify_over_finite(fixtures::example_3_4_spec(), X, pts, [](double x) { return x + 1.0; });
    EXPECT_EQ(r.violated, r.pairs);
}
