#include <gtest/gtest.h>

#include <cmath>

#include "contractum/function_families.hpp"

using namespace contractum;

namespace {

std::vector<double> halving(int n) {
    std::vector<double> v;
    for (int i = 1; i <= n; ++i)
        v.push_back(std::ldexp(1.0, -i));
    return v;
}

} // namespace

TEST(Families, BuiltinsEvaluate) {
    auto pair = make_pair("ln_plus_sqrt", "inv_1p");
    EXPECT_NEAR(pair.F(4.0), std::log(4.0) + 2.0, 1e-15);
    EXPECT_NEAR(pair.phi(1.0), 0.5, 1e-15);
    auto im = make_pair("ln_sqrt", "inv_2p", FamilyTag::Im);
    EXPECT_NEAR(im.F(9.0), std::log(3.0), 1e-15);
    EXPECT_NEAR(im.phi(2.0), 0.25, 1e-15);
}

TEST(Families, ExpressionFallback) {
    auto pair = make_pair("ln(t) + t", "1/(3+t)");
    EXPECT_NEAR(pair.F(1.0), 1.0, 1e-15);
    EXPECT_NEAR(pair.phi(1.0), 0.25, 1e-15);
    EXPECT_THROW(make_pair("lnn(t)", "inv_1p"), parse_error);
}

TEST(Families, ConstTau) {
    auto pair = make_pair("ln", "const_tau(0.3)");
    EXPECT_DOUBLE_EQ(pair.phi(7.0), 0.3);
    EXPECT_THROW(make_pair("ln", "const_tau(0)"), malformed_input);
}

TEST(Families, KExponentRange) {
    EXPECT_NO_THROW(make_pair("ln", "inv_1p", FamilyTag::F, 0.5));
    EXPECT_THROW(make_pair("ln", "inv_1p", FamilyTag::F, 1.0), malformed_input);
    EXPECT_THROW(make_pair("ln", "inv_1p", FamilyTag::F, 0.0), malformed_input);
}

TEST(Families, IncreasingOnDefaultGrid) {
    for (const char* F : {"ln", "ln_sqrt", "ln_plus_sqrt", "x_plus_ln"})
        EXPECT_TRUE(check_increasing(make_pair(F, "inv_1p"), default_family_grid()).increasing) << F;
}

TEST(Families, DecreasingFReportsViolation) {
    auto report = check_increasing(make_pair("1/t", "inv_1p"), default_family_grid());
    EXPECT_FALSE(report.increasing);
    ASSERT_TRUE(report.violation);
    EXPECT_LT(report.violation->first, report.violation->second);
}

TEST(Families, NonPositiveGridRejected) {
    EXPECT_THROW(check_increasing(make_pair("ln", "inv_1p"), {0.0, 1.0}), domain_error);
    EXPECT_THROW(check_phi_positive(make_pair("ln", "inv_1p"), {-1.0, 1.0}), domain_error);
}

// Frozen: min of 1/(1+t) over {0.01, ..., 100} is 1/101 at t = 100.
TEST(Families, PhiPositivityMinimum) {
    auto report = check_phi_positive(make_pair("ln", "inv_1p"), log_grid(0.01, 100, 9));
    EXPECT_TRUE(report.positive);
    EXPECT_NEAR(report.minimum, 1.0 / 101.0, 1e-15);
    EXPECT_DOUBLE_EQ(report.argmin, 100.0);
    auto bad = check_phi_positive(make_pair("ln", "t - 1"), log_grid(0.01, 100, 9));
    EXPECT_FALSE(bad.positive);
}

TEST(Families, LimitHeuristics) {
    auto ln = check_limit_heuristics(make_pair("ln", "inv_1p", FamilyTag::F, 0.5), halving(30));
    EXPECT_TRUE(ln.diverges_downward);
    ASSERT_TRUE(ln.power_shrinks);
    EXPECT_TRUE(*ln.power_shrinks);
    EXPECT_TRUE(ln.advisory);

    auto bounded = check_limit_heuristics(make_pair("t", "inv_1p"), halving(30));
    EXPECT_FALSE(bounded.diverges_downward);
    EXPECT_FALSE(bounded.power_shrinks);

    EXPECT_THROW(check_limit_heuristics(make_pair("ln", "inv_1p"), halving(5)), malformed_input);
    EXPECT_THROW(check_limit_heuristics(make_pair("ln", "inv_1p"), {1, 2, 3, 4, 5, 6, 7, 8}), malformed_input);
}

TEST(Families, ContinuityProxy) {
    EXPECT_TRUE(check_continuity_proxy(make_pair("ln_sqrt", "inv_2p", FamilyTag::Im), 1e-3, 1e3));
    EXPECT_TRUE(check_continuity_proxy(make_pair("ln", "inv_2p", FamilyTag::Im), 1e-6, 1e3));
    // unit jump at t = 1.1
    auto step = make_pair("ln(t) + max(0, t - 1.1)/abs(t - 1.1)", "inv_2p", FamilyTag::Im);
    EXPECT_FALSE(check_continuity_proxy(step, 0.5, 2.0));
}

TEST(Families, LogGrid) {
    auto g = log_grid(1e-6, 1e3, 64);
    EXPECT_EQ(g.size(), 64u);
    EXPECT_DOUBLE_EQ(g.front(), 1e-6);
    EXPECT_DOUBLE_EQ(g.back(), 1e3);
    EXPECT_THROW(log_grid(0.0, 1.0, 4), malformed_input);
}
