#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "contractum/expression.hpp"
#include "contractum/numeric_text.hpp"

using namespace contractum;

TEST(ParseReal, AcceptsDecimalsRationalsAndCommas) {
    EXPECT_DOUBLE_EQ(parse_real("0.25"), 0.25);
    EXPECT_DOUBLE_EQ(parse_real(" 1/3 "), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(parse_real("0,16"), 0.16);
    EXPECT_DOUBLE_EQ(parse_real("+2"), 2.0);
    EXPECT_DOUBLE_EQ(parse_real("-1/4"), -0.25);
    EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
}

TEST(ParseReal, RejectsGarbage) {
    EXPECT_FALSE(try_parse_real("abc"));
    EXPECT_FALSE(try_parse_real(""));
    EXPECT_FALSE(try_parse_real("1/0"));
    EXPECT_FALSE(try_parse_real("1.2.3"));
    EXPECT_THROW(parse_real("x", "distance"), malformed_input);
}

TEST(FormatReal, ShortestRoundTrip) {
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(3.0), "3");
    EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(parse_real(format_real(x)), x);
}

TEST(ExpressionTest, ArithmeticAndPrecedence) {
    Expression e("1 + 2 * 3 ^ 2", {});
    EXPECT_DOUBLE_EQ(e({}), 19.0);
    Expression pow_right("2 ^ 3 ^ 2", {});
    EXPECT_DOUBLE_EQ(pow_right({}), 512.0);
    Expression unary("-x^2", {"x"});
    EXPECT_DOUBLE_EQ(unary({3.0}), -9.0);
}

TEST(ExpressionTest, FunctionsAndConstants) {
    Expression e("ln(t) + sqrt(t)", {"t"});
    EXPECT_NEAR(e({4.0}), std::log(4.0) + 2.0, 1e-15);
    Expression k("exp(-1) * sin(x) + max(t, r)", {"t", "r", "x"});
    EXPECT_NEAR(k({0.2, 0.7, 1.0}), std::exp(-1.0) * std::sin(1.0) + 0.7, 1e-15);
    Expression c("pi * e", {});
    EXPECT_NEAR(c({}), M_PI * M_E, 1e-14);
}

TEST(ExpressionTest, UnicodeOperatorAliases) {
    Expression e("6 × 2 ÷ 3 − 1", {});
    EXPECT_DOUBLE_EQ(e({}), 3.0);
}

TEST(ExpressionTest, UnknownIdentifierNamesToken) {
    try {
        Expression e("x + foo", {"x"});
        FAIL() << "expected parse_error";
    } catch (const parse_error& err) {
        EXPECT_EQ(err.token(), "foo");
        EXPECT_NE(std::string(err.what()).find("foo"), std::string::npos);
    }
}

TEST(ExpressionTest, SyntaxErrors) {
    EXPECT_THROW(Expression("1 +", {}), parse_error);
    EXPECT_THROW(Expression("(1", {}), parse_error);
    EXPECT_THROW(Expression("sinh(1)", {}), parse_error);
    EXPECT_THROW(Expression("1 $ 2", {}), parse_error);
}

TEST(ExpressionTest, ArityChecked) {
    Expression e("x + y", {"x", "y"});
    EXPECT_THROW(e({1.0}), malformed_input);
}

TEST(ExpressionTest, UnaryFunctionBindsTAndX) {
    auto f = unary_function("2*t");
    auto g = unary_function("x^2");
    EXPECT_DOUBLE_EQ(f(1.5), 3.0);
    EXPECT_DOUBLE_EQ(g(3.0), 9.0);
}
