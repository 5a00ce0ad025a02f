#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contractum/contraction_checker.hpp"
#include "contractum/expression.hpp"
#include "contractum/function_families.hpp"
#include "contractum/integral_solver.hpp"
#include "contractum/metric_spaces.hpp"

namespace contractum::fixtures {

namespace detail {

struct Entry {
    const char* a;
    const char* b;
    double d;
};

inline FiniteSpace table_space(const std::vector<std::string>& labels, const std::vector<Entry>& entries) {
    const std::size_t n = labels.size();
    std::vector<double> values;
    for (const auto& l : labels)
        values.push_back(parse_real(l));
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                dist[i][j] = (values[i] - values[j]) * (values[i] - values[j]);
    auto index = [&](const char* label) {
        for (std::size_t i = 0; i < n; ++i)
            if (labels[i] == label)
                return i;
        throw malformed_input(std::string("fixture label ") + label + " missing");
    };
    for (const auto& e : entries) {
        auto i = index(e.a), j = index(e.b);
        dist[i][j] = dist[j][i] = e.d;
    }
    return FiniteSpace(labels, std::move(dist));
}

} // namespace detail

/// A = {1/2, ..., 1/7} with its explicit table (other pairs (x - y)^2).
inline FiniteSpace example_2_2_table() {
    return detail::table_space({"1/2", "1/3", "1/4", "1/5", "1/6", "1/7"},
                               {{"1/2", "1/3", 0.05}, {"1/4", "1/5", 0.05}, {"1/6", "1/7", 0.05},
                                {"1/2", "1/4", 0.08}, {"1/3", "1/7", 0.08}, {"1/5", "1/6", 0.08},
                                {"1/2", "1/6", 0.4},  {"1/3", "1/4", 0.4},  {"1/5", "1/7", 0.4},
                                {"1/2", "1/5", 0.24}, {"1/3", "1/6", 0.24}, {"1/4", "1/7", 0.24},
                                {"1/2", "1/7", 0.15}, {"1/3", "1/5", 0.15}, {"1/4", "1/6", 0.15}});
}

/// A ∪ [1, 2] with d = (x - y)^2 off the table.
inline PiecewiseSpace example_2_2() { return PiecewiseSpace(example_2_2_table(), {{1.0, 2.0}}, 2.0); }

/// A = {0, 1/2, 1/3, 1/4} with its explicit table.
inline FiniteSpace example_3_4_table() {
    return detail::table_space({"0", "1/2", "1/3", "1/4"},
                               {{"0", "1/2", 0.16}, {"1/2", "1/3", 0.16}, {"0", "1/3", 0.04},
                                {"1/3", "1/4", 0.04}, {"0", "1/4", 0.25}, {"1/2", "1/4", 0.25}});
}

inline PiecewiseSpace example_3_4() { return PiecewiseSpace(example_3_4_table(), {{1.0, 2.0}}, 2.0); }

/// Same finite part as example 3.4 with B = [1, 5/2].
inline PiecewiseSpace example_3_10() { return PiecewiseSpace(example_3_4_table(), {{1.0, 2.5}}, 2.0); }

/// x^(1/4) on the interval part, 1 on the finite part.
inline double example_3_4_map(double x) { return x >= 1.0 ? std::pow(x, 0.25) : 1.0; }

/// x^(1/6) on the interval part, 1 on the finite part.
inline double example_3_10_map(double x) { return x >= 1.0 ? std::pow(x, 1.0 / 6.0) : 1.0; }

inline AuxiliaryPair example_3_4_pair() { return make_pair("ln_plus_sqrt", "inv_1p", FamilyTag::F, 0.5); }

inline AuxiliaryPair example_3_10_pair() { return make_pair("ln_sqrt", "inv_2p", FamilyTag::Im, 0.5); }

inline ContractionSpec example_3_4_spec() { return {Variant::TypeF, 3.0, example_3_4_pair(), std::nullopt, std::nullopt}; }

inline ContractionSpec example_3_10_spec() {
    return {Variant::TypeIm, 3.0, example_3_10_pair(), std::nullopt, std::nullopt};
}

/// K(t, r, x) = c sin(x), c = e^{-1} s^{-(2+s)}, with lambda at the bound.
inline IntegralProblem sin_kernel_problem(double s = 3.0, std::size_t m = 65) {
    IntegralProblem p;
    p.a = 0.0;
    p.b = 1.0;
    p.s = s;
    p.m = m;
    p.lambda = std::exp(-s);
    const double c = std::exp(-1.0) * std::pow(s, -(2.0 + s));
    p.kernel = [c](double, double, double x) { return c * std::sin(x); };
    return p;
}

inline IterationConfig integral_config() { return {1e-10, 1'000'000, true}; }

struct FixtureInfo {
    std::string name;
    std::string description;
};

inline std::vector<FixtureInfo> list() {
    return {
        {"example-2.2", "A = {1/2,...,1/7} with explicit table plus B = [1,2], d = (x-y)^2 elsewhere; s = 3"},
        {"example-3.4", "A = {0,1/2,1/3,1/4} plus B = [1,2]; T = x^(1/4) on B, 1 on A; F = ln t + sqrt t, "
                        "phi = 1/(1+t), type F, s = 3"},
        {"example-3.10", "A = {0,1/2,1/3,1/4} plus B = [1,5/2]; T = x^(1/6) on B, 1 on A; F = ln sqrt t, "
                         "phi = 1/(2+t), type Im, s = 3"},
        {"integral-sin", "x(t) = lambda int_0^1 c sin(x(r)) dr, c = e^-1 3^-5, lambda = e^-3, s = 3, m = 65"},
    };
}

/// Fixture spaces by name; a "-finite" suffix selects the table part only.
inline std::optional<PiecewiseSpace> space_by_name(std::string_view name) {
    auto finite = [](FiniteSpace f) { return PiecewiseSpace(std::move(f), {}, 2.0); };
    if (name == "example-2.2")
        return example_2_2();
    if (name == "example-2.2-finite")
        return finite(example_2_2_table());
    if (name == "example-3.4")
        return example_3_4();
    if (name == "example-3.4-finite")
        return finite(example_3_4_table());
    if (name == "example-3.10")
        return example_3_10();
    if (name == "example-3.10-finite")
        return finite(example_3_4_table());
    return std::nullopt;
}

/// Built-in self-maps by name, else an expression in x.
inline SelfMap resolve_map(std::string_view spec) {
    if (spec == "example-3.4")
        return example_3_4_map;
    if (spec == "example-3.10")
        return example_3_10_map;
    if (spec == "identity")
        return [](double x) { return x; };
    if (spec == "double")
        return [](double x) { return 2.0 * x; };
    if (spec == "square")
        return [](double x) { return x * x; };
    if (spec == "shift")
        return [](double x) { return x + 1.0; };
    Expression expr(spec, {"x"});
    return [expr](double x) { return expr({x}); };
}

} // namespace contractum::fixtures
