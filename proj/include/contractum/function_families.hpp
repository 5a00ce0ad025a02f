#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contractum/error.hpp"
#include "contractum/expression.hpp"
#include "contractum/numeric_text.hpp"

namespace contractum {

using RealFunction = std::function<double(double)>;

/// Which family the caller declares F to belong to. Membership is declared,
/// never proven: only the mechanically checkable conditions are sampled.
enum class FamilyTag {
    F,   // strictly increasing, F(x_n) -> -inf iff x_n -> 0, x^k F(x) -> 0
    Im,  // strictly increasing, same limit condition, continuous
};

inline std::string_view to_string(FamilyTag tag) { return tag == FamilyTag::F ? "F" : "Im"; }

/// Reentrant mappings required: pairs are shared across worker threads.
struct AuxiliaryPair {
    RealFunction F;
    RealFunction phi;
    FamilyTag family = FamilyTag::F;
    std::optional<double> k_exponent;
    std::string description;
    std::string F_name;
    std::string phi_name;
};

struct IncreasingReport {
    bool increasing = true;
    std::optional<std::pair<double, double>> violation;  // consecutive abscissae with F(a) >= F(b)
};

struct PositivityReport {
    bool positive = true;
    double minimum = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
};

/// Sampled evidence about the limit conditions. Finitely many evaluations can
/// never certify a limit, so `advisory` is always true.
struct LimitReport {
    bool diverges_downward = false;
    std::optional<bool> power_shrinks;  // only when a k exponent is declared
    bool advisory = true;
    std::vector<double> F_values;
    std::vector<double> power_values;
    std::string note;
};

inline constexpr double phi_positivity_tolerance = 1e-15;

namespace detail {

inline void require_positive_grid(const std::vector<double>& grid) {
    for (double g : grid)
        if (!(g > 0.0))
            throw domain_error("grid entry " + format_real(g) + " is not a positive real");
}

inline void require_increasing_grid(const std::vector<double>& grid) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw malformed_input("grid is not strictly increasing at index " + std::to_string(i));
}

} // namespace detail

/// `count` log-spaced points from lo to hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw malformed_input("log grid needs 0 < lo < hi and at least two points");
    std::vector<double> grid(count);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

/// 64 log-spaced points on [1e-6, 1e3].
inline std::vector<double> default_family_grid() { return log_grid(1e-6, 1e3, 64); }

inline IncreasingReport check_increasing(const AuxiliaryPair& pair, const std::vector<double>& grid) {
    detail::require_positive_grid(grid);
    detail::require_increasing_grid(grid);
    IncreasingReport report;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(pair.F(grid[i]) < pair.F(grid[i + 1]))) {
            report.increasing = false;
            report.violation = std::make_pair(grid[i], grid[i + 1]);
            break;
        }
    }
    return report;
}

inline PositivityReport check_phi_positive(const AuxiliaryPair& pair, const std::vector<double>& grid) {
    detail::require_positive_grid(grid);
    PositivityReport report;
    for (double g : grid) {
        double v = pair.phi(g);
        if (std::isnan(v) || v < report.minimum) {
            report.minimum = v;
            report.argmin = g;
            if (std::isnan(v))
                break;
        }
    }
    report.positive = !grid.empty() && report.minimum > phi_positivity_tolerance;
    return report;
}

/// Downward divergence of F(x_n) and shrinkage of x_n^k F(x_n) along a
/// sequence decreasing to 0.
///
/// Divergence: F(x_n) strictly decreasing with a final drop below the first
/// value by at least one unit. Shrinkage: |x_n^k F(x_n)| strictly decreasing
/// over the second half of the sequence and ending below its peak.
inline LimitReport check_limit_heuristics(const AuxiliaryPair& pair, const std::vector<double>& decay) {
    if (decay.size() < 8)
        throw malformed_input("decay sequence needs at least 8 terms");
    detail::require_positive_grid(decay);
    for (std::size_t i = 0; i + 1 < decay.size(); ++i)
        if (!(decay[i + 1] < decay[i]))
            throw malformed_input("decay sequence is not strictly decreasing at index " + std::to_string(i));

    LimitReport report;
    for (double x : decay)
        report.F_values.push_back(pair.F(x));

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < report.F_values.size(); ++i)
        monotone = monotone && report.F_values[i + 1] < report.F_values[i];
    report.diverges_downward = monotone && report.F_values.back() <= report.F_values.front() - 1.0;

    if (pair.k_exponent) {
        const double k = *pair.k_exponent;
        for (std::size_t i = 0; i < decay.size(); ++i)
            report.power_values.push_back(std::fabs(std::pow(decay[i], k) * report.F_values[i]));
        const std::size_t start = report.power_values.size() / 2;
        bool shrinking = true;
        double peak = 0.0;
        for (std::size_t i = 0; i < report.power_values.size(); ++i)
            peak = std::max(peak, report.power_values[i]);
        for (std::size_t i = start; i + 1 < report.power_values.size(); ++i)
            shrinking = shrinking && report.power_values[i + 1] < report.power_values[i];
        report.power_shrinks = shrinking && report.power_values.back() < peak;
    }
    report.note = "advisory: finitely many samples cannot certify a limit";
    return report;
}

/// Continuity proxy for the Im family: on log-spaced grids over [lo, hi],
/// the largest jump between neighbouring samples must shrink by at least a
/// quarter with each doubling of the grid. A jump discontinuity keeps the
/// largest jump bounded away from zero and fails.
inline bool check_continuity_proxy(const AuxiliaryPair& pair, double lo, double hi, std::size_t levels = 4,
                                   std::size_t base = 16) {
    if (!(lo > 0.0) || !(hi > lo))
        throw domain_error("continuity proxy needs 0 < lo < hi");
    double previous = std::numeric_limits<double>::infinity();
    std::size_t count = base;
    for (std::size_t level = 0; level < levels; ++level, count *= 2) {
        const auto grid = log_grid(lo, hi, count + 1);
        double jump = 0.0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double gap = std::fabs(pair.F(grid[i + 1]) - pair.F(grid[i]));
            if (!std::isfinite(gap))
                return false;
            jump = std::max(jump, gap);
        }
        if (!(jump <= 0.75 * previous))
            return false;
        previous = jump;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Registries

inline std::optional<RealFunction> builtin_F(std::string_view name) {
    if (name == "ln")
        return RealFunction([](double t) { return std::log(t); });
    if (name == "ln_sqrt")
        return RealFunction([](double t) { return std::log(std::sqrt(t)); });
    if (name == "ln_plus_sqrt")
        return RealFunction([](double t) { return std::log(t) + std::sqrt(t); });
    if (name == "x_plus_ln")
        return RealFunction([](double t) { return t + std::log(t); });
    return std::nullopt;
}

inline std::optional<RealFunction> builtin_phi(std::string_view name) {
    if (name == "inv_1p")
        return RealFunction([](double t) { return 1.0 / (1.0 + t); });
    if (name == "inv_2p")
        return RealFunction([](double t) { return 1.0 / (2.0 + t); });
    if (name.starts_with("const_tau(") && name.ends_with(")")) {
        double tau = parse_real(name.substr(10, name.size() - 11), "tau");
        if (!(tau > 0.0))
            throw malformed_input("const_tau needs a positive constant");
        return RealFunction([tau](double) { return tau; });
    }
    return std::nullopt;
}

/// Built-in name or an expression in t (or x).
inline RealFunction resolve_F(std::string_view spec) {
    if (auto f = builtin_F(spec))
        return *f;
    return unary_function(spec);
}

inline RealFunction resolve_phi(std::string_view spec) {
    if (auto f = builtin_phi(spec))
        return *f;
    return unary_function(spec);
}

inline AuxiliaryPair make_pair(std::string_view F_spec, std::string_view phi_spec, FamilyTag family = FamilyTag::F,
                               std::optional<double> k = std::nullopt) {
    AuxiliaryPair pair;
    pair.F = resolve_F(F_spec);
    pair.phi = resolve_phi(phi_spec);
    pair.family = family;
    pair.k_exponent = k;
    pair.F_name = std::string(F_spec);
    pair.phi_name = std::string(phi_spec);
    pair.description = "F = " + pair.F_name + ", phi = " + pair.phi_name;
    if (k && !(*k > 0.0 && *k < 1.0))
        throw malformed_input("k exponent must lie in (0, 1)");
    return pair;
}

} // namespace contractum
