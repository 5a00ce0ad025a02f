#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "contractum/contraction_checker.hpp"
#include "contractum/error.hpp"
#include "contractum/function_families.hpp"
#include "contractum/numeric_text.hpp"

namespace contractum {

struct IterationConfig {
    double tol = 1e-9;                // residual threshold on d(x_n, T x_n)
    std::size_t max_iter = 1'000'000;
    bool record_trace = true;

    void validate() const {
        if (!(tol > 0.0))
            throw malformed_input("tolerance must be positive");
        if (max_iter < 1)
            throw malformed_input("max_iter must be at least 1");
    }
};

enum class IterationStatus { converged, max_iter_exceeded, cycle_detected };

inline std::string_view to_string(IterationStatus s) {
    switch (s) {
    case IterationStatus::converged: return "converged";
    case IterationStatus::max_iter_exceeded: return "max_iter_exceeded";
    default: return "cycle_detected";
    }
}

/// The recorded orbit x_0, x_1 = T x_0, ... and its gap sequences.
///
/// gap1[n] = d(x_n, x_{n+1}) and gap2[n] = d(x_n, x_{n+2}). The s^n-scaled
/// sequences are kept in log space, n ln s + ln gap, since s^n overflows long
/// before the gaps underflow; a zero gap maps to -inf.
template <class Point>
struct IterationTrace {
    std::vector<Point> points;
    std::vector<double> gap1;
    std::vector<double> gap2;
    std::vector<double> log_scaled1;
    std::vector<double> log_scaled2;
    double s = 1.0;

    void rescale(double coefficient) {
        s = coefficient;
        const double ls = std::log(coefficient);
        auto scaled = [ls](const std::vector<double>& gaps) {
            std::vector<double> out(gaps.size());
            for (std::size_t n = 0; n < gaps.size(); ++n)
                out[n] = gaps[n] > 0.0 ? static_cast<double>(n) * ls + std::log(gaps[n])
                                       : -std::numeric_limits<double>::infinity();
            return out;
        };
        log_scaled1 = scaled(gap1);
        log_scaled2 = scaled(gap2);
    }
};

template <class Point>
struct FixedPointResult {
    Point point{};
    double residual = 0.0;
    std::size_t iterations = 0;
    IterationStatus status = IterationStatus::max_iter_exceeded;
    std::optional<IterationTrace<Point>> trace;

    bool converged() const noexcept { return status == IterationStatus::converged; }
};

// Canonical encodings used for exact-revisit detection.
inline std::uint64_t canonical_hash(double x) {
    if (x == 0.0)
        x = 0.0;  // fold -0 onto +0
    std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    bits ^= bits >> 33;
    bits *= 0xff51afd7ed558ccdULL;
    bits ^= bits >> 33;
    return bits;
}

inline std::uint64_t canonical_hash(const std::vector<double>& xs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double x : xs) {
        h ^= canonical_hash(x);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string describe_point(double x) { return format_real(x); }

/// Plain Picard iteration x_{n+1} = T x_n, stopped on the residual d(x_n, T x_n).
///
/// A converged result returns T x_n. An exact revisit of an earlier iterate
/// while the residual is still above tol reports cycle_detected.
template <class Point, class Map, class Metric>
FixedPointResult<Point> iterate(Map&& T, Point x0, Metric&& metric, const IterationConfig& config = {}) {
    config.validate();
    auto measure = [&](const Point& a, const Point& b) {
        double d = metric(a, b);
        if (std::isnan(d) || d < 0.0)
            throw numeric_error("metric returned " + format_real(d) + " for pair (" + describe_point(a) + ", " +
                                describe_point(b) + ")");
        return d;
    };

    FixedPointResult<Point> result;
    IterationTrace<Point> trace;
    std::unordered_set<std::uint64_t> seen;
    seen.insert(canonical_hash(x0));
    if (config.record_trace)
        trace.points.push_back(x0);

    Point x = std::move(x0);
    for (std::size_t n = 0;; ++n) {
        Point tx = T(x);
        const double r = measure(x, tx);
        if (config.record_trace) {
            trace.points.push_back(tx);
            trace.gap1.push_back(r);
        }
        if (r <= config.tol) {
            result.status = IterationStatus::converged;
            result.iterations = n;
            result.residual = r;
            result.point = std::move(tx);
            break;
        }
        if (!seen.insert(canonical_hash(tx)).second) {
            result.status = IterationStatus::cycle_detected;
            result.iterations = n + 1;
            result.residual = r;
            result.point = std::move(tx);
            break;
        }
        if (n + 1 >= config.max_iter) {
            result.status = IterationStatus::max_iter_exceeded;
            result.iterations = n + 1;
            result.residual = r;
            result.point = std::move(tx);
            break;
        }
        x = std::move(tx);
    }

    if (config.record_trace) {
        for (std::size_t n = 0; n + 2 < trace.points.size(); ++n)
            trace.gap2.push_back(measure(trace.points[n], trace.points[n + 2]));
        trace.rescale(1.0);
        result.trace = std::move(trace);
    }
    return result;
}

/// True when values[first..] is strictly decreasing over its finite tail
/// (second half, at least two entries) and ends below its finite maximum.
/// Fewer than two finite entries pass trivially.
inline bool eventually_decreasing(const std::vector<double>& values) {
    std::vector<double> finite;
    for (double v : values)
        if (std::isfinite(v))
            finite.push_back(v);
    if (finite.size() < 2)
        return true;
    std::size_t start = std::min(finite.size() / 2, finite.size() - 2);
    for (std::size_t i = start; i + 1 < finite.size(); ++i)
        if (!(finite[i + 1] < finite[i]))
            return false;
    return finite.back() < *std::max_element(finite.begin(), finite.end());
}

struct TraceAudit {
    bool gap1_strictly_decreasing = true;
    std::optional<std::size_t> first_increase;  // n with gap1[n+1] >= gap1[n] > 0
    bool scaled1_to_zero = true;                // log-space s^n d(x_n, x_{n+1}) eventually decreasing
    bool scaled2_to_zero = true;
    std::optional<double> tail_rate;            // gap1[n+1] / gap1[n] at the last positive pair
    std::vector<double> log_scaled1;
    std::vector<double> log_scaled2;
};

template <class Point>
TraceAudit audit_trace(const IterationTrace<Point>& source, double s) {
    if (source.points.size() < 3)
        throw insufficient_data("trace has " + std::to_string(source.points.size()) +
                                " points; at least 3 are needed");
    if (!(s >= 1.0))
        throw malformed_input("coefficient s must be >= 1");
    IterationTrace<Point> trace = source;
    trace.rescale(s);

    TraceAudit audit;
    const auto& g = trace.gap1;
    for (std::size_t n = 0; n + 1 < g.size(); ++n) {
        // A zero gap ends the orbit exactly; nothing after it needs to shrink.
        if (g[n + 1] > 0.0 && !(g[n + 1] < g[n])) {
            audit.gap1_strictly_decreasing = false;
            audit.first_increase = n;
            break;
        }
    }
    for (std::size_t n = g.size(); n-- > 1;) {
        if (g[n] > 0.0 && g[n - 1] > 0.0) {
            audit.tail_rate = g[n] / g[n - 1];
            break;
        }
    }
    audit.scaled1_to_zero = eventually_decreasing(trace.log_scaled1);
    audit.scaled2_to_zero = eventually_decreasing(trace.log_scaled2);
    audit.log_scaled1 = std::move(trace.log_scaled1);
    audit.log_scaled2 = std::move(trace.log_scaled2);
    return audit;
}

/// Rescaling implication checked on a concrete gap sequence alpha_n = gap1[n]:
/// if phi(a_n) + F(s a_{n+1}) <= F(a_n) for all recorded n >= 1, then
/// phi(a_n) + F(s^n a_{n+1}) <= F(s^{n-1} a_n) must also hold for all of them.
struct RescalingReport {
    bool premise_holds = true;
    bool conclusion_holds = true;
    std::size_t terms = 0;
    std::optional<std::size_t> first_failure;

    bool implication_holds() const noexcept { return !premise_holds || conclusion_holds; }
};

template <class Point>
RescalingReport check_rescaling_condition(const IterationTrace<Point>& trace, const AuxiliaryPair& pair, double s) {
    RescalingReport report;
    const auto& a = trace.gap1;
    const double ls = std::log(s);
    for (std::size_t n = 1; n + 1 < a.size(); ++n) {
        if (!(a[n] > 0.0) || !(a[n + 1] > 0.0))
            break;
        ++report.terms;
        if (pair.phi(a[n]) + pair.F(s * a[n + 1]) > pair.F(a[n]) + inequality_tolerance)
            report.premise_holds = false;
        const double lhs = pair.phi(a[n]) + pair.F(std::exp(static_cast<double>(n) * ls + std::log(a[n + 1])));
        const double rhs = pair.F(std::exp(static_cast<double>(n - 1) * ls + std::log(a[n])));
        if (lhs > rhs + inequality_tolerance && report.conclusion_holds) {
            report.conclusion_holds = false;
            report.first_failure = n;
        }
    }
    return report;
}

enum class UniquenessStatus { unique, distinct, inconclusive };

inline std::string_view to_string(UniquenessStatus s) {
    switch (s) {
    case UniquenessStatus::unique: return "unique";
    case UniquenessStatus::distinct: return "distinct";
    default: return "inconclusive";
    }
}

template <class Point>
struct UniquenessReport {
    UniquenessStatus status = UniquenessStatus::inconclusive;
    std::vector<FixedPointResult<Point>> runs;
    std::vector<std::vector<double>> distances;

    /// Only meaningful when every run converged.
    std::optional<bool> unique() const {
        if (status == UniquenessStatus::inconclusive)
            return std::nullopt;
        return status == UniquenessStatus::unique;
    }
};

/// Iterates from every start; the limits must agree pairwise within 10 tol.
template <class Point, class Map, class Metric>
UniquenessReport<Point> verify_uniqueness(Map&& T, const std::vector<Point>& starts, Metric&& metric,
                                          const IterationConfig& config = {}) {
    if (starts.empty())
        throw malformed_input("uniqueness check needs at least one start");
    UniquenessReport<Point> report;
    IterationConfig quiet = config;
    quiet.record_trace = false;
    for (const auto& start : starts)
        report.runs.push_back(iterate(T, start, metric, quiet));

    if (!std::all_of(report.runs.begin(), report.runs.end(), [](const auto& r) { return r.converged(); })) {
        report.status = UniquenessStatus::inconclusive;
        return report;
    }
    const std::size_t k = report.runs.size();
    report.distances.assign(k, std::vector<double>(k, 0.0));
    bool agree = true;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            double d = metric(report.runs[i].point, report.runs[j].point);
            report.distances[i][j] = report.distances[j][i] = d;
            agree = agree && d <= 10.0 * config.tol;
        }
    report.status = agree ? UniquenessStatus::unique : UniquenessStatus::distinct;
    return report;
}

} // namespace contractum
