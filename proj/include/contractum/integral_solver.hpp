#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "contractum/error.hpp"
#include "contractum/numeric_text.hpp"
#include "contractum/parallel.hpp"
#include "contractum/picard_engine.hpp"
#include "contractum/random.hpp"

namespace contractum {

/// Values of a function on the uniform grid t_0 = a, ..., t_{m-1} = b.
struct GridFunction {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    bool operator==(const GridFunction&) const = default;
};

inline std::uint64_t canonical_hash(const GridFunction& f) { return canonical_hash(f.values); }

inline std::string describe_point(const GridFunction& f) {
    return "grid function of " + std::to_string(f.size()) + " values";
}

/// sup_i |x_i - y_i|
inline double sup_distance(const GridFunction& x, const GridFunction& y) {
    if (x.size() != y.size())
        throw malformed_input("grid functions differ in length");
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max(d, std::fabs(x[i] - y[i]));
    return d;
}

enum class Quadrature { trapezoid, simpson };

using Kernel = std::function<double(double t, double r, double x)>;

/// x(t) = lambda * integral_a^b K(t, r, x(r)) dr, discretized on m nodes.
struct IntegralProblem {
    double a = 0.0;
    double b = 1.0;
    double lambda = 0.0;
    Kernel kernel;
    double s = 2.0;
    std::size_t m = 65;
    Quadrature rule = Quadrature::trapezoid;

    void validate() const {
        if (!(a < b))
            throw malformed_input("integration interval needs a < b");
        if (m < 2)
            throw malformed_input("grid needs at least two nodes");
        if (!(s > 1.0))
            throw malformed_input("metric exponent s must exceed 1");
        if (!kernel)
            throw malformed_input("integral problem has no kernel");
        if (rule == Quadrature::simpson && m % 2 == 0)
            throw malformed_input("Simpson quadrature needs an odd number of nodes");
    }

    double node(std::size_t i) const {
        return i + 1 == m ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1);
    }

    std::vector<double> nodes() const {
        std::vector<double> t(m);
        for (std::size_t i = 0; i < m; ++i)
            t[i] = node(i);
        return t;
    }

    std::vector<double> weights() const {
        const double h = (b - a) / static_cast<double>(m - 1);
        std::vector<double> w(m, h);
        if (rule == Quadrature::trapezoid) {
            w.front() = w.back() = h / 2.0;
        } else {
            for (std::size_t i = 0; i < m; ++i)
                w[i] = h / 3.0 * (i == 0 || i + 1 == m ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
        }
        return w;
    }

    /// The powered sup metric (max_t |x(t) - y(t)|)^s on grid nodes.
    double metric(const GridFunction& x, const GridFunction& y) const { return std::pow(sup_distance(x, y), s); }

    GridFunction sample(const std::function<double(double)>& f) const {
        GridFunction g;
        g.values.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            g.values.push_back(f(node(i)));
        return g;
    }
};

/// Largest |lambda| admitted by the sufficient condition |lambda| (b - a) <= e^{-s}.
inline double lambda_bound(double a, double b, double s) {
    if (!(a < b))
        throw malformed_input("lambda bound needs a < b");
    if (!(s > 1.0))
        throw malformed_input("lambda bound needs s > 1");
    return std::exp(-s) / (b - a);
}

/// t -> lambda * Q(K(t, ., x(.))), Q the problem's composite rule.
inline GridFunction apply_operator(const IntegralProblem& problem, const GridFunction& x) {
    problem.validate();
    if (x.size() != problem.m)
        throw malformed_input("grid function has " + std::to_string(x.size()) + " values, expected " +
                              std::to_string(problem.m));
    const auto t = problem.nodes();
    const auto w = problem.weights();
    const unsigned workers = problem.m >= 512 ? thread_budget() : 1u;
    auto values = parallel_map<double>(
        problem.m,
        [&](std::size_t i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < problem.m; ++j) {
                double k = problem.kernel(t[i], t[j], x[j]);
                if (std::isnan(k))
                    throw numeric_error("kernel returned NaN at (t, r, x) = (" + format_real(t[i]) + ", " +
                                        format_real(t[j]) + ", " + format_real(x[j]) + ")");
                acc += w[j] * k;
            }
            double v = problem.lambda * acc;
            if (std::isnan(v))
                throw numeric_error("operator value is NaN at t = " + format_real(t[i]));
            return v;
        },
        workers);
    return GridFunction{std::move(values)};
}

struct KernelSample {
    double t, r, x, y;
};

struct KernelViolation {
    KernelSample at;
    double lhs;    // |K(t,r,x) - K(t,r,y)|
    double bound;  // s^{-(2+s)} e^{-1/(|x-y|+1)} |x-y|
    double margin; // bound - lhs
};

/// Sampled check of the kernel Lipschitz-type condition. Advisory only.
struct KernelReport {
    std::uint64_t samples = 0;
    std::vector<KernelViolation> violations;
    double worst_margin = std::numeric_limits<double>::infinity();
    bool advisory = true;

    bool pass() const noexcept { return violations.empty(); }
};

inline double kernel_bound(double s, double gap) { return std::pow(s, -(2.0 + s)) * std::exp(-1.0 / (gap + 1.0)) * gap; }

template <class Sampler>
KernelReport verify_kernel_condition(const IntegralProblem& problem, Sampler&& sampler, std::uint64_t n,
                                     std::uint64_t seed) {
    problem.validate();
    if (n == 0)
        throw malformed_input("kernel check needs at least one sample");
    Rng rng(seed);
    KernelReport report;
    for (std::uint64_t k = 0; k < n; ++k) {
        KernelSample at = sampler(rng);
        if (at.x == at.y)
            throw malformed_input("kernel samples must have x != y");
        const double kx = problem.kernel(at.t, at.r, at.x);
        const double ky = problem.kernel(at.t, at.r, at.y);
        if (std::isnan(kx) || std::isnan(ky))
            throw numeric_error("kernel returned NaN at (t, r, x, y) = (" + format_real(at.t) + ", " +
                                format_real(at.r) + ", " + format_real(at.x) + ", " + format_real(at.y) + ")");
        const double lhs = std::fabs(kx - ky);
        const double bound = kernel_bound(problem.s, std::fabs(at.x - at.y));
        const double margin = bound - lhs;
        ++report.samples;
        report.worst_margin = std::min(report.worst_margin, margin);
        if (lhs > bound * (1.0 + 1e-12))
            report.violations.push_back({at, lhs, bound, margin});
    }
    return report;
}

/// Default sampler: t, r uniform on [a, b]; x, y uniform on [-amplitude, amplitude].
inline KernelReport verify_kernel_condition(const IntegralProblem& problem, std::uint64_t n, std::uint64_t seed,
                                            double amplitude = 10.0) {
    auto sampler = [&](Rng& rng) {
        KernelSample at{rng.uniform(problem.a, problem.b), rng.uniform(problem.a, problem.b),
                        rng.uniform(-amplitude, amplitude), 0.0};
        do {
            at.y = rng.uniform(-amplitude, amplitude);
        } while (at.y == at.x);
        return at;
    };
    return verify_kernel_condition(problem, sampler, n, seed);
}

struct IntegralSolution {
    FixedPointResult<GridFunction> result;
    std::vector<double> nodes;
    double lambda_bound = 0.0;
    bool lambda_bound_exceeded = false;
    std::vector<std::string> warnings;
};

/// Picard iteration of the discretized operator in the powered sup metric.
/// |lambda| above the sufficient bound is flagged, not refused.
inline IntegralSolution solve(const IntegralProblem& problem, GridFunction x0, const IterationConfig& config = {}) {
    problem.validate();
    if (x0.size() != problem.m)
        throw malformed_input("initial guess has " + std::to_string(x0.size()) + " values, expected " +
                              std::to_string(problem.m));
    IntegralSolution solution;
    solution.nodes = problem.nodes();
    solution.lambda_bound = lambda_bound(problem.a, problem.b, problem.s);
    if (std::fabs(problem.lambda) > solution.lambda_bound) {
        solution.lambda_bound_exceeded = true;
        solution.warnings.push_back("|lambda| = " + format_real(std::fabs(problem.lambda)) +
                                    " exceeds the sufficient bound " + format_real(solution.lambda_bound) +
                                    "; uniqueness is not guaranteed");
    }
    solution.result = iterate(
        [&](const GridFunction& x) { return apply_operator(problem, x); }, std::move(x0),
        [&](const GridFunction& x, const GridFunction& y) { return problem.metric(x, y); }, config);
    return solution;
}

} // namespace contractum
