#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "contractum/contractum.hpp"

namespace contractum::cli {

struct FixtureCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct FixtureRun {
    std::vector<FixtureCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return !checks.empty();
    }
};

namespace detail {

inline void add(FixtureRun& run, std::string name, bool passed, std::string detail) {
    run.checks.push_back({std::move(name), passed, std::move(detail)});
}

template <class Space>
void iterate_from(FixtureRun& run, const Space& space, const SelfMap& T, const std::vector<double>& starts, double s) {
    auto metric = [&](double a, double b) { return space.distance(a, b); };
    for (double x0 : starts) {
        const auto r = iterate(T, x0, metric, {1e-9, 1'000'000, true});
        const auto audit = audit_trace(*r.trace, s);
        add(run, "iterate from " + format_real(x0),
            r.converged() && metric(r.point, 1.0) <= 10 * 1e-9 && audit.gap1_strictly_decreasing &&
                audit.scaled1_to_zero,
            std::string(to_string(r.status)) + " to " + format_real(r.point) + " in " +
                std::to_string(r.iterations) + " steps, residual " + format_real(r.residual));
    }
    const auto u = verify_uniqueness(T, starts, metric, {1e-9, 1'000'000, false});
    add(run, "uniqueness", u.unique().value_or(false), std::string(to_string(u.status)));
}

} // namespace detail

/// End-to-end reproduction of a named fixture's published claims.
inline FixtureRun run_fixture(const std::string& name) {
    FixtureRun run;
    if (name == "example-2.2") {
        const auto space = fixtures::example_2_2().sample(64);
        const auto report = validate_space(space, 3.0);
        detail::add(run, "b-rectangular with s = 3", report.holds,
                    std::to_string(report.quadruples_checked) + " quadruples, minimal s " +
                        format_real(report.minimal_s));
        return run;
    }
    if (name == "example-3.4") {
        const auto flags = classify_space(fixtures::example_3_4_table());
        std::string witnesses;
        for (const auto& w : flags.witnesses)
            witnesses += w.kind + " (" + [&] {
                std::string l;
                for (std::size_t i = 0; i < w.labels.size(); ++i)
                    l += (i ? ", " : "") + w.labels[i];
                return l;
            }() + ") " + format_real(w.lhs) + " > " + format_real(w.rhs) + "; ";
        detail::add(run, "finite part is neither metric nor rectangular", !flags.is_metric && !flags.is_rectangular,
                    witnesses);
        const auto space = fixtures::example_3_4();
        const auto report = verify_over_finite(fixtures::example_3_4_spec(), space, space.sample_points(32),
                                               fixtures::example_3_4_map);
        detail::add(run, "type F contraction, s = 3", report.pass(),
                    std::to_string(report.pairs) + " pairs, worst margin " + format_real(report.worst_margin));
        detail::iterate_from(run, space, fixtures::example_3_4_map, {2.0, 1.7, 0.25}, 3.0);
        return run;
    }
    if (name == "example-3.10") {
        const auto space = fixtures::example_3_10();
        const auto report = verify_over_sample(
            fixtures::example_3_10_spec(), space, [&](Rng& rng) { return space.draw(rng); },
            fixtures::example_3_10_map, 10'000, 0);
        detail::add(run, "type Im contraction, s = 3", report.pass(),
                    std::to_string(report.pairs) + " sampled pairs, worst margin " +
                        format_real(report.worst_margin));
        detail::iterate_from(run, space, fixtures::example_3_10_map, {2.5, 1.5, 0.0}, 3.0);
        return run;
    }
    if (name == "integral-sin") {
        const auto problem = fixtures::sin_kernel_problem();
        const auto config = fixtures::integral_config();
        const auto a = solve(problem, problem.sample([](double) { return 0.5; }), config);
        const auto b = solve(problem, problem.sample([](double) { return -1.0; }), config);
        const bool converged = a.result.converged() && b.result.converged();
        const double gap = sup_distance(a.result.point, b.result.point);
        detail::add(run, "converges from x0 = 0.5 and x0 = -1", converged,
                    std::to_string(a.result.iterations) + " and " + std::to_string(b.result.iterations) +
                        " steps");
        detail::add(run, "limits agree", converged && problem.metric(a.result.point, b.result.point) <= 10 * config.tol,
                    "sup gap " + format_real(gap));
        detail::add(run, "lambda within the sufficient bound", !a.lambda_bound_exceeded,
                    "lambda " + format_real(problem.lambda) + ", bound " + format_real(a.lambda_bound));
        return run;
    }
    throw malformed_input("no fixture named '" + name + "' (see 'examples list')");
}

} // namespace contractum::cli
