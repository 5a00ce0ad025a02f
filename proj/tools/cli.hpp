#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contractum/contractum.hpp"
#include "contractum/report_json.hpp"
#include "contractum/trace_io.hpp"

#include "fixture_runs.hpp"

namespace contractum::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_malformed = 2 };

/// Emitted next to every machine-readable report.
struct RunManifest {
    std::string command;
    json inputs = json::object();
    std::optional<std::uint64_t> seed;
    std::string tool_version = contractum::version;
    double wall_clock_ms = 0.0;

    json to_json() const {
        json j{{"command", command}, {"inputs", inputs}, {"tool_version", tool_version},
               {"wall_clock_ms", wall_clock_ms}};
        j["seed"] = seed ? json(*seed) : json(nullptr);
        return j;
    }
};

namespace detail {

/// Appends "--key value" for every config entry whose flag is not already on
/// the command line. Booleans become bare flags; arrays are comma-joined.
inline std::vector<std::string> merge_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end())
        return args;
    if (std::next(it) == args.end())
        throw malformed_input("--config needs a file");
    std::filesystem::path path = *std::next(it);
    args.erase(it, std::next(it, 2));
    std::ifstream in(path);
    if (!in)
        throw malformed_input("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw malformed_input("invalid config JSON: " + std::string(e.what()));
    }
    if (!doc.is_object())
        throw malformed_input("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end())
            continue;
        if (value.is_boolean()) {
            if (value.get<bool>())
                args.push_back(flag);
            continue;
        }
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i)
                text += (i ? "," : "") + (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
        } else {
            text = value.dump();
        }
        args.push_back(flag);
        args.push_back(text);
    }
    return args;
}

inline std::array<double, 4> parse_betas(const std::string& text) {
    std::array<double, 4> b{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= 4)
            throw malformed_input("--betas takes exactly four values");
        b[k++] = parse_real(item, "beta");
    }
    if (k != 4)
        throw malformed_input("--betas takes exactly four values");
    return b;
}

/// A fixture name or a space file, as a domain the checkers can use.
using Domain = std::variant<FiniteSpace, PiecewiseSpace>;

inline Domain resolve_domain(const std::string& space, const std::string& domain_spec, double power) {
    if (!space.empty() && !domain_spec.empty())
        throw malformed_input("give either --space or --domain, not both");
    if (!domain_spec.empty()) {
        if (!domain_spec.starts_with("interval:"))
            throw malformed_input("domain must look like interval:a,b");
        auto body = domain_spec.substr(9);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw malformed_input("domain must look like interval:a,b");
        return PiecewiseSpace::interval(parse_real(body.substr(0, comma), "interval start"),
                                        parse_real(body.substr(comma + 1), "interval end"), power);
    }
    if (space.empty())
        throw malformed_input("a --space or --domain is required");
    if (auto fixture = fixtures::space_by_name(space))
        return *fixture;
    return load_space(space);
}

/// Finite view for the axiom checkers: fixtures are sampled on a grid.
inline FiniteSpace resolve_finite(const std::string& space, std::size_t grid) {
    if (auto fixture = fixtures::space_by_name(space))
        return fixture->sample(grid);
    return load_space(space);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i];
    return out;
}

template <std::size_t N>
std::string join(const std::array<std::string, N>& items) {
    return join(std::vector<std::string>(items.begin(), items.end()));
}

} // namespace detail

/// Runs one subcommand. Returns 0 on pass or convergence, 1 on a violation or
/// non-convergence, 2 on malformed input or usage errors.
inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    try {
        args = detail::merge_config(std::move(args));
    } catch (const malformed_input& e) {
        err << "error: " << e.what() << '\n';
        return exit_malformed;
    }

    CLI::App app{"contractum: generalized metric spaces, (phi, F)-contractions and Picard iteration"};
    app.require_subcommand(1);
    app.set_version_flag("--version", contractum::version);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON report on stdout");

    // validate-space
    std::string v_file;
    double v_s = 1.0;
    std::size_t v_grid = 64;
    std::uint64_t v_sampled = 0, v_seed = 0;
    auto* validate = app.add_subcommand("validate-space", "check the b-rectangular axioms for a coefficient s");
    validate->add_option("file", v_file, "space file (JSON or CSV) or fixture name")->required();
    validate->add_option("--s", v_s, "coefficient s >= 1")->required();
    validate->add_option("--grid", v_grid, "sample nodes per interval for fixture spaces");
    validate->add_option("--sampled", v_sampled, "random quadruples instead of exhaustive enumeration");
    validate->add_option("--seed", v_seed, "seed for --sampled");
    validate->add_flag("--json", as_json);

    // classify
    std::string c_file, c_require;
    std::size_t c_grid = 64;
    auto* classify = app.add_subcommand("classify", "triangle and quadrilateral checks with witnesses");
    classify->add_option("file", c_file, "space file or fixture name")->required();
    classify->add_option("--grid", c_grid);
    classify->add_option("--require", c_require, "exit 1 unless the space is 'metric' or 'rectangular'")
        ->check(CLI::IsMember({"metric", "rectangular"}));
    classify->add_flag("--json", as_json);

    // min-s
    std::string m_file;
    std::size_t m_grid = 64;
    std::uint64_t m_sampled = 0, m_seed = 0;
    auto* mins = app.add_subcommand("min-s", "smallest coefficient s for which the space is b-rectangular");
    mins->add_option("file", m_file, "space file or fixture name")->required();
    mins->add_option("--grid", m_grid);
    mins->add_option("--sampled", m_sampled);
    mins->add_option("--seed", m_seed);
    mins->add_flag("--json", as_json);

    // check
    std::string k_space, k_map, k_variant = "typeF", k_F = "ln", k_phi = "inv_1p", k_betas;
    double k_s = 1.0;
    std::optional<double> k_tau;
    std::size_t k_grid = 64;
    std::uint64_t k_sample = 0, k_seed = 0;
    bool k_verbose = false;
    auto* check = app.add_subcommand("check", "verify a contraction inequality for a self-map");
    check->add_option("--space", k_space, "space file or fixture name")->required();
    check->add_option("--map", k_map, "built-in map name or expression in x")->required();
    check->add_option("--variant", k_variant)->check(CLI::IsMember({"typeF", "typeIm", "kannan", "reich", "beta"}));
    check->add_option("--s", k_s, "coefficient s >= 1")->required();
    check->add_option("--F", k_F, "F name or expression in t");
    check->add_option("--phi", k_phi, "phi name or expression in t");
    check->add_option("--betas", k_betas, "b1,b2,b3,b4 for the beta variant");
    check->add_option("--tau", k_tau, "constant phi");
    check->add_option("--grid", k_grid, "sample nodes per interval for fixture spaces");
    check->add_option("--sample", k_sample, "random pairs instead of all pairs");
    check->add_option("--seed", k_seed);
    check->add_flag("--verbose", k_verbose, "include every pair verdict in the JSON report");
    check->add_flag("--json", as_json);

    // iterate
    std::string i_space, i_domain, i_map, i_x0, i_trace;
    double i_power = 1.0, i_tol = 1e-9, i_s = 1.0;
    std::size_t i_max = 1'000'000;
    auto* iter = app.add_subcommand("iterate", "Picard iteration with residual stopping");
    iter->add_option("--space", i_space, "space file or fixture name");
    iter->add_option("--domain", i_domain, "interval:a,b");
    iter->add_option("--power", i_power, "exponent p of |x-y|^p for --domain");
    iter->add_option("--map", i_map)->required();
    iter->add_option("--x0", i_x0)->required();
    iter->add_option("--tol", i_tol);
    iter->add_option("--max-iter", i_max);
    iter->add_option("--s", i_s, "coefficient for the log-scaled trace columns");
    iter->add_option("--trace", i_trace, "write the trace as CSV");
    iter->add_flag("--json", as_json);

    // solve-integral
    double g_a = 0.0, g_b = 1.0, g_lambda = 0.0, g_s = 3.0, g_tol = 1e-10;
    std::string g_kernel, g_x0 = "0", g_trace, g_output, g_rule = "trapezoid";
    std::size_t g_m = 65, g_max = 1'000'000;
    std::uint64_t g_check = 0, g_seed = 0;
    auto* integral = app.add_subcommand("solve-integral", "successive approximation for x = lambda int K(t,r,x(r)) dr");
    integral->add_option("--a", g_a)->required();
    integral->add_option("--b", g_b)->required();
    integral->add_option("--lambda", g_lambda)->required();
    integral->add_option("--s", g_s)->required();
    integral->add_option("--kernel", g_kernel, "expression in t, r, x")->required();
    integral->add_option("--m", g_m, "grid nodes");
    integral->add_option("--x0", g_x0, "constant or expression in t");
    integral->add_option("--tol", g_tol);
    integral->add_option("--max-iter", g_max);
    integral->add_option("--quadrature", g_rule)->check(CLI::IsMember({"trapezoid", "simpson"}));
    integral->add_option("--trace", g_trace);
    integral->add_option("--output", g_output, "write the solution CSV here instead of stdout");
    integral->add_option("--check-kernel", g_check, "sample the kernel condition n times");
    integral->add_option("--seed", g_seed);
    integral->add_flag("--json", as_json);

    // families
    std::string f_F = "ln", f_phi = "inv_1p", f_family = "F";
    std::optional<double> f_k;
    auto* families = app.add_subcommand("families", "sampled checks of an (F, phi) pair");
    families->add_option("--F", f_F);
    families->add_option("--phi", f_phi);
    families->add_option("--family", f_family)->check(CLI::IsMember({"F", "Im"}));
    families->add_option("--k", f_k);
    families->add_flag("--json", as_json);

    // examples
    std::string e_action, e_name, e_out;
    std::size_t e_grid = 64;
    auto* examples = app.add_subcommand("examples", "built-in fixtures: list, run <name>, export <name>");
    examples->add_option("action", e_action)->required()->check(CLI::IsMember({"list", "run", "export"}));
    examples->add_option("name", e_name);
    examples->add_option("--grid", e_grid, "interval sample nodes for export");
    examples->add_option("--out", e_out, "export destination (stdout when omitted)");
    examples->add_flag("--json", as_json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForVersion& e) {
        out << contractum::version << '\n';
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_malformed;
    }

    RunManifest manifest;
    auto emit = [&](json report) {
        manifest.wall_clock_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        report["manifest"] = manifest.to_json();
        out << report.dump(2) << '\n';
    };

    try {
        if (validate->parsed()) {
            manifest.command = "validate-space";
            manifest.inputs = {{"file", v_file}, {"s", v_s}, {"grid", v_grid}, {"sampled", v_sampled}};
            EnumerationOptions opts;
            if (v_sampled > 0) {
                opts.sampled = SampledMode{v_sampled, v_seed};
                manifest.seed = v_seed;
            }
            const auto space = detail::resolve_finite(v_file, v_grid);
            const auto report = validate_space(space, v_s, opts);
            if (as_json) {
                emit({{"report", to_json(report)}});
            } else {
                out << "space:        " << v_file << " (" << space.size() << " points)\n"
                    << "requested s:  " << format_real(v_s) << '\n'
                    << "minimal s:    " << format_real(report.minimal_s)
                    << (report.vacuous ? " (vacuous: fewer than 4 points)" : "")
                    << (report.sampled ? " (sampled lower bound)" : "") << '\n'
                    << "holds:        " << detail::yes_no(report.holds) << '\n';
                for (const auto& [a, b] : report.identity_failures)
                    out << "identity axiom fails: d(" << a << ", " << b << ") = 0\n";
                if (report.witness)
                    out << "witness:      (" << detail::join(report.witness->labels) << ") "
                        << format_real(report.witness->lhs) << " > " << format_real(v_s) << " * "
                        << format_real(report.witness->bracket) << '\n';
            }
            return report.holds ? exit_pass : exit_fail;
        }

        if (classify->parsed()) {
            manifest.command = "classify";
            manifest.inputs = {{"file", c_file}, {"grid", c_grid}, {"require", c_require}};
            const auto space = detail::resolve_finite(c_file, c_grid);
            const auto flags = classify_space(space);
            if (as_json) {
                emit({{"report", to_json(flags)}});
            } else {
                out << "space:          " << c_file << " (" << space.size() << " points)\n"
                    << "metric:         " << detail::yes_no(flags.is_metric) << '\n'
                    << "rectangular:    " << detail::yes_no(flags.is_rectangular) << '\n';
                if (flags.b_metric_s)
                    out << "b-metric s:     " << format_real(*flags.b_metric_s) << '\n';
                if (flags.b_rectangular_s)
                    out << "b-rect. s:      " << format_real(*flags.b_rectangular_s) << '\n';
                for (const auto& w : flags.witnesses)
                    out << w.kind << " witness: (" << detail::join(w.labels) << ") " << format_real(w.lhs) << " > "
                        << format_real(w.rhs) << '\n';
            }
            if (c_require == "metric")
                return flags.is_metric ? exit_pass : exit_fail;
            if (c_require == "rectangular")
                return flags.is_rectangular ? exit_pass : exit_fail;
            return exit_pass;
        }

        if (mins->parsed()) {
            manifest.command = "min-s";
            manifest.inputs = {{"file", m_file}, {"grid", m_grid}, {"sampled", m_sampled}};
            EnumerationOptions opts;
            if (m_sampled > 0) {
                opts.sampled = SampledMode{m_sampled, m_seed};
                manifest.seed = m_seed;
            }
            const auto space = detail::resolve_finite(m_file, m_grid);
            const auto estimate = minimal_coefficient(space, opts);
            if (as_json) {
                emit({{"report", to_json(estimate)}});
            } else {
                out << format_real(estimate.value);
                if (estimate.vacuous)
                    out << " (vacuous: fewer than 4 points)";
                if (estimate.sampled)
                    out << " (sampled lower bound)";
                out << '\n';
                if (estimate.argmax)
                    out << "attained at (" << detail::join(estimate.argmax->labels) << ")\n";
            }
            return exit_pass;
        }

        if (check->parsed()) {
            manifest.command = "check";
            manifest.inputs = {{"space", k_space}, {"map", k_map},   {"variant", k_variant}, {"s", k_s},
                               {"F", k_F},         {"phi", k_phi},   {"betas", k_betas},     {"grid", k_grid},
                               {"sample", k_sample}};
            if (k_tau)
                manifest.inputs["tau"] = *k_tau;
            ContractionSpec spec;
            spec.variant = parse_variant(k_variant);
            spec.s = k_s;
            spec.pair = make_pair(k_F, k_phi, spec.variant == Variant::TypeF ? FamilyTag::F : FamilyTag::Im);
            if (!k_betas.empty())
                spec.betas = detail::parse_betas(k_betas);
            spec.tau = k_tau;
            const auto T = fixtures::resolve_map(k_map);
            const auto domain = detail::resolve_domain(k_space, "", 1.0);
            ContractionReport report;
            if (k_sample > 0) {
                manifest.seed = k_seed;
                report = std::visit(
                    [&](const auto& space) {
                        using S = std::decay_t<decltype(space)>;
                        auto sampler = [&](Rng& rng) {
                            if constexpr (std::is_same_v<S, FiniteSpace>)
                                return space.value(static_cast<std::size_t>(rng.index(space.size())));
                            else
                                return space.draw(rng);
                        };
                        return verify_over_sample(spec, space, sampler, T, k_sample, k_seed);
                    },
                    domain);
            } else {
                report = std::visit(
                    [&](const auto& space) {
                        using S = std::decay_t<decltype(space)>;
                        if constexpr (std::is_same_v<S, FiniteSpace>)
                            return verify_over_finite(spec, space, T);
                        else
                            return verify_over_finite(spec, space, space.sample_points(k_grid), T);
                    },
                    domain);
            }
            if (as_json) {
                emit({{"report", to_json(report, k_verbose)}});
            } else {
                out << "variant:   " << k_variant << " (s = " << format_real(k_s) << ")\n"
                    << "pairs:     " << report.pairs << " (holds " << report.holds << ", vacuous " << report.vacuous
                    << ", violated " << report.violated << ")\n"
                    << "worst margin: " << format_real(report.worst_margin) << '\n'
                    << "result:    " << (report.pass() ? "pass" : "FAIL") << '\n';
                std::size_t shown = 0;
                for (const auto& v : report.violations) {
                    if (shown++ == 10) {
                        out << "  ... " << report.violations.size() - 10 << " more\n";
                        break;
                    }
                    out << "  violated (" << v.x_label << ", " << v.y_label << "): margin " << format_real(v.margin)
                        << '\n';
                }
            }
            return report.pass() ? exit_pass : exit_fail;
        }

        if (iter->parsed()) {
            manifest.command = "iterate";
            manifest.inputs = {{"space", i_space}, {"domain", i_domain}, {"power", i_power}, {"map", i_map},
                               {"x0", i_x0},       {"tol", i_tol},       {"max_iter", i_max}, {"s", i_s},
                               {"trace", i_trace}};
            const auto domain = detail::resolve_domain(i_space, i_domain, i_power);
            const auto T = fixtures::resolve_map(i_map);
            const double x0 = parse_real(i_x0, "x0");
            IterationConfig config{i_tol, i_max, true};
            auto result = std::visit(
                [&](const auto& space) {
                    if (!space.contains(x0))
                        throw malformed_input("x0 = " + format_real(x0) + " is not a point of the space");
                    auto map = [&](double x) {
                        double tx = T(x);
                        if (!std::isfinite(tx) || !space.contains(tx))
                            throw closure_error("T(" + space.label_of(x) + ") = " + format_real(tx) +
                                                " is outside the space");
                        return tx;
                    };
                    return iterate(map, x0, [&](double a, double b) { return space.distance(a, b); }, config);
                },
                domain);
            if (!i_trace.empty() && result.trace) {
                std::ofstream csv(i_trace);
                if (!csv)
                    throw malformed_input("cannot write trace file '" + i_trace + "'");
                write_trace_csv(csv, *result.trace, i_s);
            }
            std::optional<TraceAudit> audit;
            if (result.trace && result.trace->points.size() >= 3)
                audit = audit_trace(*result.trace, i_s);
            if (as_json) {
                json report{{"status", std::string(to_string(result.status))},
                            {"point", result.point},
                            {"residual", result.residual},
                            {"iterations", result.iterations}};
                report["audit"] = audit ? to_json(*audit) : json(nullptr);
                emit({{"report", report}});
            } else {
                out << "status:     " << to_string(result.status) << '\n'
                    << "point:      " << format_real(result.point) << '\n'
                    << "residual:   " << format_real(result.residual) << '\n'
                    << "iterations: " << result.iterations << '\n';
                if (audit)
                    out << "gap1 strictly decreasing: " << detail::yes_no(audit->gap1_strictly_decreasing) << '\n'
                        << "log-scaled gaps eventually decreasing: " << detail::yes_no(audit->scaled1_to_zero)
                        << '\n';
            }
            return result.converged() ? exit_pass : exit_fail;
        }

        if (integral->parsed()) {
            manifest.command = "solve-integral";
            manifest.inputs = {{"a", g_a},     {"b", g_b},       {"lambda", g_lambda}, {"s", g_s},
                               {"kernel", g_kernel}, {"m", g_m}, {"x0", g_x0},         {"tol", g_tol},
                               {"max_iter", g_max}, {"quadrature", g_rule}, {"check_kernel", g_check}};
            Expression kernel_expr(g_kernel, {"t", "r", "x"});
            IntegralProblem problem;
            problem.a = g_a;
            problem.b = g_b;
            problem.lambda = g_lambda;
            problem.s = g_s;
            problem.m = g_m;
            problem.rule = g_rule == "simpson" ? Quadrature::simpson : Quadrature::trapezoid;
            problem.kernel = [kernel_expr](double t, double r, double x) { return kernel_expr({t, r, x}); };
            problem.validate();

            const auto x0_fn = unary_function(g_x0);
            const GridFunction x0 = problem.sample(x0_fn);

            std::optional<KernelReport> kernel_report;
            if (g_check > 0) {
                manifest.seed = g_seed;
                kernel_report = verify_kernel_condition(problem, g_check, g_seed);
            }
            const auto solution = solve(problem, x0, {g_tol, g_max, true});
            for (const auto& w : solution.warnings)
                err << "warning: " << w << '\n';
            if (kernel_report && !kernel_report->pass())
                err << "warning: kernel condition violated on " << kernel_report->violations.size() << " of "
                    << kernel_report->samples << " samples (advisory)\n";

            if (!g_trace.empty() && solution.result.trace) {
                std::ofstream csv(g_trace);
                if (!csv)
                    throw malformed_input("cannot write trace file '" + g_trace + "'");
                write_trace_csv(csv, *solution.result.trace, g_s);
            }
            auto write_solution = [&](std::ostream& os) {
                os << "t,x\n";
                for (std::size_t i = 0; i < solution.nodes.size(); ++i)
                    os << format_real(solution.nodes[i]) << ',' << format_real(solution.result.point[i]) << '\n';
            };
            if (!g_output.empty()) {
                std::ofstream csv(g_output);
                if (!csv)
                    throw malformed_input("cannot write solution file '" + g_output + "'");
                write_solution(csv);
            }
            if (as_json) {
                json report{{"status", std::string(to_string(solution.result.status))},
                            {"residual", solution.result.residual},
                            {"iterations", solution.result.iterations},
                            {"lambda_bound", solution.lambda_bound},
                            {"lambda_bound_exceeded", solution.lambda_bound_exceeded},
                            {"warnings", solution.warnings},
                            {"t", solution.nodes},
                            {"x", solution.result.point.values}};
                report["kernel_check"] = kernel_report ? to_json(*kernel_report) : json(nullptr);
                emit({{"report", report}});
            } else if (g_output.empty()) {
                write_solution(out);
            } else {
                out << "status: " << to_string(solution.result.status) << ", iterations "
                    << solution.result.iterations << ", residual " << format_real(solution.result.residual) << '\n';
            }
            return solution.result.converged() ? exit_pass : exit_fail;
        }

        if (families->parsed()) {
            manifest.command = "families";
            manifest.inputs = {{"F", f_F}, {"phi", f_phi}, {"family", f_family}};
            auto pair = make_pair(f_F, f_phi, f_family == "Im" ? FamilyTag::Im : FamilyTag::F, f_k);
            const auto grid = default_family_grid();
            const auto inc = check_increasing(pair, grid);
            const auto pos = check_phi_positive(pair, grid);
            std::vector<double> decay;
            for (int n = 1; n <= 40; ++n)
                decay.push_back(std::ldexp(1.0, -n));
            const auto lim = check_limit_heuristics(pair, decay);
            std::optional<bool> continuous;
            if (pair.family == FamilyTag::Im)
                continuous = check_continuity_proxy(pair, 1e-3, 1e3);
            const bool ok = inc.increasing && pos.positive && (!continuous || *continuous);
            if (as_json) {
                json report{{"increasing", to_json(inc)}, {"phi_positive", to_json(pos)}, {"limits", to_json(lim)}};
                report["continuity_proxy"] = continuous ? json(*continuous) : json(nullptr);
                report["pass"] = ok;
                emit({{"report", report}});
            } else {
                out << "F strictly increasing on grid: " << detail::yes_no(inc.increasing) << '\n'
                    << "phi positive on grid:          " << detail::yes_no(pos.positive) << " (min "
                    << format_real(pos.minimum) << " at " << format_real(pos.argmin) << ")\n"
                    << "F(x_n) diverges downward:      " << detail::yes_no(lim.diverges_downward) << " (advisory)\n";
                if (lim.power_shrinks)
                    out << "x_n^k F(x_n) shrinks:          " << detail::yes_no(*lim.power_shrinks) << " (advisory)\n";
                if (continuous)
                    out << "continuity proxy:              " << detail::yes_no(*continuous) << " (advisory)\n";
            }
            return ok ? exit_pass : exit_fail;
        }

        if (examples->parsed()) {
            manifest.command = "examples " + e_action;
            manifest.inputs = {{"name", e_name}, {"grid", e_grid}};
            if (e_action == "list") {
                for (const auto& f : fixtures::list())
                    out << std::left << std::setw(14) << f.name << ' ' << f.description << '\n';
                return exit_pass;
            }
            if (e_name.empty())
                throw malformed_input("examples " + e_action + " needs a fixture name");
            if (e_action == "export") {
                auto space = fixtures::space_by_name(e_name);
                if (!space)
                    throw malformed_input("no fixture space named '" + e_name + "'");
                auto doc = space_to_json(space->sample(e_grid));
                if (e_out.empty()) {
                    out << doc.dump(2) << '\n';
                } else {
                    std::ofstream file(e_out);
                    if (!file)
                        throw malformed_input("cannot write '" + e_out + "'");
                    file << doc.dump(2) << '\n';
                }
                return exit_pass;
            }
            const auto run = run_fixture(e_name);
            if (as_json) {
                json checks = json::array();
                for (const auto& c : run.checks)
                    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
                emit({{"fixture", e_name}, {"pass", run.pass()}, {"checks", checks}});
            } else {
                for (const auto& c : run.checks)
                    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
                out << e_name << ": " << (run.pass() ? "pass" : "FAIL") << '\n';
            }
            return run.pass() ? exit_pass : exit_fail;
        }
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_fail;
    } catch (const contractum::error& e) {
        err << "error: " << e.what() << '\n';
        return exit_malformed;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_malformed;
    }
    err << app.help();
    return exit_malformed;
}

} // namespace contractum::cli
