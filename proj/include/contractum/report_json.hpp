#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "contractum/contraction_checker.hpp"
#include "contractum/function_families.hpp"
#include "contractum/integral_solver.hpp"
#include "contractum/metric_spaces.hpp"
#include "contractum/picard_engine.hpp"

namespace contractum {

using nlohmann::json;

/// JSON has no infinities; they are written as strings.
inline json real_json(double v) {
    if (std::isfinite(v))
        return v;
    return format_real(v);
}

inline json to_json(const QuadrupleWitness& w) {
    return {{"points", w.labels}, {"lhs", real_json(w.lhs)}, {"bracket", real_json(w.bracket)},
            {"ratio", real_json(w.ratio)}};
}

inline json to_json(const CoefficientReport& r) {
    json j{{"requested_s", r.requested_s},
           {"holds", r.holds},
           {"minimal_s", real_json(r.minimal_s)},
           {"vacuous", r.vacuous},
           {"sampled", r.sampled},
           {"quadruples_checked", r.quadruples_checked}};
    j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    auto failures = json::array();
    for (const auto& [a, b] : r.identity_failures)
        failures.push_back({a, b});
    j["identity_failures"] = failures;
    return j;
}

inline json to_json(const TupleWitness& w) {
    return {{"kind", w.kind}, {"points", w.labels}, {"lhs", real_json(w.lhs)}, {"rhs", real_json(w.rhs)}};
}

inline json to_json(const TaxonomyFlags& f) {
    json j{{"is_metric", f.is_metric}, {"is_rectangular", f.is_rectangular}};
    j["b_metric_s"] = f.b_metric_s ? real_json(*f.b_metric_s) : json(nullptr);
    j["b_rectangular_s"] = f.b_rectangular_s ? real_json(*f.b_rectangular_s) : json(nullptr);
    auto ws = json::array();
    for (const auto& w : f.witnesses)
        ws.push_back(to_json(w));
    j["witnesses"] = ws;
    return j;
}

inline json to_json(const CoefficientEstimate& e) {
    json j{{"value", real_json(e.value)}, {"vacuous", e.vacuous}, {"sampled", e.sampled}};
    j["argmax"] = e.argmax ? to_json(*e.argmax) : json(nullptr);
    return j;
}

inline json to_json(const PairVerdict& v) {
    return {{"x", v.x_label},         {"y", v.y_label},         {"status", std::string(to_string(v.status))},
            {"lhs", real_json(v.lhs)}, {"rhs", real_json(v.rhs)}, {"margin", real_json(v.margin)}};
}

inline json to_json(const ContractionReport& r, bool verbose = false) {
    json j{{"pass", r.pass()},   {"pairs", r.pairs},       {"holds", r.holds},
           {"vacuous", r.vacuous}, {"violated", r.violated}, {"worst_margin", real_json(r.worst_margin)}};
    auto vs = json::array();
    for (const auto& v : r.violations)
        vs.push_back(to_json(v));
    j["violations"] = vs;
    if (verbose) {
        auto all = json::array();
        for (const auto& v : r.verdicts)
            all.push_back(to_json(v));
        j["verdicts"] = all;
    }
    return j;
}

inline json to_json(const TraceAudit& a) {
    json j{{"gap1_strictly_decreasing", a.gap1_strictly_decreasing},
           {"scaled1_to_zero", a.scaled1_to_zero},
           {"scaled2_to_zero", a.scaled2_to_zero}};
    j["first_increase"] = a.first_increase ? json(*a.first_increase) : json(nullptr);
    j["tail_rate"] = a.tail_rate ? real_json(*a.tail_rate) : json(nullptr);
    return j;
}

inline json to_json(const KernelReport& r) {
    json j{{"samples", r.samples}, {"pass", r.pass()}, {"advisory", r.advisory},
           {"worst_margin", real_json(r.worst_margin)}, {"violations", r.violations.size()}};
    if (!r.violations.empty()) {
        const auto& v = r.violations.front();
        j["first_violation"] = {{"t", v.at.t}, {"r", v.at.r}, {"x", v.at.x}, {"y", v.at.y},
                                {"lhs", v.lhs}, {"bound", v.bound}};
    }
    return j;
}

inline json to_json(const IncreasingReport& r) {
    json j{{"increasing", r.increasing}};
    j["violation"] = r.violation ? json{r.violation->first, r.violation->second} : json(nullptr);
    return j;
}

inline json to_json(const PositivityReport& r) {
    return {{"positive", r.positive}, {"minimum", real_json(r.minimum)}, {"argmin", r.argmin}};
}

inline json to_json(const LimitReport& r) {
    json j{{"diverges_downward", r.diverges_downward}, {"advisory", r.advisory}, {"note", r.note}};
    j["power_shrinks"] = r.power_shrinks ? json(*r.power_shrinks) : json(nullptr);
    return j;
}

} // namespace contractum
