#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "contractum/error.hpp"
#include "contractum/function_families.hpp"
#include "contractum/metric_spaces.hpp"
#include "contractum/numeric_text.hpp"
#include "contractum/parallel.hpp"
#include "contractum/random.hpp"

namespace contractum {

/// The inequality being tested. Every variant is guarded by d(Tx,Ty) > 0.
///   TypeF      F(s d(Tx,Ty))   + phi(d(x,y)) <= F(d(x,y))
///   TypeIm     F(s^2 d(Tx,Ty)) + phi(d(x,y)) <= F(M(x,y))
///   Kannan     F(s^2 d(Tx,Ty)) + phi(d(x,y)) <= F((d(x,Tx) + d(y,Ty)) / 2)
///   Reich      F(s^2 d(Tx,Ty)) + phi(d(x,y)) <= F((d(x,y) + d(x,Tx) + d(y,Ty)) / 3)
///   BetaCombo  F(s^2 d(Tx,Ty)) + phi(d(x,y)) <= F(b1 d(x,y) + b2 d(Tx,x) + b3 d(Ty,y) + b4 d(y,Tx))
enum class Variant { TypeF, TypeIm, Kannan, Reich, BetaCombo };

inline std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::TypeF: return "typeF";
    case Variant::TypeIm: return "typeIm";
    case Variant::Kannan: return "kannan";
    case Variant::Reich: return "reich";
    default: return "beta";
    }
}

inline Variant parse_variant(std::string_view name) {
    if (name == "typeF") return Variant::TypeF;
    if (name == "typeIm") return Variant::TypeIm;
    if (name == "kannan") return Variant::Kannan;
    if (name == "reich") return Variant::Reich;
    if (name == "beta") return Variant::BetaCombo;
    throw malformed_input("unknown contraction variant '" + std::string(name) + "'");
}

/// Inequalities whose comparison term is not symmetric in (x, y).
inline bool is_oriented(Variant v) { return v == Variant::TypeIm || v == Variant::BetaCombo; }

inline constexpr double inequality_tolerance = 1e-9;

struct ContractionSpec {
    Variant variant = Variant::TypeF;
    double s = 1.0;
    AuxiliaryPair pair;
    std::optional<std::array<double, 4>> betas;
    std::optional<double> tau;  // replaces phi by the constant tau

    void validate() const {
        if (!(s >= 1.0))
            throw malformed_input("coefficient s must be >= 1");
        if (variant == Variant::BetaCombo) {
            if (!betas)
                throw malformed_input("beta variant needs four coefficients");
            double sum = 0.0;
            for (double b : *betas) {
                if (!(b >= 0.0))
                    throw malformed_input("beta coefficients must be nonnegative");
                sum += b;
            }
            if (sum > 1.0 + 1e-12)
                throw malformed_input("beta coefficients must sum to at most 1");
        } else if (betas) {
            throw malformed_input("beta coefficients only apply to the beta variant");
        }
        if (tau && !(*tau > 0.0))
            throw malformed_input("tau must be positive");
        if (!pair.F || (!pair.phi && !tau))
            throw malformed_input("contraction spec needs F and phi");
    }

    double phi(double t) const { return tau ? *tau : pair.phi(t); }
    double image_scale() const { return variant == Variant::TypeF ? s : s * s; }
};

enum class VerdictStatus { holds, violated, vacuous };

inline std::string_view to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::holds: return "holds";
    case VerdictStatus::violated: return "violated";
    default: return "vacuous";
    }
}

struct PairVerdict {
    double x = 0.0, y = 0.0;
    std::string x_label, y_label;
    VerdictStatus status = VerdictStatus::vacuous;
    double lhs = 0.0;     // F(scale * d(Tx,Ty))
    double rhs = 0.0;     // F(comparison) - phi(d(x,y))
    double margin = 0.0;  // rhs - lhs
    double comparison = 0.0;
};

struct ContractionReport {
    std::uint64_t pairs = 0;
    std::uint64_t holds = 0;
    std::uint64_t vacuous = 0;
    std::uint64_t violated = 0;
    std::vector<PairVerdict> violations;  // sorted by (x label, y label)
    std::vector<PairVerdict> verdicts;    // every evaluated pair, in enumeration order
    double worst_margin = std::numeric_limits<double>::infinity();

    bool pass() const noexcept { return violated == 0; }
};

/// A self-map on real-valued points.
using SelfMap = std::function<double(double)>;

namespace detail {

template <MetricDomain Space>
double image_in(const Space& space, const SelfMap& T, double x) {
    double tx = T(x);
    if (!std::isfinite(tx) || !space.contains(tx))
        throw closure_error("T(" + space.label_of(x) + ") = " + format_real(tx) + " is outside the space");
    return tx;
}

template <MetricDomain Space>
double checked_distance(const Space& space, double a, double b) {
    double d = space.distance(a, b);
    if (std::isnan(d) || d < 0.0)
        throw numeric_error("invalid distance " + format_real(d) + " for (" + space.label_of(a) + ", " +
                            space.label_of(b) + ")");
    return d;
}

} // namespace detail

/// max{d(x,y), d(x,Tx), d(y,Ty), d(y,Tx)}
template <MetricDomain Space>
double m_value(const Space& space, const SelfMap& T, double x, double y) {
    const double tx = detail::image_in(space, T, x);
    const double ty = detail::image_in(space, T, y);
    return std::max({detail::checked_distance(space, x, y), detail::checked_distance(space, x, tx),
                     detail::checked_distance(space, y, ty), detail::checked_distance(space, y, tx)});
}

/// Evaluates the variant's inequality for the ordered pair (x, y).
template <MetricDomain Space>
PairVerdict check_pair(const ContractionSpec& spec, const Space& space, const SelfMap& T, double x, double y) {
    const double tol = default_distance_tolerance;
    PairVerdict verdict;
    verdict.x = x;
    verdict.y = y;
    verdict.x_label = space.label_of(x);
    verdict.y_label = space.label_of(y);

    const double tx = detail::image_in(space, T, x);
    const double ty = detail::image_in(space, T, y);
    const double d_image = detail::checked_distance(space, tx, ty);
    if (d_image <= tol) {
        verdict.status = VerdictStatus::vacuous;
        return verdict;
    }

    const double dxy = detail::checked_distance(space, x, y);
    const double dx = detail::checked_distance(space, x, tx);
    const double dy = detail::checked_distance(space, y, ty);
    const double dyx = detail::checked_distance(space, y, tx);

    double comparison = 0.0;
    switch (spec.variant) {
    case Variant::TypeF: comparison = dxy; break;
    case Variant::TypeIm: comparison = std::max({dxy, dx, dy, dyx}); break;
    case Variant::Kannan: comparison = (dx + dy) / 2.0; break;
    case Variant::Reich: comparison = (dxy + dx + dy) / 3.0; break;
    case Variant::BetaCombo: {
        const auto& b = *spec.betas;
        comparison = b[0] * dxy + b[1] * dx + b[2] * dy + b[3] * dyx;
        break;
    }
    }
    verdict.comparison = comparison;

    if (!(comparison > 0.0)) {
        // F lives on the positive reals; both points fixed leaves it undefined.
        if (spec.variant == Variant::Kannan || spec.variant == Variant::Reich) {
            verdict.status = VerdictStatus::vacuous;
            return verdict;
        }
        throw domain_error("F evaluated at non-positive argument " + format_real(comparison) + " for pair (" +
                           verdict.x_label + ", " + verdict.y_label + ")");
    }
    if (!(dxy > 0.0))
        throw domain_error("phi evaluated at non-positive argument for pair (" + verdict.x_label + ", " +
                           verdict.y_label + ")");

    verdict.lhs = spec.pair.F(spec.image_scale() * d_image);
    verdict.rhs = spec.pair.F(comparison) - spec.phi(dxy);
    verdict.margin = verdict.rhs - verdict.lhs;
    if (std::isnan(verdict.margin))
        throw numeric_error("NaN inequality margin for pair (" + verdict.x_label + ", " + verdict.y_label + ")");
    verdict.status = verdict.margin >= -inequality_tolerance ? VerdictStatus::holds : VerdictStatus::violated;
    return verdict;
}

namespace detail {

/// Both orientations for oriented variants; the worse one represents the pair.
template <MetricDomain Space>
PairVerdict check_unordered(const ContractionSpec& spec, const Space& space, const SelfMap& T, double x, double y) {
    PairVerdict forward = check_pair(spec, space, T, x, y);
    if (!is_oriented(spec.variant) || forward.status == VerdictStatus::vacuous)
        return forward;
    PairVerdict backward = check_pair(spec, space, T, y, x);
    return backward.margin < forward.margin ? backward : forward;
}

inline void tally(ContractionReport& report, std::vector<PairVerdict> verdicts) {
    for (auto& v : verdicts) {
        ++report.pairs;
        switch (v.status) {
        case VerdictStatus::holds: ++report.holds; break;
        case VerdictStatus::vacuous: ++report.vacuous; break;
        case VerdictStatus::violated:
            ++report.violated;
            report.violations.push_back(v);
            break;
        }
        if (v.status != VerdictStatus::vacuous)
            report.worst_margin = std::min(report.worst_margin, v.margin);
    }
    std::stable_sort(report.violations.begin(), report.violations.end(), [](const PairVerdict& a, const PairVerdict& b) {
        return std::tie(a.x_label, a.y_label) < std::tie(b.x_label, b.y_label);
    });
    report.verdicts = std::move(verdicts);
}

} // namespace detail

/// Every unordered pair of distinct sample points.
template <MetricDomain Space>
ContractionReport verify_over_finite(const ContractionSpec& spec, const Space& space, const std::vector<double>& points,
                                     const SelfMap& T, unsigned threads = thread_budget()) {
    spec.validate();
    const std::size_t n = points.size();
    auto rows = parallel_map<std::vector<PairVerdict>>(
        n,
        [&](std::size_t i) {
            std::vector<PairVerdict> row;
            for (std::size_t j = i + 1; j < n; ++j)
                row.push_back(detail::check_unordered(spec, space, T, points[i], points[j]));
            return row;
        },
        threads);
    std::vector<PairVerdict> all;
    for (auto& row : rows)
        all.insert(all.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
    ContractionReport report;
    detail::tally(report, std::move(all));
    return report;
}

/// FiniteSpace overload: the sample is the whole point set.
inline ContractionReport verify_over_finite(const ContractionSpec& spec, const FiniteSpace& space, const SelfMap& T) {
    std::vector<double> pts;
    for (std::size_t i = 0; i < space.size(); ++i)
        pts.push_back(space.value(i));
    return verify_over_finite(spec, space, pts, T);
}

/// n seeded random pairs drawn by sampler(rng); deterministic for a given seed.
template <MetricDomain Space, class Sampler>
ContractionReport verify_over_sample(const ContractionSpec& spec, const Space& space, Sampler&& sampler,
                                     const SelfMap& T, std::uint64_t n, std::uint64_t seed) {
    spec.validate();
    if (n == 0)
        throw malformed_input("sample count must be at least 1");
    Rng rng(seed);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        double x = sampler(rng);
        double y = sampler(rng);
        pairs.emplace_back(x, y);
    }
    std::vector<PairVerdict> all;
    all.reserve(n);
    for (auto [x, y] : pairs)
        all.push_back(detail::check_unordered(spec, space, T, x, y));
    ContractionReport report;
    detail::tally(report, std::move(all));
    return report;
}

} // namespace contractum
